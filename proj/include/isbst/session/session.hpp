#pragma once

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "isbst/session/session_log.hpp"

namespace isbst::session {

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A weight submission arrived while an epoch was still running.
class BusyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Read-only view of a session between epochs. Never mutated once published.
struct PopulationOverview {
  std::string session_id;
  std::uint64_t epoch = 0;
  std::int64_t generation = 0;
  std::int64_t previous_generation = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t events = 0;
  WeightVector weights;
  ObjectiveExtremes extremes;
  std::vector<Candidate> current;
  std::vector<Candidate> previous;
};

Json to_json(const PopulationOverview& overview, bool busy);

/// Manual-tool evaluation: exactly the SUT evaluation the search uses, with a
/// content-derived id so identical inputs give identical documents.
Candidate evaluate_manual(const TestInput& input, std::uint64_t session_seed);

/// One interactive search session. The search state is owned by a private
/// worker thread; requests reach it through a command queue and read results
/// from immutable overview snapshots.
class Session {
 public:
  Session(std::string id, const search::SearchConfig& config,
          std::optional<std::filesystem::path> log_directory = std::nullopt);
  ~Session();

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const std::string& id() const { return id_; }
  const search::SearchConfig& config() const { return config_; }

  std::shared_ptr<const PopulationOverview> overview() const;
  bool busy() const;

  /// Logs an interaction event and queues one epoch under `weights`.
  /// Returns the event's sequence number. Throws BusyError while an epoch runs.
  std::uint64_t submit_weights(const WeightVector& weights);
  void wait_idle() const;

  /// Looks in the current population, then in this session's manual evaluations.
  std::optional<Candidate> find_candidate(const std::string& candidate_id) const;
  ExportRecord export_candidate(const std::string& candidate_id);
  Candidate evaluate_manual(const TestInput& input);

  SessionLog log() const;

 private:
  struct EpochCommand {
    InteractionEvent event;
  };

  void worker_loop(std::stop_token stop);

  std::string id_;
  search::SearchConfig config_;
  search::SearchState state_;  // worker-owned after construction

  mutable std::mutex mutex_;
  mutable std::condition_variable_any cv_;
  std::deque<EpochCommand> queue_;
  bool busy_ = false;
  std::uint64_t next_sequence_ = 1;
  std::shared_ptr<const PopulationOverview> overview_;
  SessionLog log_;
  std::optional<SessionLogWriter> writer_;
  std::map<std::string, Candidate> manual_;

  std::jthread worker_;
};

class SessionManager {
 public:
  /// With a log root, every session writes its log under `<root>/<session id>/`.
  explicit SessionManager(std::optional<std::filesystem::path> log_root = std::nullopt);

  /// Throws ValidationError listing offending config fields.
  std::string create_session(const search::SearchConfig& config);
  std::shared_ptr<Session> get(const std::string& id) const;
  std::vector<std::string> ids() const;

 private:
  std::optional<std::filesystem::path> log_root_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace isbst::session
