#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isbst/core/codec.hpp"
#include "isbst/search/isbst_search.hpp"

namespace isbst::session {

/// Corrupt, incomplete or inconsistent session log.
class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InteractionEvent {
  std::uint64_t sequence = 0;
  std::string timestamp;
  WeightVector weights;
  std::int64_t generation = 0;  ///< generation index at which the weights took effect
};

/// Population at the end of an epoch (epoch 0 is the initial population).
struct PopulationSnapshot {
  std::uint64_t epoch = 0;
  std::int64_t generation = 0;
  std::uint64_t evaluations = 0;
  ObjectiveExtremes extremes;
  std::vector<Candidate> candidates;
  std::vector<Candidate> top50;
};

/// Bit-for-bit equality of everything the search produced (ids, inputs,
/// behaviors, silhouettes, extremes, counters).
bool identical(const PopulationSnapshot& a, const PopulationSnapshot& b);

struct ExportRecord {
  Candidate candidate;
  std::string session_id;
  std::uint64_t event_sequence = 0;
  std::string timestamp;
};

struct SessionLog {
  std::string session_id;
  search::SearchConfig config;
  std::vector<InteractionEvent> events;
  std::vector<PopulationSnapshot> snapshots;
  std::vector<ExportRecord> exports;

  std::uint64_t evaluations() const { return snapshots.empty() ? 0 : snapshots.back().evaluations; }
  const std::vector<Candidate>& final_top50() const;
};

std::string utc_timestamp();

Json to_json(const search::SearchConfig& config);
search::SearchConfig config_from_json(const Json& j, std::uint64_t default_seed);
Json to_json(const InteractionEvent& event);
Json to_json(const PopulationSnapshot& snapshot);
PopulationSnapshot snapshot_from_json(const Json& j);
Json to_json(const ExportRecord& record);
ExportRecord export_record_from_json(const Json& j);

/// Whole log as one JSON document.
Json to_json(const SessionLog& log);
/// Throws ReplayError when the document is malformed or inconsistent.
SessionLog session_log_from_json(const Json& j);

/// Structural checks shared by every log reader: one snapshot per epoch plus
/// the initial one, increasing sequences and the evaluation budget identity.
void check_consistency(const SessionLog& log);

/// Append-only on-disk log: `events.jsonl` (one JSON event per line) plus one
/// `snapshots/epoch-NNNN.json` document per snapshot.
class SessionLogWriter {
 public:
  explicit SessionLogWriter(std::filesystem::path directory);

  void session_created(const std::string& session_id, const search::SearchConfig& config);
  void interaction(const InteractionEvent& event);
  void snapshot(const PopulationSnapshot& snapshot);
  void exported(const ExportRecord& record);

  const std::filesystem::path& directory() const { return directory_; }

 private:
  void append(const Json& event);

  std::filesystem::path directory_;
  std::ofstream events_;
};

/// Reads either a log directory written by SessionLogWriter or a single JSON
/// document produced by to_json(SessionLog).
SessionLog read_session_log(const std::filesystem::path& path);

}  // namespace isbst::session

namespace isbst::session {

/// Snapshot of `state` at the end of `epoch`; top50 ranked under `ranking_weights`.
PopulationSnapshot take_snapshot(const search::SearchState& state, std::uint64_t epoch,
                                 const WeightVector& ranking_weights);

}  // namespace isbst::session
