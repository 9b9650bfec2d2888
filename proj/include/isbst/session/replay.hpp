#pragma once

#include <span>
#include <vector>

#include "isbst/session/session_log.hpp"

namespace isbst::session {

struct ReplayResult {
  std::vector<PopulationSnapshot> snapshots;  ///< initial population first
  std::uint64_t evaluations = 0;
  std::size_t events = 0;

  const std::vector<Candidate>& final_population() const { return snapshots.back().candidates; }
  const std::vector<Candidate>& top50() const { return snapshots.back().top50; }
};

/// Fresh search from `config`, one epoch per entry of `schedule`. This is the
/// same sequence of operations a live session performs.
ReplayResult run_schedule(const search::SearchConfig& config, std::span<const WeightVector> schedule);

/// Re-runs a logged session with its recorded weights.
ReplayResult replay_logged(const SessionLog& log);

/// Re-runs a logged session with every interaction replaced by equal weights
/// of 1.0: same config, seed, number of events and evaluation budget.
ReplayResult replay_null_strategy(const SessionLog& log);

Json to_json(const ReplayResult& result);

}  // namespace isbst::session
