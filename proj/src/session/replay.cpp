#include "isbst/session/replay.hpp"

namespace isbst::session {

ReplayResult run_schedule(const search::SearchConfig& config, std::span<const WeightVector> schedule) {
  search::SearchState state = search::init_population(config);
  ReplayResult result;
  result.snapshots.push_back(take_snapshot(state, 0, WeightVector::uniform(1.0)));
  for (std::size_t e = 0; e < schedule.size(); ++e) {
    search::run_epoch(state, schedule[e], config.generations_per_epoch);
    result.snapshots.push_back(take_snapshot(state, e + 1, schedule[e]));
  }
  result.evaluations = state.evaluations;
  result.events = schedule.size();
  return result;
}

ReplayResult replay_logged(const SessionLog& log) {
  check_consistency(log);
  std::vector<WeightVector> schedule;
  schedule.reserve(log.events.size());
  for (const auto& e : log.events) schedule.push_back(e.weights);
  return run_schedule(log.config, schedule);
}

ReplayResult replay_null_strategy(const SessionLog& log) {
  check_consistency(log);
  const std::vector<WeightVector> schedule(log.events.size(), WeightVector::uniform(1.0));
  ReplayResult result = run_schedule(log.config, schedule);
  if (result.evaluations != log.evaluations()) {
    throw ReplayError("null replay evaluation count differs from the logged session");
  }
  return result;
}

Json to_json(const ReplayResult& r) {
  Json population = Json::array();
  for (const auto& c : r.final_population()) population.push_back(to_json(c));
  Json top = Json::array();
  for (const auto& c : r.top50()) top.push_back(to_json(c));
  return Json{{"events", r.events},
              {"evaluations", r.evaluations},
              {"generation", r.snapshots.back().generation},
              {"final_population", std::move(population)},
              {"top50", std::move(top)}};
}

}  // namespace isbst::session
