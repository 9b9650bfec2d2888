#include "isbst/core/fitness.hpp"

#include <algorithm>

#include "isbst/core/errors.hpp"

namespace isbst {

void ObjectiveRange::include(double value) {
  min = std::min(min, value);
  max = std::max(max, value);
}

void ObjectiveExtremes::include(const Behavior& behavior) {
  const auto v = behavior.values();
  for (std::size_t i = 0; i < kNumObjectives; ++i) ranges_[i].include(v[i]);
}

bool ObjectiveExtremes::empty() const {
  return std::any_of(ranges_.begin(), ranges_.end(), [](const ObjectiveRange& r) { return r.empty(); });
}

double fitness_ratio(double value, const ObjectiveRange& range, Direction direction) {
  const double span = range.max - range.min;
  if (!(span > 0.0)) return 0.5;
  return direction == Direction::Maximize ? (value - range.min) / span : (range.max - value) / span;
}

PerObjective<double> fitness_ratios(const Behavior& behavior, const ObjectiveExtremes& extremes) {
  PerObjective<double> ratios{};
  for (const auto& spec : kDefaultObjectives) {
    const auto i = index_of(spec.objective);
    ratios[i] = fitness_ratio(behavior.value(spec.objective), extremes[spec.objective], spec.direction);
  }
  return ratios;
}

double daff(std::span<const double> ratios, std::span<const double> weights) {
  if (ratios.size() != weights.size()) {
    throw ContractViolation("daff: ratio and weight counts differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) sum += weights[i] * ratios[i];
  return sum;
}

double daff(const std::map<std::string, double>& ratios, const std::map<std::string, double>& weights) {
  if (ratios.size() != weights.size()) {
    throw ContractViolation("daff: objective sets differ");
  }
  double sum = 0.0;
  for (const auto& [name, ratio] : ratios) {
    const auto it = weights.find(name);
    if (it == weights.end()) throw ContractViolation("daff: no weight for objective '" + name + "'");
    sum += it->second * ratio;
  }
  return sum;
}

double candidate_fitness(const Behavior& behavior, const WeightVector& weights,
                         const ObjectiveExtremes& extremes) {
  const auto ratios = fitness_ratios(behavior, extremes);
  return daff(ratios, weights.values());
}

}  // namespace isbst
