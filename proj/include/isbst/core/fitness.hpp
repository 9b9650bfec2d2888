#pragma once

#include <limits>
#include <map>
#include <span>
#include <string>

#include "isbst/core/model.hpp"

namespace isbst {

struct ObjectiveRange {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  bool empty() const { return min > max; }
  void include(double value);

  friend bool operator==(const ObjectiveRange&, const ObjectiveRange&) = default;
};

/// Running global minimum and maximum of every raw objective score seen in a
/// search. Ranges only ever widen.
class ObjectiveExtremes {
 public:
  void include(const Behavior& behavior);
  const ObjectiveRange& operator[](Objective o) const { return ranges_[index_of(o)]; }
  ObjectiveRange& operator[](Objective o) { return ranges_[index_of(o)]; }
  bool empty() const;

  friend bool operator==(const ObjectiveExtremes&, const ObjectiveExtremes&) = default;

 private:
  PerObjective<ObjectiveRange> ranges_{};
};

/// Normalizes a raw score against its extremes so that 1 is always best:
/// (v - min) / (max - min) when maximizing, (max - v) / (max - min) when
/// minimizing, 0.5 when the range is degenerate.
double fitness_ratio(double value, const ObjectiveRange& range, Direction direction);

PerObjective<double> fitness_ratios(const Behavior& behavior, const ObjectiveExtremes& extremes);

/// Weighted sum of normalized ratios. Sizes must agree.
double daff(std::span<const double> ratios, std::span<const double> weights);

/// Named form; both maps must cover the same objective names.
double daff(const std::map<std::string, double>& ratios, const std::map<std::string, double>& weights);

/// DAFF of a raw behavior under the current weights and extremes.
double candidate_fitness(const Behavior& behavior, const WeightVector& weights,
                         const ObjectiveExtremes& extremes);

}  // namespace isbst
