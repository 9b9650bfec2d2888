#include "isbst/core/model.hpp"

#include <cmath>
#include <string>

#include "isbst/core/errors.hpp"

namespace isbst {
namespace {

constexpr std::array<std::string_view, kNumObjectives> kNames = {
    "num_clusters", "num_iterations", "mean_silhouette",
    "silhouette_range", "mean_weight", "weights_range",
};

bool in_box(double v) { return std::isfinite(v) && v >= kCoordinateMin && v <= kCoordinateMax; }

}  // namespace

void validate(const TestInput& input) {
  if (input.points.size() != kNumPoints) {
    throw ValidationError("points: expected " + std::to_string(kNumPoints) + " points, got " +
                          std::to_string(input.points.size()));
  }
  for (std::size_t i = 0; i < input.points.size(); ++i) {
    const Point& p = input.points[i];
    if (!in_box(p.x) || !in_box(p.y)) {
      throw ValidationError("points: point " + std::to_string(i) + " outside [0, 100]^2");
    }
  }
  if (input.k < kMinClusters || input.k > kMaxClusters) {
    throw ValidationError("k: must be in [2, 10], got " + std::to_string(input.k));
  }
}

std::string_view objective_name(Objective o) { return kNames[index_of(o)]; }

std::optional<Objective> objective_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumObjectives; ++i) {
    if (kNames[i] == name) return kObjectives[i];
  }
  return std::nullopt;
}

double Behavior::value(Objective o) const {
  switch (o) {
    case Objective::NumClusters: return num_clusters;
    case Objective::NumIterations: return num_iterations;
    case Objective::MeanSilhouette: return mean_silhouette;
    case Objective::SilhouetteRange: return silhouette_range;
    case Objective::MeanWeight: return mean_weight;
    case Objective::WeightsRange: return weights_range;
  }
  return 0.0;
}

PerObjective<double> Behavior::values() const {
  return {num_clusters, num_iterations, mean_silhouette, silhouette_range, mean_weight, weights_range};
}

Behavior Behavior::from_values(const PerObjective<double>& v) {
  return Behavior{v[0], v[1], v[2], v[3], v[4], v[5]};
}

void validate(const Behavior& b) {
  for (double v : b.values()) {
    if (!std::isfinite(v)) throw ValidationError("behavior: non-finite attribute");
  }
  if (b.mean_silhouette < -1.0 || b.mean_silhouette > 1.0) {
    throw ValidationError("mean_silhouette: outside [-1, 1]");
  }
  if (b.silhouette_range < 0.0 || b.silhouette_range > 2.0) {
    throw ValidationError("silhouette_range: outside [0, 2]");
  }
  if (!(b.mean_weight > 0.0)) throw ValidationError("mean_weight: must be > 0");
  if (b.weights_range < 0.0) throw ValidationError("weights_range: must be >= 0");
  if (b.num_iterations < 1.0) throw ValidationError("num_iterations: must be >= 1");
}

void validate_weights(const PerObjective<double>& weights) {
  bool any_positive = false;
  for (std::size_t i = 0; i < kNumObjectives; ++i) {
    const double w = weights[i];
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      throw ValidationError(std::string(kNames[i]) + ": weight must be in [0, 1]");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw ValidationError("weights: at least one weight > 0");
}

WeightVector::WeightVector(const PerObjective<double>& weights) : weights_(weights) {
  validate_weights(weights_);
}

WeightVector WeightVector::uniform(double value) {
  PerObjective<double> w;
  w.fill(value);
  return WeightVector(w);
}

}  // namespace isbst
