#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isbst {

inline constexpr std::size_t kNumPoints = 60;
inline constexpr double kCoordinateMin = 0.0;
inline constexpr double kCoordinateMax = 100.0;
inline constexpr int kMinClusters = 2;
inline constexpr int kMaxClusters = 10;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// One SUT input: the point cloud handed to k-means and the requested cluster count.
struct TestInput {
  std::vector<Point> points;
  int k = kMinClusters;

  friend bool operator==(const TestInput&, const TestInput&) = default;
};

/// Throws ValidationError unless the input has exactly 60 points inside
/// [0, 100]^2 and 2 <= k <= 10.
void validate(const TestInput& input);

enum class Objective : std::size_t {
  NumClusters = 0,
  NumIterations,
  MeanSilhouette,
  SilhouetteRange,
  MeanWeight,
  WeightsRange,
};

inline constexpr std::size_t kNumObjectives = 6;

inline constexpr std::array<Objective, kNumObjectives> kObjectives = {
    Objective::NumClusters,     Objective::NumIterations, Objective::MeanSilhouette,
    Objective::SilhouetteRange, Objective::MeanWeight,    Objective::WeightsRange,
};

template <typename T>
using PerObjective = std::array<T, kNumObjectives>;

constexpr std::size_t index_of(Objective o) { return static_cast<std::size_t>(o); }

std::string_view objective_name(Objective o);
std::optional<Objective> objective_from_name(std::string_view name);

enum class Direction { Minimize, Maximize };

struct ObjectiveSpec {
  Objective objective;
  Direction direction;
};

/// The fixed search objectives and their optimization directions.
inline constexpr std::array<ObjectiveSpec, kNumObjectives> kDefaultObjectives = {{
    {Objective::NumClusters, Direction::Minimize},
    {Objective::NumIterations, Direction::Minimize},
    {Objective::MeanSilhouette, Direction::Maximize},
    {Objective::SilhouetteRange, Direction::Maximize},
    {Objective::MeanWeight, Direction::Minimize},
    {Objective::WeightsRange, Direction::Maximize},
}};

constexpr Direction direction_of(Objective o) { return kDefaultObjectives[index_of(o)].direction; }

/// Raw behavior attribute scores of one evaluated test input.
struct Behavior {
  double num_clusters = 0.0;
  double num_iterations = 0.0;
  double mean_silhouette = 0.0;
  double silhouette_range = 0.0;
  double mean_weight = 0.0;
  double weights_range = 0.0;

  double value(Objective o) const;
  PerObjective<double> values() const;
  static Behavior from_values(const PerObjective<double>& v);

  friend bool operator==(const Behavior&, const Behavior&) = default;
};

/// Throws ValidationError when a Behavior invariant does not hold.
void validate(const Behavior& behavior);

/// User-set objective weights, each in [0, 1], at least one strictly positive.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(const PerObjective<double>& weights);

  /// All weights equal to `value` (the null strategy uses 1.0).
  static WeightVector uniform(double value = 1.0);

  double operator[](Objective o) const { return weights_[index_of(o)]; }
  const PerObjective<double>& values() const { return weights_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  PerObjective<double> weights_{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
};

/// Throws ValidationError unless every weight is in [0, 1] and one is > 0.
void validate_weights(const PerObjective<double>& weights);

/// A test case: an input, the SUT behavior it produced, and identity metadata.
struct Candidate {
  std::string id;
  std::int64_t generation = 0;
  TestInput input;
  Behavior behavior;
  std::vector<double> raw_silhouettes;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

}  // namespace isbst
