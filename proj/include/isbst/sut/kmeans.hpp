#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isbst/core/model.hpp"

namespace isbst::sut {

inline constexpr int kIterationCap = 100;

struct ClusterResult {
  std::vector<int> assignments;
  std::vector<Point> centroids;
  int iterations = 0;
  bool converged = false;
};

/// Lloyd's k-means with greedy k-means++ seeding.
///
/// The points are processed in lexicographic (x, y) order, so the result
/// depends only on the multiset of points, k and the seed. Ties in the
/// nearest-centroid search go to the lowest cluster index. A cluster left
/// empty by an assignment round receives the point farthest from its own
/// centroid (taken from a cluster with more than one member). Iteration stops
/// when a round leaves every assignment unchanged or after kIterationCap rounds.
ClusterResult run_kmeans(std::span<const Point> points, int k, std::uint64_t seed);
ClusterResult run_kmeans(const TestInput& input, std::uint64_t seed);

/// Per-point silhouette (b - a) / max(a, b). Points alone in their cluster get 0.
/// Throws ValidationError when fewer than two clusters are populated.
std::vector<double> silhouette(std::span<const Point> points, std::span<const int> assignments);

Behavior behavior_attributes(const TestInput& input, const ClusterResult& result,
                             std::span<const double> silhouettes);

struct SutRun {
  ClusterResult clustering;
  std::vector<double> silhouettes;
  Behavior behavior;
};

/// Full evaluation, keeping the clustering for detail views.
SutRun run_sut(const TestInput& input, std::uint64_t seed);

/// run_kmeans -> silhouette -> behavior_attributes. The returned candidate has
/// an empty id and generation 0; callers assign identity.
Candidate evaluate_test_input(const TestInput& input, std::uint64_t seed);

}  // namespace isbst::sut
