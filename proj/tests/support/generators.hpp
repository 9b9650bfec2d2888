#pragma once

// Seeded generators shared by the unit and acceptance suites.

#include <cmath>
#include <string>
#include <vector>

#include "isbst/core/model.hpp"
#include "isbst/core/rng.hpp"

namespace isbst::testing {

inline TestInput random_input(Rng& rng) {
  TestInput input;
  input.k = kMinClusters + static_cast<int>(rng.index(kMaxClusters - kMinClusters + 1));
  for (std::size_t i = 0; i < kNumPoints; ++i) {
    const double x = rng.uniform(kCoordinateMin, kCoordinateMax);
    const double y = rng.uniform(kCoordinateMin, kCoordinateMax);
    input.points.push_back(Point{x, y});
  }
  return input;
}

/// Blobs around a few random centres, sometimes with duplicated points, to
/// exercise ties and degenerate geometry.
inline TestInput clustered_input(Rng& rng) {
  TestInput input = random_input(rng);
  const std::size_t centres = 1 + rng.index(5);
  std::vector<Point> c;
  for (std::size_t i = 0; i < centres; ++i) c.push_back(Point{rng.uniform(10, 90), rng.uniform(10, 90)});
  const double spread = rng.uniform01() < 0.2 ? 0.0 : rng.uniform(0.1, 8.0);
  for (auto& p : input.points) {
    const Point& centre = c[rng.index(c.size())];
    p.x = std::fmin(100.0, std::fmax(0.0, centre.x + rng.uniform(-spread, spread)));
    p.y = std::fmin(100.0, std::fmax(0.0, centre.y + rng.uniform(-spread, spread)));
  }
  return input;
}

/// The 4-point two-cluster case, each point repeated 15 times.
inline TestInput padded_two_clusters() {
  const Point base[4] = {{0, 0}, {0, 1}, {10, 0}, {10, 1}};
  TestInput input;
  input.k = 2;
  for (int rep = 0; rep < 15; ++rep) {
    for (const Point& p : base) input.points.push_back(p);
  }
  return input;
}

/// A structurally valid candidate with arbitrary (not SUT-consistent) values.
inline Candidate random_candidate(Rng& rng) {
  Candidate c;
  c.id = "c" + std::to_string(rng.next_u64() % 1000000);
  c.generation = static_cast<std::int64_t>(rng.index(10000));
  c.input = random_input(rng);
  c.behavior.num_clusters = c.input.k;
  c.behavior.num_iterations = 1.0 + static_cast<double>(rng.index(100));
  c.behavior.mean_silhouette = rng.uniform(-1.0, 1.0);
  c.behavior.silhouette_range = rng.uniform(0.0, 2.0);
  c.behavior.mean_weight = 60.0 / c.input.k;
  c.behavior.weights_range = static_cast<double>(rng.index(59));
  for (std::size_t i = 0; i < kNumPoints; ++i) c.raw_silhouettes.push_back(rng.uniform(-1.0, 1.0));
  return c;
}

}  // namespace isbst::testing
