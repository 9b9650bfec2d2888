#include "isbst/sut/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "isbst/core/errors.hpp"
#include "isbst/core/rng.hpp"

namespace isbst::sut {
namespace {

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

// Samples an index with probability proportional to weights[i].
std::size_t sample_weighted(std::span<const double> weights, double total, Rng& rng) {
  const double target = rng.uniform01() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (cumulative > target) return i;
  }
  return last_positive;
}

std::vector<Point> seed_centroids(std::span<const Point> points, int k, Rng& rng) {
  const std::size_t n = points.size();
  const int trials = 2 + static_cast<int>(std::log(static_cast<double>(k)));
  std::vector<Point> centroids;
  centroids.reserve(static_cast<std::size_t>(k));
  centroids.push_back(points[rng.index(n)]);

  std::vector<double> potential(n);
  for (std::size_t i = 0; i < n; ++i) potential[i] = squared_distance(points[i], centroids[0]);

  std::vector<double> best_potential(n);
  std::vector<double> trial_potential(n);
  while (centroids.size() < static_cast<std::size_t>(k)) {
    const double total = std::accumulate(potential.begin(), potential.end(), 0.0);
    if (!(total > 0.0)) {
      centroids.push_back(points[rng.index(n)]);
      continue;
    }
    std::size_t best = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
      const std::size_t c = sample_weighted(potential, total, rng);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trial_potential[i] = std::min(potential[i], squared_distance(points[i], points[c]));
        sum += trial_potential[i];
      }
      if (sum < best_sum) {
        best_sum = sum;
        best = c;
        best_potential.swap(trial_potential);
      }
    }
    centroids.push_back(points[best]);
    potential.swap(best_potential);
    best_potential.resize(n);
  }
  return centroids;
}

void assign_nearest(std::span<const Point> points, std::span<const Point> centroids, std::vector<int>& out) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    int best = 0;
    double best_d = squared_distance(points[i], centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
      const double d = squared_distance(points[i], centroids[c]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    out[i] = best;
  }
}

void repair_empty_clusters(std::span<const Point> points, std::vector<Point>& centroids,
                           std::vector<int>& assignments) {
  const std::size_t k = centroids.size();
  std::vector<std::size_t> counts(k, 0);
  for (int a : assignments) ++counts[static_cast<std::size_t>(a)];
  for (std::size_t empty = 0; empty < k; ++empty) {
    if (counts[empty] != 0) continue;
    std::size_t farthest = points.size();
    double farthest_d = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto owner = static_cast<std::size_t>(assignments[i]);
      if (counts[owner] < 2) continue;
      const double d = squared_distance(points[i], centroids[owner]);
      if (d > farthest_d) {
        farthest_d = d;
        farthest = i;
      }
    }
    --counts[static_cast<std::size_t>(assignments[farthest])];
    assignments[farthest] = static_cast<int>(empty);
    counts[empty] = 1;
    centroids[empty] = points[farthest];
  }
}

void update_centroids(std::span<const Point> points, std::span<const int> assignments,
                      std::vector<Point>& centroids) {
  std::vector<double> sx(centroids.size(), 0.0), sy(centroids.size(), 0.0);
  std::vector<std::size_t> counts(centroids.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto c = static_cast<std::size_t>(assignments[i]);
    sx[c] += points[i].x;
    sy[c] += points[i].y;
    ++counts[c];
  }
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    if (counts[c] == 0) continue;
    const double n = static_cast<double>(counts[c]);
    centroids[c] = Point{sx[c] / n, sy[c] / n};
  }
}

ClusterResult lloyd(std::span<const Point> points, int k, std::uint64_t seed) {
  Rng rng(seed);
  ClusterResult result;
  result.centroids = seed_centroids(points, k, rng);
  result.assignments.assign(points.size(), 0);
  assign_nearest(points, result.centroids, result.assignments);
  repair_empty_clusters(points, result.centroids, result.assignments);

  std::vector<int> next(points.size(), 0);
  while (result.iterations < kIterationCap) {
    update_centroids(points, result.assignments, result.centroids);
    ++result.iterations;
    assign_nearest(points, result.centroids, next);
    repair_empty_clusters(points, result.centroids, next);
    if (next == result.assignments) {
      result.converged = true;
      break;
    }
    result.assignments.swap(next);
  }
  if (!result.converged) {
    // Keep centroids consistent with the returned assignments.
    update_centroids(points, result.assignments, result.centroids);
  }
  return result;
}

// Every floating-point sum over points runs in this order, so results do not
// depend on how the input happens to be listed.
std::vector<std::size_t> lexicographic_order(std::span<const Point> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].x < points[b].x || (points[a].x == points[b].x && points[a].y < points[b].y);
  });
  return order;
}

}  // namespace

ClusterResult run_kmeans(std::span<const Point> points, int k, std::uint64_t seed) {
  if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
    throw ValidationError("k: must be between 1 and the number of points");
  }
  const auto order = lexicographic_order(points);
  std::vector<Point> sorted(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = points[order[i]];

  ClusterResult sorted_result = lloyd(sorted, k, seed);
  ClusterResult result = sorted_result;
  for (std::size_t i = 0; i < order.size(); ++i) result.assignments[order[i]] = sorted_result.assignments[i];
  return result;
}

ClusterResult run_kmeans(const TestInput& input, std::uint64_t seed) {
  validate(input);
  return run_kmeans(input.points, input.k, seed);
}

std::vector<double> silhouette(std::span<const Point> points, std::span<const int> assignments) {
  if (points.size() != assignments.size()) {
    throw ValidationError("silhouette: points and assignments differ in length");
  }
  int max_label = -1;
  for (int a : assignments) {
    if (a < 0) throw ValidationError("silhouette: negative cluster index");
    max_label = std::max(max_label, a);
  }
  const auto k = static_cast<std::size_t>(max_label + 1);
  std::vector<std::size_t> sizes(k, 0);
  for (int a : assignments) ++sizes[static_cast<std::size_t>(a)];
  const auto populated = std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; });
  if (populated < 2) throw ValidationError("silhouette: undefined for fewer than two clusters");

  const auto order = lexicographic_order(points);
  std::vector<double> out(points.size(), 0.0);
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto own = static_cast<std::size_t>(assignments[i]);
    if (sizes[own] == 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j : order) {
      if (j != i) sums[static_cast<std::size_t>(assignments[j])] += distance(points[i], points[j]);
    }
    const double a = sums[own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c == own || sizes[c] == 0) continue;
      b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
    }
    const double denom = std::max(a, b);
    out[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return out;
}

Behavior behavior_attributes(const TestInput& input, const ClusterResult& result,
                             std::span<const double> silhouettes) {
  Behavior b;
  b.num_clusters = static_cast<double>(input.k);
  b.num_iterations = static_cast<double>(result.iterations);

  if (!silhouettes.empty()) {
    double sum = 0.0;
    if (silhouettes.size() == input.points.size()) {
      for (std::size_t i : lexicographic_order(input.points)) sum += silhouettes[i];
    } else {
      sum = std::accumulate(silhouettes.begin(), silhouettes.end(), 0.0);
    }
    b.mean_silhouette = sum / static_cast<double>(silhouettes.size());
    const auto [lo, hi] = std::minmax_element(silhouettes.begin(), silhouettes.end());
    b.silhouette_range = *hi - *lo;
  }

  // Every point weighs 1, so a cluster's weight is its size.
  std::vector<double> weights(static_cast<std::size_t>(input.k), 0.0);
  for (int a : result.assignments) weights[static_cast<std::size_t>(a)] += 1.0;
  b.mean_weight = static_cast<double>(result.assignments.size()) / static_cast<double>(input.k);
  const auto [wlo, whi] = std::minmax_element(weights.begin(), weights.end());
  b.weights_range = *whi - *wlo;
  return b;
}

SutRun run_sut(const TestInput& input, std::uint64_t seed) {
  SutRun run;
  run.clustering = run_kmeans(input, seed);
  run.silhouettes = silhouette(input.points, run.clustering.assignments);
  run.behavior = behavior_attributes(input, run.clustering, run.silhouettes);
  return run;
}

Candidate evaluate_test_input(const TestInput& input, std::uint64_t seed) {
  SutRun run = run_sut(input, seed);
  Candidate c;
  c.input = input;
  c.behavior = run.behavior;
  c.raw_silhouettes = std::move(run.silhouettes);
  return c;
}

}  // namespace isbst::sut
