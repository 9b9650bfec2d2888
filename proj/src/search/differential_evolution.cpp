#include "isbst/search/differential_evolution.hpp"

#include <algorithm>
#include <cmath>

#include "isbst/core/errors.hpp"

namespace isbst::search {

Bounds Bounds::uniform(std::size_t dimension, double lo, double hi) {
  return Bounds{std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
}

void Bounds::clamp(Genome& genome) const {
  for (std::size_t j = 0; j < genome.size(); ++j) genome[j] = std::clamp(genome[j], lower[j], upper[j]);
}

bool Bounds::contains(const Genome& genome) const {
  if (genome.size() != dimension()) return false;
  for (std::size_t j = 0; j < genome.size(); ++j) {
    if (!(genome[j] >= lower[j] && genome[j] <= upper[j])) return false;
  }
  return true;
}

const Bounds& test_input_bounds() {
  static const Bounds bounds = [] {
    Bounds b = Bounds::uniform(kGenomeLength, kCoordinateMin, kCoordinateMax);
    b.lower.back() = static_cast<double>(kMinClusters);
    b.upper.back() = static_cast<double>(kMaxClusters);
    return b;
  }();
  return bounds;
}

TestInput decode_genome(const Genome& genome) {
  if (genome.size() != kGenomeLength) throw ValidationError("genome: wrong length");
  TestInput input;
  input.points.reserve(kNumPoints);
  for (std::size_t i = 0; i < kNumPoints; ++i) {
    input.points.push_back(Point{std::clamp(genome[2 * i], kCoordinateMin, kCoordinateMax),
                                 std::clamp(genome[2 * i + 1], kCoordinateMin, kCoordinateMax)});
  }
  const double k = std::round(genome.back());
  input.k = static_cast<int>(std::clamp(k, static_cast<double>(kMinClusters), static_cast<double>(kMaxClusters)));
  return input;
}

Genome encode_genome(const TestInput& input) {
  validate(input);
  Genome g;
  g.reserve(kGenomeLength);
  for (const Point& p : input.points) {
    g.push_back(p.x);
    g.push_back(p.y);
  }
  g.push_back(static_cast<double>(input.k));
  return g;
}

Genome random_genome(const Bounds& bounds, Rng& rng) {
  Genome g(bounds.dimension());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
  return g;
}

std::array<std::size_t, 3> pick_donors(std::size_t population_size, std::size_t target, Rng& rng) {
  if (population_size < 4) throw ValidationError("population_size: DE/rand/1 needs at least 4 members");
  std::array<std::size_t, 3> r{};
  for (std::size_t slot = 0; slot < 3; ++slot) {
    std::size_t candidate = 0;
    do {
      candidate = rng.index(population_size);
    } while (candidate == target || std::find(r.begin(), r.begin() + slot, candidate) != r.begin() + slot);
    r[slot] = candidate;
  }
  return r;
}

Genome mutate(const Genome& base, const Genome& plus, const Genome& minus, double scale_factor,
              const Bounds& bounds) {
  Genome v(base.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = base[j] + scale_factor * (plus[j] - minus[j]);
  bounds.clamp(v);
  return v;
}

Genome mutate(std::span<const Genome> population, std::size_t target, double scale_factor,
              const Bounds& bounds, Rng& rng) {
  const auto [r1, r2, r3] = pick_donors(population.size(), target, rng);
  return mutate(population[r1], population[r2], population[r3], scale_factor, bounds);
}

Genome crossover_binomial(const Genome& target, const Genome& mutant, double crossover_rate, Rng& rng) {
  Genome trial = target;
  const std::size_t j_rand = rng.index(trial.size());
  for (std::size_t j = 0; j < trial.size(); ++j) {
    const double u = rng.uniform01();
    if (u < crossover_rate || j == j_rand) trial[j] = mutant[j];
  }
  return trial;
}

std::vector<Genome> propose_trials(std::span<const Genome> population, const DeParameters& params,
                                   const Bounds& bounds, Rng& rng) {
  std::vector<Genome> trials;
  trials.reserve(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    const Genome mutant = mutate(population, i, params.scale_factor, bounds, rng);
    trials.push_back(crossover_binomial(population[i], mutant, params.crossover_rate, rng));
  }
  return trials;
}

}  // namespace isbst::search
