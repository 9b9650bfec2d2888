#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "isbst/core/model.hpp"
#include "isbst/core/rng.hpp"

namespace isbst::search {

using Genome = std::vector<double>;

/// Per-gene box constraints.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds uniform(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const { return lower.size(); }
  void clamp(Genome& genome) const;
  bool contains(const Genome& genome) const;
};

/// Genome length for a test input: 60 (x, y) pairs followed by the k gene.
inline constexpr std::size_t kGenomeLength = 2 * kNumPoints + 1;

/// [0, 100] for every coordinate gene, [2, 10] for the k gene.
const Bounds& test_input_bounds();

/// Coordinates are copied (clamped); k = round(k gene) clamped to [2, 10].
TestInput decode_genome(const Genome& genome);
Genome encode_genome(const TestInput& input);

struct DeParameters {
  double scale_factor = 0.7;
  double crossover_rate = 0.5;
};

Genome random_genome(const Bounds& bounds, Rng& rng);

/// Three population indices, mutually distinct and distinct from `target`.
/// Requires population_size >= 4.
std::array<std::size_t, 3> pick_donors(std::size_t population_size, std::size_t target, Rng& rng);

/// base + F * (plus - minus), clamped to the box.
Genome mutate(const Genome& base, const Genome& plus, const Genome& minus, double scale_factor,
              const Bounds& bounds);

/// DE/rand/1 mutant for slot `target`, donors drawn from `population`.
Genome mutate(std::span<const Genome> population, std::size_t target, double scale_factor,
              const Bounds& bounds, Rng& rng);

/// Binomial crossover: gene j comes from the mutant when u_j < cr or j == j_rand.
Genome crossover_binomial(const Genome& target, const Genome& mutant, double crossover_rate, Rng& rng);

/// One trial vector per slot (DE/rand/1/bin), all built from the same parent
/// population so they can be evaluated independently.
std::vector<Genome> propose_trials(std::span<const Genome> population, const DeParameters& params,
                                   const Bounds& bounds, Rng& rng);

}  // namespace isbst::search
