#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isbst/core/fitness.hpp"
#include "isbst/core/model.hpp"
#include "isbst/core/rng.hpp"
#include "isbst/search/differential_evolution.hpp"

namespace isbst::search {

struct SearchConfig {
  std::size_t population_size = 100;
  std::size_t generations_per_epoch = 20;
  double scale_factor = 0.7;
  double crossover_rate = 0.5;
  std::uint64_t seed = 0;

  /// One message per offending field; empty when valid.
  std::vector<std::string> problems() const;
  /// Throws ValidationError listing every offending field.
  void validate() const;

  DeParameters de_parameters() const { return {scale_factor, crossover_rate}; }

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

struct Member {
  Genome genome;
  Candidate candidate;
};

/// Inner-cycle state, owned by one search worker.
struct SearchState {
  explicit SearchState(const SearchConfig& cfg);

  SearchConfig config;
  std::vector<Member> population;
  ObjectiveExtremes extremes;
  std::int64_t generation = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t next_serial = 0;
  Rng rng;
  /// Population as of the start of the last epoch.
  std::vector<Candidate> previous_generation;
  std::int64_t previous_generation_index = 0;
  /// When set, step_generation stops widening the extremes.
  bool extremes_frozen = false;

  std::vector<Candidate> candidates() const;
  std::vector<Genome> genomes() const;
};

/// Seed fed to the SUT for every evaluation in a session.
inline std::uint64_t sut_seed(std::uint64_t session_seed) { return session_seed; }

/// Uniform random population over the full box, evaluated; extremes seeded
/// from it; generation 0. Throws ValidationError for an invalid config.
SearchState init_population(const SearchConfig& config);

/// Returns the trial when its DAFF is at least the target's, otherwise the target.
const Candidate& select(const Candidate& target, const Candidate& trial, const WeightVector& weights,
                        const ObjectiveExtremes& extremes);

/// One DE/rand/1/bin generation: NP trials, NP SUT evaluations, extremes
/// widened and selections applied in slot order.
void step_generation(SearchState& state, const WeightVector& weights);

/// `generations` calls to step_generation under fixed weights, after saving
/// the pre-epoch population as the previous generation.
void run_epoch(SearchState& state, const WeightVector& weights, std::size_t generations);

/// The `count` fittest members under the given weights, best first; ties keep slot order.
std::vector<Candidate> top_by_fitness(const SearchState& state, const WeightVector& weights,
                                      std::size_t count = 50);

}  // namespace isbst::search
