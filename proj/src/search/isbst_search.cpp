#include "isbst/search/isbst_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isbst/core/errors.hpp"
#include "isbst/sut/kmeans.hpp"

namespace isbst::search {
namespace {

constexpr std::uint64_t kSearchStream = 1;

Candidate evaluate(SearchState& state, const Genome& genome) {
  Candidate c = sut::evaluate_test_input(decode_genome(genome), sut_seed(state.config.seed));
  c.id = "c" + std::to_string(state.next_serial++);
  c.generation = state.generation;
  ++state.evaluations;
  return c;
}

}  // namespace

std::vector<std::string> SearchConfig::problems() const {
  std::vector<std::string> out;
  if (population_size < 4) out.emplace_back("population_size: must be >= 4");
  if (generations_per_epoch < 1) out.emplace_back("generations_per_epoch: must be >= 1");
  if (!(scale_factor > 0.0 && scale_factor <= 2.0)) out.emplace_back("scale_factor: must be in (0, 2]");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) out.emplace_back("crossover_rate: must be in [0, 1]");
  return out;
}

void SearchConfig::validate() const {
  const auto errs = problems();
  if (errs.empty()) return;
  std::string msg = "invalid config: ";
  for (std::size_t i = 0; i < errs.size(); ++i) msg += (i ? "; " : "") + errs[i];
  throw ValidationError(msg);
}

SearchState::SearchState(const SearchConfig& cfg) : config(cfg), rng(derive_seed(cfg.seed, kSearchStream)) {}

std::vector<Candidate> SearchState::candidates() const {
  std::vector<Candidate> out;
  out.reserve(population.size());
  for (const Member& m : population) out.push_back(m.candidate);
  return out;
}

std::vector<Genome> SearchState::genomes() const {
  std::vector<Genome> out;
  out.reserve(population.size());
  for (const Member& m : population) out.push_back(m.genome);
  return out;
}

SearchState init_population(const SearchConfig& config) {
  config.validate();
  SearchState state(config);
  const Bounds& bounds = test_input_bounds();
  state.population.reserve(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    Genome g = random_genome(bounds, state.rng);
    Candidate c = evaluate(state, g);
    state.extremes.include(c.behavior);
    state.population.push_back(Member{std::move(g), std::move(c)});
  }
  state.previous_generation = state.candidates();
  return state;
}

const Candidate& select(const Candidate& target, const Candidate& trial, const WeightVector& weights,
                        const ObjectiveExtremes& extremes) {
  const double trial_fitness = candidate_fitness(trial.behavior, weights, extremes);
  const double target_fitness = candidate_fitness(target.behavior, weights, extremes);
  return trial_fitness >= target_fitness ? trial : target;
}

void step_generation(SearchState& state, const WeightVector& weights) {
  const std::vector<Genome> parents = state.genomes();
  std::vector<Genome> trials =
      propose_trials(parents, state.config.de_parameters(), test_input_bounds(), state.rng);

  ++state.generation;
  std::vector<Candidate> evaluated;
  evaluated.reserve(trials.size());
  for (const Genome& g : trials) evaluated.push_back(evaluate(state, g));

  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (!state.extremes_frozen) state.extremes.include(evaluated[i].behavior);
    Member& slot = state.population[i];
    if (&select(slot.candidate, evaluated[i], weights, state.extremes) == &evaluated[i]) {
      slot.genome = std::move(trials[i]);
      slot.candidate = std::move(evaluated[i]);
    }
  }
}

void run_epoch(SearchState& state, const WeightVector& weights, std::size_t generations) {
  if (generations < 1) throw ValidationError("generations: must be >= 1");
  state.previous_generation = state.candidates();
  state.previous_generation_index = state.generation;
  for (std::size_t g = 0; g < generations; ++g) step_generation(state, weights);
}

std::vector<Candidate> top_by_fitness(const SearchState& state, const WeightVector& weights, std::size_t count) {
  std::vector<double> fitness;
  fitness.reserve(state.population.size());
  for (const Member& m : state.population) {
    fitness.push_back(candidate_fitness(m.candidate.behavior, weights, state.extremes));
  }
  std::vector<std::size_t> order(state.population.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
  order.resize(std::min(count, order.size()));
  std::vector<Candidate> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(state.population[i].candidate);
  return out;
}

}  // namespace isbst::search
