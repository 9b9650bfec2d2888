#pragma once

#include <string>
#include <vector>

#include "isbst/analysis/behavior_space.hpp"
#include "isbst/analysis/rank_tests.hpp"

namespace isbst::analysis {

struct ObjectiveComparison {
  Objective objective = Objective::NumClusters;
  MannWhitneyResult test;
  VarghaDelaney effect;
  double median_a = 0.0;
  double median_b = 0.0;
};

struct ComparisonReport {
  std::string label_a;
  std::string label_b;
  std::string scope;  ///< what the samples hold, e.g. "population" or "exported"
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::vector<ObjectiveComparison> rows;

  const ObjectiveComparison& row(Objective o) const;
};

double median(std::vector<double> values);

/// Mann-Whitney U and Vargha-Delaney A (of a over b) for each objective.
ComparisonReport compare_populations(const BehaviorSample& a, const BehaviorSample& b,
                                     std::string scope = "population");

/// objective,n_a,n_b,median_a,median_b,u,p_value,exact,a_measure,magnitude
std::string to_csv(const ComparisonReport& report);
Json to_json(const ComparisonReport& report);

}  // namespace isbst::analysis
