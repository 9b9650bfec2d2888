#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "isbst/core/codec.hpp"
#include "isbst/core/model.hpp"

namespace isbst::analysis {

/// Behaviors of one population of test cases, tagged with its source.
struct BehaviorSample {
  std::string label;
  std::vector<Behavior> rows;

  std::vector<double> column(Objective o) const;
};

/// Accepts a JSON array of candidates or of bare behaviors, or an object with a
/// "final_population" or "candidates" array (replay output, snapshots).
/// Throws ValidationError for an empty or unrecognised document.
BehaviorSample sample_from_json(const Json& document, std::string label);
BehaviorSample load_sample(const std::filesystem::path& path, std::string label = {});

using Matrix = std::vector<std::vector<double>>;

struct Standardized {
  Matrix rows;
  std::vector<std::size_t> constant_columns;  ///< zero-variance columns, left at 0
};

/// Column-wise z-scores with the sample standard deviation.
Standardized standardize(const Matrix& rows);

/// Rows of all samples stacked in order, with a parallel list of source labels.
struct PooledBehaviors {
  Matrix rows;
  std::vector<std::string> labels;
};

PooledBehaviors pool(std::span<const BehaviorSample> samples);

}  // namespace isbst::analysis
