#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "isbst/analysis/behavior_space.hpp"

namespace isbst::analysis {

struct PcaResult {
  /// Unit-length principal axes, strongest first. Each axis is signed so its
  /// largest-magnitude loading is positive.
  Matrix components;
  std::vector<double> explained_variance;
  std::vector<double> explained_variance_ratio;
  /// Scores on the first two components, one row per input row.
  std::vector<std::array<double, 2>> projection;
  std::vector<std::string> row_labels;
  std::vector<std::size_t> constant_columns;
};

/// PCA of z-scored rows. Zero-variance columns contribute nothing and are
/// listed in constant_columns. Throws ValidationError with fewer than two rows
/// or when every column is constant.
PcaResult pca(const Matrix& rows);
PcaResult pca(std::span<const BehaviorSample> samples);

/// label,pc1,pc2 per row, preceded by a comment block with the variance ratios.
std::string projection_csv(const PcaResult& result);

}  // namespace isbst::analysis
