#pragma once

#include <span>
#include <string>
#include <vector>

#include "isbst/analysis/behavior_space.hpp"

namespace isbst::analysis {

/// One agglomeration step. `left` and `right` are the row indices that
/// represent the two merged clusters; `height` is the Ward distance.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
};

/// Ward linkage on Euclidean distances (nearest-neighbour chain with the
/// Lance-Williams update). Merges are returned in non-decreasing height order.
std::vector<Merge> ward_linkage(const Matrix& rows);

/// Cluster labels after applying the first n - n_clusters merges. Labels are
/// numbered in order of each cluster's first row.
std::vector<int> cut_tree(std::span<const Merge> merges, std::size_t n_rows, std::size_t n_clusters);

struct ClusterComposition {
  std::vector<int> assignments;                     ///< per pooled row
  std::vector<std::string> row_labels;              ///< source label per pooled row
  std::vector<std::string> sources;                 ///< distinct labels, first-seen order
  std::vector<std::vector<std::size_t>> counts;     ///< counts[cluster][source]
  std::vector<std::size_t> constant_columns;
};

/// Pools the samples, z-scores the six attributes, runs Ward clustering and
/// cuts the tree at `n_clusters`. Throws ValidationError when there are fewer
/// rows than clusters.
ClusterComposition hierarchical_cluster(std::span<const BehaviorSample> samples, std::size_t n_clusters = 6);

std::string composition_csv(const ClusterComposition& c);

}  // namespace isbst::analysis
