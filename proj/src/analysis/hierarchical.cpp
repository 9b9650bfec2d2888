#include "isbst/analysis/hierarchical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "isbst/core/errors.hpp"

namespace isbst::analysis {
namespace {

class CondensedMatrix {
 public:
  explicit CondensedMatrix(std::size_t n) : n_(n), data_(n * (n - 1) / 2, 0.0) {}

  double& at(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return data_[i * n_ - i * (i + 1) / 2 + (j - i - 1)];
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<Merge> ward_linkage(const Matrix& rows) {
  const std::size_t n = rows.size();
  std::vector<Merge> merges;
  if (n < 2) return merges;

  // Squared Euclidean distances; Lance-Williams for Ward is exact on these.
  CondensedMatrix dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        const double d = rows[i][c] - rows[j][c];
        s += d * d;
      }
      dist.at(i, j) = s;
    }
  }

  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> chain;
  chain.reserve(n);
  merges.reserve(n - 1);

  for (std::size_t remaining = n; remaining > 1; --remaining) {
    if (chain.empty()) {
      chain.push_back(static_cast<std::size_t>(std::find(active.begin(), active.end(), true) - active.begin()));
    }
    std::size_t a = 0;
    std::size_t b = 0;
    for (;;) {
      a = chain.back();
      const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : n;
      double best = prev < n ? dist.at(a, prev) : std::numeric_limits<double>::infinity();
      b = prev;
      for (std::size_t x = 0; x < n; ++x) {
        if (!active[x] || x == a) continue;
        const double d = dist.at(a, x);
        if (d < best) {
          best = d;
          b = x;
        }
      }
      if (b == prev) break;
      chain.push_back(b);
    }
    chain.pop_back();
    chain.pop_back();

    const std::size_t keep = std::min(a, b);
    const std::size_t drop = std::max(a, b);
    const double d_ab = dist.at(a, b);
    merges.push_back(Merge{keep, drop, std::sqrt(std::max(0.0, d_ab))});

    const double na = static_cast<double>(size[a]);
    const double nb = static_cast<double>(size[b]);
    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || x == a || x == b) continue;
      const double nx = static_cast<double>(size[x]);
      const double updated = ((na + nx) * dist.at(a, x) + (nb + nx) * dist.at(b, x) - nx * d_ab) / (na + nb + nx);
      dist.at(keep, x) = updated;
    }
    size[keep] += size[drop];
    active[drop] = false;
  }

  // Chain order is not height order; a stable sort keeps children ahead of
  // parents at equal height.
  std::stable_sort(merges.begin(), merges.end(), [](const Merge& x, const Merge& y) { return x.height < y.height; });
  return merges;
}

std::vector<int> cut_tree(std::span<const Merge> merges, std::size_t n_rows, std::size_t n_clusters) {
  if (n_clusters < 1 || n_clusters > n_rows) throw ValidationError("n_clusters: must be in [1, number of rows]");
  std::vector<std::size_t> parent(n_rows);
  std::iota(parent.begin(), parent.end(), 0);
  const std::size_t steps = n_rows - n_clusters;
  for (std::size_t s = 0; s < steps && s < merges.size(); ++s) {
    const std::size_t ra = find_root(parent, merges[s].left);
    const std::size_t rb = find_root(parent, merges[s].right);
    parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> labels(n_rows, -1);
  std::vector<int> root_label(n_rows, -1);
  int next = 0;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const std::size_t r = find_root(parent, i);
    if (root_label[r] < 0) root_label[r] = next++;
    labels[i] = root_label[r];
  }
  return labels;
}

ClusterComposition hierarchical_cluster(std::span<const BehaviorSample> samples, std::size_t n_clusters) {
  PooledBehaviors pooled = pool(samples);
  if (n_clusters < 1) throw ValidationError("n_clusters: must be >= 1");
  if (pooled.rows.size() < n_clusters) {
    throw ValidationError("hierarchical clustering: " + std::to_string(pooled.rows.size()) +
                          " rows is fewer than " + std::to_string(n_clusters) + " clusters");
  }
  Standardized z = standardize(pooled.rows);
  const auto merges = ward_linkage(z.rows);

  ClusterComposition out;
  out.assignments = cut_tree(merges, z.rows.size(), n_clusters);
  out.row_labels = std::move(pooled.labels);
  out.constant_columns = std::move(z.constant_columns);
  for (const auto& l : out.row_labels) {
    if (std::find(out.sources.begin(), out.sources.end(), l) == out.sources.end()) out.sources.push_back(l);
  }
  out.counts.assign(n_clusters, std::vector<std::size_t>(out.sources.size(), 0));
  for (std::size_t i = 0; i < out.assignments.size(); ++i) {
    const auto src = static_cast<std::size_t>(
        std::find(out.sources.begin(), out.sources.end(), out.row_labels[i]) - out.sources.begin());
    ++out.counts[static_cast<std::size_t>(out.assignments[i])][src];
  }
  return out;
}

std::string composition_csv(const ClusterComposition& c) {
  std::ostringstream out;
  out << "cluster";
  for (const auto& s : c.sources) out << ',' << s;
  out << ",total\n";
  for (std::size_t k = 0; k < c.counts.size(); ++k) {
    out << k + 1;
    std::size_t total = 0;
    for (std::size_t count : c.counts[k]) {
      out << ',' << count;
      total += count;
    }
    out << ',' << total << '\n';
  }
  return out.str();
}

}  // namespace isbst::analysis
