#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "isbst/analysis/hierarchical.hpp"
#include "isbst/analysis/pca.hpp"
#include "isbst/core/errors.hpp"
#include "isbst/core/rng.hpp"

using namespace isbst;
using namespace isbst::analysis;
using Catch::Approx;

namespace {

Matrix blobs(Rng& rng, const std::vector<std::array<double, 2>>& centres, std::size_t per) {
  Matrix m;
  for (const auto& c : centres) {
    for (std::size_t i = 0; i < per; ++i) m.push_back({c[0] + rng.uniform(-1, 1), c[1] + rng.uniform(-1, 1)});
  }
  return m;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

BehaviorSample sample_of(std::string label, const std::vector<PerObjective<double>>& rows) {
  BehaviorSample s{std::move(label), {}};
  for (const auto& r : rows) s.rows.push_back(Behavior::from_values(r));
  return s;
}

}  // namespace

TEST_CASE("Ward separates well-spaced blobs", "[analysis][ward]") {
  Rng rng(1);
  const std::vector<std::array<double, 2>> centres{{0, 0}, {50, 0}, {0, 50}};
  const Matrix rows = blobs(rng, centres, 10);
  const auto merges = ward_linkage(rows);
  REQUIRE(merges.size() == rows.size() - 1);
  for (std::size_t i = 1; i < merges.size(); ++i) REQUIRE(merges[i].height >= merges[i - 1].height);
  const auto labels = cut_tree(merges, rows.size(), 3);
  std::vector<int> nearest;
  for (const auto& r : rows) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < centres.size(); ++c) {
      if (std::hypot(r[0] - centres[c][0], r[1] - centres[c][1]) <
          std::hypot(r[0] - centres[best][0], r[1] - centres[best][1])) {
        best = c;
      }
    }
    nearest.push_back(static_cast<int>(best));
  }
  CHECK(same_partition(labels, nearest));
  CHECK(labels.front() == 0);
}

TEST_CASE("Ward merge heights for a hand-checked case", "[analysis][ward]") {
  // Points 0, 1 on a line and 10 far away: merging {0},{1} costs
  // sqrt(2 * 1 * 1 / 2) * 1 = 1; merging {0,1} with {10} costs
  // sqrt(2 * 2 * 1 / 3) * 9.5.
  const Matrix rows{{0.0}, {1.0}, {10.0}};
  const auto merges = ward_linkage(rows);
  REQUIRE(merges.size() == 2);
  CHECK(merges[0].height == Approx(1.0));
  CHECK(merges[1].height == Approx(std::sqrt(4.0 / 3.0) * 9.5));
}

TEST_CASE("cut_tree edge cases", "[analysis][ward]") {
  Rng rng(2);
  const Matrix rows = blobs(rng, {{0, 0}, {9, 9}}, 5);
  const auto merges = ward_linkage(rows);
  const auto singletons = cut_tree(merges, rows.size(), rows.size());
  CHECK(std::set<int>(singletons.begin(), singletons.end()).size() == rows.size());
  const auto one = cut_tree(merges, rows.size(), 1);
  CHECK(std::all_of(one.begin(), one.end(), [](int l) { return l == 0; }));
}

TEST_CASE("duplicate rows always share a cluster", "[analysis][ward][property]") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix rows;
    for (int i = 0; i < 20; ++i) rows.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
    rows.push_back(rows[4]);
    rows.push_back(rows[11]);
    const auto labels = cut_tree(ward_linkage(rows), rows.size(), 6);
    REQUIRE(labels[20] == labels[4]);
    REQUIRE(labels[21] == labels[11]);
  }
}

TEST_CASE("Ward clustering does not depend on row order", "[analysis][ward][property]") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix rows;
    for (int i = 0; i < 25; ++i) rows.push_back({rng.uniform01(), rng.uniform01()});
    std::vector<std::size_t> perm(rows.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    Matrix shuffled;
    for (auto p : perm) shuffled.push_back(rows[p]);
    const auto a = cut_tree(ward_linkage(rows), rows.size(), 5);
    const auto b = cut_tree(ward_linkage(shuffled), rows.size(), 5);
    std::vector<int> b_in_original(rows.size());
    for (std::size_t i = 0; i < perm.size(); ++i) b_in_original[perm[i]] = b[i];
    REQUIRE(same_partition(a, b_in_original));
  }
}

TEST_CASE("composition table counts every pooled row", "[analysis][ward]") {
  Rng rng(5);
  std::vector<PerObjective<double>> a_rows, b_rows;
  for (int i = 0; i < 30; ++i) {
    a_rows.push_back({2, rng.uniform(1, 5), rng.uniform(0.5, 1), rng.uniform01(), 30, rng.uniform(0, 20)});
    b_rows.push_back({9, rng.uniform(5, 20), rng.uniform(0, 0.3), rng.uniform01(), 60.0 / 9, rng.uniform(0, 5)});
  }
  const std::vector<BehaviorSample> samples{sample_of("alpha", a_rows), sample_of("beta", b_rows)};
  const auto c = hierarchical_cluster(samples, 6);
  CHECK(c.sources == std::vector<std::string>{"alpha", "beta"});
  CHECK(c.counts.size() == 6);
  std::size_t total = 0;
  for (const auto& row : c.counts) {
    // k differs completely, so no cluster mixes the two sources.
    CHECK((row[0] == 0 || row[1] == 0));
    for (auto v : row) total += v;
  }
  CHECK(total == 60);
  const std::string csv = composition_csv(c);
  CHECK(csv.rfind("cluster,alpha,beta", 0) == 0);
  CHECK_THROWS_AS(hierarchical_cluster(samples, 61), ValidationError);
}

TEST_CASE("standardize reports constant columns", "[analysis]") {
  const Matrix rows{{1, 5, 2}, {2, 5, 4}, {3, 5, 6}};
  const auto z = standardize(rows);
  CHECK(z.constant_columns == std::vector<std::size_t>{1});
  CHECK(z.rows[0][0] == Approx(-1.0));
  CHECK(z.rows[2][2] == Approx(1.0));
  CHECK(z.rows[1][1] == 0.0);
}

TEST_CASE("PCA of points on a line has one component", "[analysis][pca]") {
  Rng rng(6);
  Matrix rows;
  for (int i = 0; i < 40; ++i) {
    const double t = rng.uniform(-5, 5);
    rows.push_back({t, 2 * t + 1, -t});
  }
  const auto r = pca(rows);
  CHECK(r.explained_variance_ratio[0] == Approx(1.0).margin(1e-9));
  CHECK(r.explained_variance[0] == Approx(3.0).margin(1e-9));
  const double inv = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(r.components[0][0]) == Approx(inv).margin(1e-9));
  CHECK(std::abs(r.components[0][2]) == Approx(inv).margin(1e-9));
  for (const auto& p : r.projection) CHECK(std::abs(p[1]) < 1e-9);
}

TEST_CASE("PCA structural invariants", "[analysis][pca][property]") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix rows;
    for (int i = 0; i < 50; ++i) {
      const double a = rng.uniform01(), b = rng.uniform01();
      rows.push_back({a, a + 0.3 * b, rng.uniform01(), b, 4.0, a - b});
    }
    const auto r = pca(rows);
    CHECK(r.constant_columns == std::vector<std::size_t>{4});
    double total = 0.0;
    for (double v : r.explained_variance_ratio) total += v;
    REQUIRE(total == Approx(1.0).margin(1e-9));
    for (std::size_t i = 1; i < r.explained_variance.size(); ++i) {
      REQUIRE(r.explained_variance[i] <= r.explained_variance[i - 1] + 1e-12);
    }
    for (std::size_t i = 0; i < r.components.size(); ++i) {
      for (std::size_t j = 0; j < r.components.size(); ++j) {
        double dot = 0.0;
        for (std::size_t d = 0; d < r.components[i].size(); ++d) dot += r.components[i][d] * r.components[j][d];
        REQUIRE(dot == Approx(i == j ? 1.0 : 0.0).margin(1e-9));
      }
      const auto& c = r.components[i];
      const auto big = std::max_element(c.begin(), c.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
      REQUIRE(*big > 0.0);
    }
    REQUIRE(r.projection.size() == rows.size());
  }
}

TEST_CASE("PCA of isotropic data spreads variance evenly", "[analysis][pca]") {
  Matrix rows;
  for (int i = 0; i < 8; ++i) {
    const double a = std::cos(i * M_PI / 4), b = std::sin(i * M_PI / 4);
    rows.push_back({a, b});
  }
  const auto r = pca(rows);
  CHECK(r.explained_variance_ratio[0] == Approx(0.5).margin(1e-9));
}

TEST_CASE("PCA rejects degenerate input", "[analysis][pca]") {
  CHECK_THROWS_AS(pca(Matrix{{1, 2}}), ValidationError);
  CHECK_THROWS_AS(pca(Matrix{{1, 2}, {1, 2}, {1, 2}}), ValidationError);
}

TEST_CASE("projection CSV lists one row per behavior", "[analysis][pca]") {
  const std::vector<BehaviorSample> samples{
      sample_of("a", {{2, 3, 0.5, 0.2, 30, 4}, {3, 4, 0.4, 0.3, 20, 6}}),
      sample_of("b", {{5, 9, 0.1, 0.6, 12, 9}, {6, 2, 0.3, 0.1, 10, 2}})};
  const auto r = pca(samples);
  CHECK(r.row_labels == std::vector<std::string>{"a", "a", "b", "b"});
  const std::string csv = projection_csv(r);
  CHECK(csv.find("label,pc1,pc2\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 5);
}
