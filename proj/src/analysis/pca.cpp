#include "isbst/analysis/pca.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "isbst/core/errors.hpp"

namespace isbst::analysis {

PcaResult pca(const Matrix& rows) {
  if (rows.size() < 2) throw ValidationError("pca: needs at least two rows");
  const std::size_t d = rows.front().size();
  Standardized z = standardize(rows);
  if (z.constant_columns.size() == d) throw ValidationError("pca: every column is constant");

  const auto n = static_cast<Eigen::Index>(z.rows.size());
  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < d; ++c) x(i, static_cast<Eigen::Index>(c)) = z.rows[static_cast<std::size_t>(i)][c];
  }
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("pca: eigen decomposition failed");

  // Eigen returns ascending eigenvalues.
  PcaResult out;
  out.constant_columns = std::move(z.constant_columns);
  double total = 0.0;
  for (Eigen::Index k = static_cast<Eigen::Index>(d) - 1; k >= 0; --k) {
    const double lambda = std::max(0.0, solver.eigenvalues()(k));
    Eigen::VectorXd v = solver.eigenvectors().col(k);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    out.components.emplace_back(v.data(), v.data() + v.size());
    out.explained_variance.push_back(lambda);
    total += lambda;
  }
  for (double lambda : out.explained_variance) out.explained_variance_ratio.push_back(lambda / total);

  const std::size_t shown = std::min<std::size_t>(2, d);
  out.projection.reserve(z.rows.size());
  for (const auto& r : z.rows) {
    std::array<double, 2> p{0.0, 0.0};
    for (std::size_t k = 0; k < shown; ++k) {
      for (std::size_t c = 0; c < d; ++c) p[k] += r[c] * out.components[k][c];
    }
    out.projection.push_back(p);
  }
  return out;
}

PcaResult pca(std::span<const BehaviorSample> samples) {
  PooledBehaviors pooled = pool(samples);
  PcaResult out = pca(pooled.rows);
  out.row_labels = std::move(pooled.labels);
  return out;
}

std::string projection_csv(const PcaResult& result) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "# explained_variance_ratio";
  for (double r : result.explained_variance_ratio) out << ' ' << r;
  out << '\n';
  if (!result.constant_columns.empty()) {
    out << "# constant_columns";
    for (std::size_t c : result.constant_columns) {
      if (c < kNumObjectives) out << ' ' << objective_name(kObjectives[c]);
    }
    out << '\n';
  }
  out << "label,pc1,pc2\n";
  for (std::size_t i = 0; i < result.projection.size(); ++i) {
    out << (i < result.row_labels.size() ? result.row_labels[i] : "") << ',' << result.projection[i][0] << ','
        << result.projection[i][1] << '\n';
  }
  return out.str();
}

}  // namespace isbst::analysis
