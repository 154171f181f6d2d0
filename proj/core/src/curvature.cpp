#include "finsler/curvature.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace finsler {

IsotropyFit fitWeaklyIsotropic(const std::vector<std::vector<double>>& ys,
                               const std::vector<double>& rValues,
                               const std::vector<double>& fValues, int n) {
  const int m = static_cast<int>(ys.size());
  if (static_cast<int>(rValues.size()) != m || static_cast<int>(fValues.size()) != m)
    fail(ErrorKind::Argument, "isotropy fit: sample lists must have equal length");
  if (m < n + 2)
    fail(ErrorKind::Sampling, "isotropy fit needs at least n+2 samples, got " + std::to_string(m));

  // Design: r = n(n-1) (theta_i y^i / F + mu), unknowns theta_1..theta_n, mu.
  const double scale = static_cast<double>(n) * (n - 1);
  Eigen::MatrixXd design(m, n + 1);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    if (fValues[static_cast<size_t>(i)] == 0.0)
      fail(ErrorKind::Argument, "isotropy fit: F-value is zero at sample " + std::to_string(i));
    for (int j = 0; j < n; ++j)
      design(i, j) =
          scale * ys[static_cast<size_t>(i)][static_cast<size_t>(j)] / fValues[static_cast<size_t>(i)];
    design(i, n) = scale;
    rhs(i) = rValues[static_cast<size_t>(i)];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < n + 1)
    fail(ErrorKind::Sampling, "isotropy fit: sample directions are degenerate (design rank " +
                                  std::to_string(qr.rank()) + " < " + std::to_string(n + 1) + ")");
  Eigen::VectorXd sol = qr.solve(rhs);

  IsotropyFit out;
  out.theta.assign(static_cast<size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) out.theta[static_cast<size_t>(j)] = sol(j);
  out.isoMu = sol(n);
  out.residual = std::sqrt((design * sol - rhs).squaredNorm() / m);
  return out;
}

}  // namespace finsler
