#include "finsler/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace finsler {

namespace {

Eigen::MatrixXd toEigen(const Mat<double>& a) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return m;
}

}  // namespace

bool isPDExact(const Mat<Rational>& a) {
  // Sylvester: all leading principal minors positive, by exact elimination.
  const int n = static_cast<int>(a.size());
  Mat<Rational> m = a;
  for (int k = 0; k < n; ++k) {
    if (sgn(m[k][k]) <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      Rational factor = m[i][k] / m[k][k];
      for (int j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return true;
}

bool isSymmetricPD(const Mat<double>& a, double pivotTol) {
  Eigen::MatrixXd m = toEigen(a);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
  if (ldlt.info() != Eigen::Success) return false;
  return ldlt.vectorD().minCoeff() > pivotTol;
}

double symmetricCondition(const Mat<double>& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(toEigen(a), Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().cwiseAbs().minCoeff();
  double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  if (lo == 0.0) return 1e300;
  return hi / lo;
}

Mat<double> invertSymmetricChecked(const Mat<double>& a, double maxCondition) {
  double cond = symmetricCondition(a);
  if (!(cond < maxCondition)) {
    std::ostringstream os;
    os << "matrix too ill-conditioned to invert: condition estimate " << cond;
    fail(ErrorKind::Definiteness, os.str());
  }
  Eigen::MatrixXd inv = toEigen(a).inverse();
  const int n = static_cast<int>(a.size());
  Mat<double> out = matZero(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[static_cast<size_t>(i)][static_cast<size_t>(j)] = inv(i, j);
  return out;
}

}  // namespace finsler
