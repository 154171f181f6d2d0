#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "finsler/expr.hpp"
#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"
#include "finsler/rational.hpp"

namespace finsler {

// Metric families. Coefficient data are expressions in x; every evaluation
// happens in a 2n-variable jet space, x-block variables 0..n-1 and y-block
// variables n..2n-1.

struct RiemannSpec {
  int n = 0;
  std::vector<std::vector<Expr>> a;  // n x n, symmetric, fully stored
};

struct OneFormSpec {
  std::vector<Expr> b;  // length n
};

// F = (p beta alpha^2 + q beta^3)^(1/3)
struct CubicSpec {
  RiemannSpec alpha;
  OneFormSpec beta;
  Rational p;
  Rational q;
};

// F = (a_{i1..im} y^{i1} .. y^{im})^(1/m); components keyed by the sorted
// index tuple (1-based, non-decreasing), one entry per orbit.
struct MRootSpec {
  int n = 0;
  int m = 0;
  std::map<std::vector<int>, Expr> tensor;
};

using MetricSpec = std::variant<RiemannSpec, CubicSpec, MRootSpec>;

int dimension(const MetricSpec& M);
bool isConstantCoefficient(const MetricSpec& M);

// Stricter: every coefficient is a literal rational constant, so the metric
// can be evaluated in exact arithmetic. A conformal scaling by a constant
// factor is constant-coefficient but not exact (coefficients carry exp terms).
bool isExactConstantCoefficient(const MetricSpec& M);

// Number of distinct permutations of a sorted index tuple: m! / prod(mult!).
Integer tupleMultiplicity(const std::vector<int>& sorted);

// The cubic metric as a 3rd-root tensor: a_{ijk} = (p/3)(a_ij b_k + a_jk b_i
// + a_ki b_j) + q b_i b_j b_k.
MRootSpec cubicToMRoot(const CubicSpec& C);

// T = phi - s phi' + (B - s^2) phi''; positive iff the metric built from phi
// is positive definite at this (s, B).
struct Positivity24 {
  double T = 0;
  bool positive = false;
};
Positivity24 positivity24(double phi, double phiPrime, double phiPrime2, double B, double s);

// phi^-5 p[(4p+3qB)s^2 - pB] for the cubic phi, plus verdict; also
// cross-checks (9/2) phi^5 T = p[(4p+3qB)s^2 - pB] and records the residual.
struct Positivity27 {
  double value = 0;
  bool positive = false;
  double identityResidual = 0;
};
Positivity27 cubicPositivity27(double p, double q, double B, double s);

inline int varX(int i) { return i; }
inline int varY(int n, int i) { return n + i; }

namespace detail {

template <class T>
std::vector<Jet<T>> coefficientJets(const std::vector<Expr>& exprs, const std::vector<T>& x,
                                    int order, int vars) {
  std::vector<Jet<T>> out;
  out.reserve(exprs.size());
  for (const Expr& e : exprs) out.push_back(e.evalJet(x, order, vars));
  return out;
}

template <class T>
Mat<Jet<T>> matrixJets(const std::vector<std::vector<Expr>>& a, const std::vector<T>& x,
                       int order, int vars) {
  Mat<Jet<T>> out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(coefficientJets(row, x, order, vars));
  return out;
}

template <class T>
std::vector<Jet<T>> yCoordinateJets(const std::vector<T>& y, int n, int order, int vars) {
  std::vector<Jet<T>> out;
  out.reserve(y.size());
  for (int i = 0; i < n; ++i)
    out.push_back(Jet<T>::coordinate(y[static_cast<size_t>(i)], varY(n, i), vars, order));
  return out;
}

}  // namespace detail

// alpha^2 = a_ij y^i y^j as a jet in all 2n variables.
template <class T>
Jet<T> alphaSquaredJet(const RiemannSpec& A, const std::vector<T>& x, const std::vector<T>& y,
                       int order) {
  const int n = A.n;
  const int vars = 2 * n;
  Mat<Jet<T>> aj = detail::matrixJets(A.a, x, order, vars);
  auto yj = detail::yCoordinateJets(y, n, order, vars);
  Jet<T> acc = likeZero(yj[0]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += aj[i][j] * yj[i] * yj[j];
  return acc;
}

template <class T>
Jet<T> betaJet(const OneFormSpec& Bf, const std::vector<T>& x, const std::vector<T>& y,
               int order) {
  const int n = static_cast<int>(Bf.b.size());
  const int vars = 2 * n;
  auto bj = detail::coefficientJets(Bf.b, x, order, vars);
  auto yj = detail::yCoordinateJets(y, n, order, vars);
  Jet<T> acc = likeZero(yj[0]);
  for (int i = 0; i < n; ++i) acc += bj[i] * yj[i];
  return acc;
}

// F^m for the m-th root form (m = 3 radicand for cubic specs).
template <class T>
Jet<T> mrootFormJet(const MRootSpec& M, const std::vector<T>& x, const std::vector<T>& y,
                    int order) {
  const int n = M.n;
  const int vars = 2 * n;
  auto yj = detail::yCoordinateJets(y, n, order, vars);
  Jet<T> acc = Jet<T>::constant(likeZero(y[0]), vars, order);
  for (const auto& [idx, coeff] : M.tensor) {
    Jet<T> term = coeff.evalJet(x, order, vars);
    for (int k : idx) term = term * yj[static_cast<size_t>(k - 1)];
    acc += term * scalarFromRational<T>(Rational(tupleMultiplicity(idx)));
  }
  return acc;
}

template <class T>
Jet<T> cubicRadicandJet(const CubicSpec& C, const std::vector<T>& x, const std::vector<T>& y,
                        int order) {
  Jet<T> a2 = alphaSquaredJet(C.alpha, x, y, order);
  Jet<T> b = betaJet(C.beta, x, y, order);
  return a2 * b * scalarFromRational<T>(C.p) + b * b * b * scalarFromRational<T>(C.q);
}

// F^2 as a jet; the preferred primitive (avoids the square root for
// Riemannian metrics and keeps exponents as simple as possible).
template <class T>
Jet<T> evalF2Jet(const MetricSpec& M, const std::vector<T>& x, const std::vector<T>& y,
                 int order) {
  if (const auto* R = std::get_if<RiemannSpec>(&M)) {
    Jet<T> a2 = alphaSquaredJet(*R, x, y, order);
    if (scalarSignApprox(a2.value()) <= 0)
      fail(ErrorKind::Cone, "alpha^2 not positive at this direction");
    return a2;
  }
  if (const auto* C = std::get_if<CubicSpec>(&M)) {
    Jet<T> rad = cubicRadicandJet(*C, x, y, order);
    if (scalarSignApprox(rad.value()) <= 0)
      fail(ErrorKind::Cone, "cubic radicand not positive at this direction (value " +
                                scalarRepr(rad.value()) + ")");
    return applyPow(rad, Rational(2, 3));
  }
  const auto& Mr = std::get<MRootSpec>(M);
  Jet<T> fm = mrootFormJet(Mr, x, y, order);
  if (scalarSignApprox(fm.value()) <= 0)
    fail(ErrorKind::Cone, "m-th root form not positive at this direction (value " +
                              scalarRepr(fm.value()) + ")");
  return applyPow(fm, Rational(2, Mr.m));
}

template <class T>
Jet<T> evalF(const MetricSpec& M, const std::vector<T>& x, const std::vector<T>& y, int order) {
  if (const auto* R = std::get_if<RiemannSpec>(&M)) {
    Jet<T> a2 = alphaSquaredJet(*R, x, y, order);
    if (scalarSignApprox(a2.value()) <= 0)
      fail(ErrorKind::Cone, "alpha^2 not positive at this direction");
    return applyPow(a2, Rational(1, 2));
  }
  if (const auto* C = std::get_if<CubicSpec>(&M)) {
    Jet<T> rad = cubicRadicandJet(*C, x, y, order);
    if (scalarSignApprox(rad.value()) <= 0)
      fail(ErrorKind::Cone, "cubic radicand not positive at this direction (value " +
                                scalarRepr(rad.value()) + ")");
    return applyPow(rad, Rational(1, 3));
  }
  const auto& Mr = std::get<MRootSpec>(M);
  Jet<T> fm = mrootFormJet(Mr, x, y, order);
  if (scalarSignApprox(fm.value()) <= 0)
    fail(ErrorKind::Cone, "m-th root form not positive at this direction (value " +
                              scalarRepr(fm.value()) + ")");
  return applyPow(fm, Rational(1, Mr.m));
}

// g_ij = [1/2 F^2]_{y^i y^j} as jets of the requested order.
template <class T>
Mat<Jet<T>> fundamentalTensorJets(const MetricSpec& M, const std::vector<T>& x,
                                  const std::vector<T>& y, int order) {
  const int n = dimension(M);
  Jet<T> f2 = evalF2Jet(M, x, y, order + 2);
  Mat<Jet<T>> g;
  g.reserve(static_cast<size_t>(n));
  T half = scalarFromRational<T>(Rational(1, 2));
  for (int i = 0; i < n; ++i) {
    std::vector<Jet<T>> row;
    row.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      row.push_back(f2.derivative(varY(n, i)).derivative(varY(n, j)) * half);
    g.push_back(std::move(row));
  }
  return g;
}

template <class T>
Mat<T> fundamentalTensor(const MetricSpec& M, const std::vector<T>& x, const std::vector<T>& y) {
  Mat<Jet<T>> gj = fundamentalTensorJets(M, x, y, 0);
  const int n = dimension(M);
  Mat<T> g;
  g.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<T> row;
    row.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) row.push_back(gj[i][j].value());
    g.push_back(std::move(row));
  }
  return g;
}

// Inverse with a condition-number guard (definiteness error past 1e12).
Mat<double> inverseFundamentalTensor(const Mat<double>& g);

// Pointwise values of the cubic ingredients at (x, y): the Riemannian matrix
// and inverse, alpha, beta, s = beta/alpha, b^i and B = b^i b_i.
template <class T>
struct CubicPoint {
  Mat<T> a;
  Mat<T> ainv;
  std::vector<T> bvec;     // b_i
  std::vector<T> braised;  // b^i
  T alpha2, alpha, beta, s, B;
};

template <class T>
CubicPoint<T> cubicPointData(const CubicSpec& C, const std::vector<T>& x,
                             const std::vector<T>& y) {
  const int n = C.alpha.n;
  CubicPoint<T> P;
  P.a = matZero(n, n, likeZero(y[0]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P.a[i][j] = C.alpha.a[i][j].evalJet(x, 0, 2 * n).value();
  P.ainv = matInverse(P.a);
  P.bvec.clear();
  for (int i = 0; i < n; ++i) P.bvec.push_back(C.beta.b[i].evalJet(x, 0, 2 * n).value());
  T zero = likeZero(y[0]);
  P.alpha2 = zero;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P.alpha2 = P.alpha2 + P.a[i][j] * y[i] * y[j];
  if (scalarSignApprox(P.alpha2) <= 0)
    fail(ErrorKind::Cone, "alpha^2 not positive at this direction");
  P.alpha = scalarPowRational(P.alpha2, Rational(1, 2));
  P.beta = zero;
  for (int i = 0; i < n; ++i) P.beta = P.beta + P.bvec[i] * y[i];
  P.s = P.beta * scalarRecip(P.alpha);
  P.braised.assign(n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P.braised[i] = P.braised[i] + P.ainv[i][j] * P.bvec[j];
  P.B = zero;
  for (int i = 0; i < n; ++i) P.B = P.B + P.braised[i] * P.bvec[i];
  return P;
}

// phi, phi', phi'' of the cubic phi(s) = (p s + q s^3)^(1/3) at s.
template <class T>
struct PhiJet {
  T phi, phi1, phi2;
};

template <class T>
PhiJet<T> cubicPhiJet(const Rational& p, const Rational& q, const T& s) {
  Jet<T> sj = Jet<T>::coordinate(s, 0, 1, 2);
  Jet<T> u = sj * scalarFromRational<T>(p) + sj * sj * sj * scalarFromRational<T>(q);
  if (scalarIsZero(u.value()))
    fail(ErrorKind::Cone, "phi(s) = 0: cubic radicand vanishes at s = " + scalarRepr(s));
  Jet<T> phi = applyPow(u, Rational(1, 3));
  PhiJet<T> out;
  out.phi = phi.value();
  Jet<T> d1 = phi.derivative(0);
  out.phi1 = d1.value();
  out.phi2 = d1.derivative(0).value();
  return out;
}

}  // namespace finsler
