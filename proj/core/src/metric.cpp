#include "finsler/metric.hpp"

#include <cmath>

namespace finsler {

namespace {

bool astHasVar(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprKind::Var) return true;
  return astHasVar(e->a) || astHasVar(e->b);
}

}  // namespace

int dimension(const MetricSpec& M) {
  if (const auto* R = std::get_if<RiemannSpec>(&M)) return R->n;
  if (const auto* C = std::get_if<CubicSpec>(&M)) return C->alpha.n;
  return std::get<MRootSpec>(M).n;
}

bool isConstantCoefficient(const MetricSpec& M) {
  if (const auto* R = std::get_if<RiemannSpec>(&M)) {
    for (const auto& row : R->a)
      for (const Expr& e : row)
        if (astHasVar(e.ast())) return false;
    return true;
  }
  if (const auto* C = std::get_if<CubicSpec>(&M)) {
    for (const auto& row : C->alpha.a)
      for (const Expr& e : row)
        if (astHasVar(e.ast())) return false;
    for (const Expr& e : C->beta.b)
      if (astHasVar(e.ast())) return false;
    return true;
  }
  for (const auto& [idx, e] : std::get<MRootSpec>(M).tensor)
    if (astHasVar(e.ast())) return false;
  return true;
}

namespace {

// Constant folding reduces any rational-constant expression to a single Num
// node, so "root is Num" is exactly "literal rational constant".
bool isNum(const Expr& e) { return e.ast()->kind == ExprKind::Num; }

}  // namespace

bool isExactConstantCoefficient(const MetricSpec& M) {
  if (const auto* R = std::get_if<RiemannSpec>(&M)) {
    for (const auto& row : R->a)
      for (const Expr& e : row)
        if (!isNum(e)) return false;
    return true;
  }
  if (const auto* C = std::get_if<CubicSpec>(&M)) {
    for (const auto& row : C->alpha.a)
      for (const Expr& e : row)
        if (!isNum(e)) return false;
    for (const Expr& e : C->beta.b)
      if (!isNum(e)) return false;
    return true;
  }
  for (const auto& [idx, e] : std::get<MRootSpec>(M).tensor)
    if (!isNum(e)) return false;
  return true;
}

Integer tupleMultiplicity(const std::vector<int>& sorted) {
  Integer fact(1);
  for (size_t k = 2; k <= sorted.size(); ++k) fact *= static_cast<unsigned long>(k);
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    Integer run(1);
    for (size_t k = 2; k <= j - i; ++k) run *= static_cast<unsigned long>(k);
    fact /= run;
    i = j;
  }
  return fact;
}

MRootSpec cubicToMRoot(const CubicSpec& C) {
  const int n = C.alpha.n;
  MRootSpec out;
  out.n = n;
  out.m = 3;
  ExprPtr p3 = exprNum(Rational(C.p / 3));
  ExprPtr qn = exprNum(C.q);
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      for (int k = j; k <= n; ++k) {
        const ExprPtr& aij = C.alpha.a[i - 1][j - 1].ast();
        const ExprPtr& ajk = C.alpha.a[j - 1][k - 1].ast();
        const ExprPtr& aki = C.alpha.a[k - 1][i - 1].ast();
        const ExprPtr& bi = C.beta.b[i - 1].ast();
        const ExprPtr& bj = C.beta.b[j - 1].ast();
        const ExprPtr& bk = C.beta.b[k - 1].ast();
        ExprPtr sym = exprBinary(
            ExprKind::Add,
            exprBinary(ExprKind::Add, exprBinary(ExprKind::Mul, aij, bk),
                       exprBinary(ExprKind::Mul, ajk, bi)),
            exprBinary(ExprKind::Mul, aki, bj));
        ExprPtr cubic = exprBinary(ExprKind::Mul, qn,
                                   exprBinary(ExprKind::Mul, exprBinary(ExprKind::Mul, bi, bj), bk));
        ExprPtr total = exprBinary(ExprKind::Add, exprBinary(ExprKind::Mul, p3, sym), cubic);
        out.tensor.emplace(std::vector<int>{i, j, k}, Expr::fromAst(total, n));
      }
    }
  }
  return out;
}

Positivity24 positivity24(double phi, double phiPrime, double phiPrime2, double B, double s) {
  if (s * s > B * (1 + 1e-12) + 1e-300)
    fail(ErrorKind::Argument, "positivity check needs |s| <= sqrt(B): s^2 = " +
                                  std::to_string(s * s) + ", B = " + std::to_string(B));
  Positivity24 out;
  out.T = phi - s * phiPrime + (B - s * s) * phiPrime2;
  out.positive = out.T > 0;
  return out;
}

Positivity27 cubicPositivity27(double p, double q, double B, double s) {
  double u = p * s + q * s * s * s;
  if (u == 0.0) fail(ErrorKind::Cone, "phi(s) = 0: cubic radicand vanishes");
  double phi = std::cbrt(u);
  double bracket = p * ((4 * p + 3 * q * B) * s * s - p * B);
  Positivity27 out;
  out.value = bracket / std::pow(phi, 5);
  out.positive = out.value > 0;

  // cross-check against the direct (2.4) evaluation through jets:
  // (9/2) phi^5 T must reproduce the bracket
  Jet<double> sj = Jet<double>::coordinate(s, 0, 1, 2);
  Jet<double> uj = sj * p + sj * sj * sj * q;
  Jet<double> phij = applyPow(uj, Rational(1, 3));
  double f = phij.value();
  double f1 = phij.derivative(0).value();
  double f2 = phij.derivative(0).derivative(0).value();
  double T = f - s * f1 + (B - s * s) * f2;
  double lhs = 4.5 * std::pow(phi, 5) * T;
  double scale = std::max({1.0, std::fabs(bracket), std::fabs(lhs)});
  out.identityResidual = std::fabs(lhs - bracket) / scale;
  if (!(out.identityResidual < 1e-9))
    fail(ErrorKind::Domain, "positivity cross-check failed: (9/2) phi^5 T deviates from the "
                            "bracket by relative " +
                                std::to_string(out.identityResidual));
  return out;
}

Mat<double> inverseFundamentalTensor(const Mat<double>& g) {
  return invertSymmetricChecked(g, 1e12);
}

}  // namespace finsler
