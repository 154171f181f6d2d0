#include "finsler/conformal.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

namespace {

// coeff * e^{c kappa} as an expression (coeff 0 stays 0).
Expr scaleCoeff(const Expr& coeff, const Expr& kappa, long c, int n) {
  if (exprEqual(coeff.ast(), exprNum(Rational(0)))) return coeff;
  ExprPtr factor = kappa.ast();
  if (c != 1) factor = exprBinary(ExprKind::Mul, exprNum(Rational(c)), factor);
  ExprPtr scaled = exprBinary(ExprKind::Mul, exprCall(ExprKind::Exp, factor), coeff.ast());
  return Expr::fromAst(scaled, n);
}

const CubicSpec& requireCubicBase(const ConformalData& D, const char* who) {
  const auto* C = std::get_if<CubicSpec>(&D.base);
  if (!C)
    fail(ErrorKind::Argument,
         std::string(who) + " needs an (alpha,beta) base carrying a one-form");
  return *C;
}

}  // namespace

MetricSpec scaleMetricByConformalFactor(const MetricSpec& M, const Expr& kappa) {
  const int n = dimension(M);
  if (exprEqual(kappa.ast(), exprNum(Rational(0)))) return M;
  if (const auto* R = std::get_if<RiemannSpec>(&M)) {
    RiemannSpec out = *R;
    for (auto& row : out.a)
      for (auto& e : row) e = scaleCoeff(e, kappa, 2, n);
    return out;
  }
  if (const auto* C = std::get_if<CubicSpec>(&M)) {
    CubicSpec out = *C;
    for (auto& row : out.alpha.a)
      for (auto& e : row) e = scaleCoeff(e, kappa, 2, n);
    for (auto& e : out.beta.b) e = scaleCoeff(e, kappa, 1, n);
    return out;
  }
  const auto& Mr = std::get<MRootSpec>(M);
  MRootSpec out = Mr;
  for (auto& [idx, e] : out.tensor) e = scaleCoeff(e, kappa, Mr.m, n);
  return out;
}

MetricSpec makeConformal(const ConformalData& D) {
  if (!isConstantCoefficient(D.base))
    fail(ErrorKind::Argument,
         "conformal base must be locally Minkowski (x-independent coefficients)");
  return scaleMetricByConformalFactor(D.base, D.kappa);
}

ConformalScalars<double> conformalScalars(const ConformalData& D, const std::vector<double>& x,
                                          const std::vector<double>& y) {
  const CubicSpec& C = requireCubicBase(D, "conformalScalars");
  return conformalScalars(C.alpha, C.beta, D.kappa, x, y);
}

namespace {

double maxAbs(double acc, double v) { return std::max(acc, std::abs(v)); }

struct LineAccum {
  double dev = 0;
  double mag = 0;
  void add(double lhs, double rhs) {
    dev = maxAbs(dev, lhs - rhs);
    mag = std::max({mag, std::abs(lhs), std::abs(rhs)});
  }
  ConformalIdentityLine finish(const std::string& name) const {
    ConformalIdentityLine out;
    out.name = name;
    out.maxAbsDeviation = dev;
    out.scale = std::max(1.0, mag);
    out.pass = dev < 1e-7 * out.scale;
    return out;
  }
};

}  // namespace

ConformalIdentityReport verifyConformalIdentities(const ConformalData& D,
                                                  const std::vector<double>& x,
                                                  const std::vector<double>& y) {
  const CubicSpec& base = requireCubicBase(D, "verifyConformalIdentities");
  if (!isConstantCoefficient(D.base))
    fail(ErrorKind::Argument,
         "conformal base must be locally Minkowski (x-independent coefficients)");
  const int n = base.alpha.n;
  const CubicSpec scaled = std::get<CubicSpec>(scaleMetricByConformalFactor(D.base, D.kappa));

  auto tilde = covDerivBundle(base.alpha, base.beta, x, y);
  auto plain = covDerivBundle(scaled.alpha, scaled.beta, x, y);
  auto gammaTilde = christoffel(base.alpha, x);
  auto gammaPlain = christoffel(scaled.alpha, x);
  ConformalScalars<double> ks = conformalScalars(base.alpha, base.beta, D.kappa, x, y);

  double ek = std::exp(D.kappa.evalJet(x, 0, n).value());
  double emk = 1.0 / ek;
  double b2 = tilde.B;

  std::vector<double> btilde(static_cast<size_t>(n), 0.0);
  Mat<double> atilde = matZero(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    btilde[static_cast<size_t>(i)] = base.beta.b[i].evalJet(x, 0, 2 * n).value();
    for (int j = 0; j < n; ++j) atilde[i][j] = base.alpha.a[i][j].evalJet(x, 0, 2 * n).value();
  }

  ConformalIdentityReport rep;

  LineAccum nabla;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double lhs = plain.rij[i][j] + plain.sij[i][j];
      double rhs = ek * (tilde.rij[i][j] + tilde.sij[i][j] - btilde[j] * ks.ki[i] +
                         ks.f * atilde[i][j]);
      nabla.add(lhs, rhs);
    }
  rep.lines.push_back(nabla.finish("b_{i|j} = e^k (b~_{i||j} - b~_j k_i + f a~_ij)"));

  LineAccum gamma;
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double rhs = gammaTilde[l][i][j] + ks.ki[j] * (l == i ? 1.0 : 0.0) +
                     ks.ki[i] * (l == j ? 1.0 : 0.0) - ks.kUp[l] * atilde[i][j];
        gamma.add(gammaPlain[l][i][j], rhs);
      }
  rep.lines.push_back(gamma.finish("Gamma^l_ij = Gamma~^l_ij + k_j d^l_i + k_i d^l_j - k^l a~_ij"));

  LineAccum rij;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double rhs = ek * tilde.rij[i][j] +
                   0.5 * ek *
                       (-btilde[j] * ks.ki[i] - btilde[i] * ks.ki[j] + 2 * ks.f * atilde[i][j]);
      rij.add(plain.rij[i][j], rhs);
    }
  rep.lines.push_back(rij.finish("r_ij = e^k r~_ij + (e^k/2)(-b~_j k_i - b~_i k_j + 2 f a~_ij)"));

  LineAccum sij;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double rhs =
          ek * tilde.sij[i][j] + 0.5 * ek * (btilde[i] * ks.ki[j] - btilde[j] * ks.ki[i]);
      sij.add(plain.sij[i][j], rhs);
    }
  rep.lines.push_back(sij.finish("s_ij = e^k s~_ij + (e^k/2)(b~_i k_j - b~_j k_i)"));

  LineAccum ri;
  for (int i = 0; i < n; ++i) {
    double rhs = tilde.rvec[i] + 0.5 * (ks.f * btilde[i] - b2 * ks.ki[i]);
    ri.add(plain.rvec[i], rhs);
  }
  ri.add(plain.rScalar, emk * tilde.rScalar);
  rep.lines.push_back(ri.finish("r_i = r~_i + (f b~_i - b^2 k_i)/2 and r = e^-k r~"));

  LineAccum si;
  for (int i = 0; i < n; ++i) {
    double rhs = tilde.svec[i] + 0.5 * (b2 * ks.ki[i] - ks.f * btilde[i]);
    si.add(plain.svec[i], rhs);
  }
  rep.lines.push_back(si.finish("s_i = s~_i + (b^2 k_i - f b~_i)/2"));

  LineAccum trace;
  {
    double lhs = 0, rhsTilde = 0;
    for (int i = 0; i < n; ++i) {
      lhs += plain.rUp[i][i];
      rhsTilde += tilde.rUp[i][i];
    }
    trace.add(lhs, emk * (rhsTilde + (n - 1) * ks.f));
  }
  rep.lines.push_back(trace.finish("r^i_i = e^-k (r~^i_i + (n-1) f)"));

  LineAccum sup;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double rhs =
          emk * (tilde.sUp[j][i] + 0.5 * (tilde.braised[j] * ks.ki[i] - btilde[i] * ks.kUp[j]));
      sup.add(plain.sUp[j][i], rhs);
    }
  rep.lines.push_back(sup.finish("s^j_i = e^-k (s~^j_i + (b~^j k_i - b~_i k^j)/2)"));

  rep.allPass = true;
  for (const auto& ln : rep.lines) rep.allPass = rep.allPass && ln.pass;
  return rep;
}

HomothetyVerdict homothetyTest(const Expr& kappa,
                               const std::vector<std::vector<double>>& probes) {
  if (probes.empty()) fail(ErrorKind::Argument, "homothety test needs a nonempty probe set");
  if (probes.size() < 8)
    fail(ErrorKind::Sampling, "homothety test needs at least 8 probe points, got " +
                                  std::to_string(probes.size()));
  HomothetyVerdict out;
  for (const auto& x : probes) {
    const int n = static_cast<int>(x.size());
    Jet<double> kj = kappa.evalJet(x, 1, n);
    double g2 = 0;
    for (int i = 0; i < n; ++i) {
      double d = kj.derivative(i).value();
      g2 += d * d;
    }
    out.maxGradNorm = std::max(out.maxGradNorm, std::sqrt(g2));
  }
  out.homothetic = out.maxGradNorm < 1e-9;
  return out;
}

}  // namespace finsler
