#pragma once

#include <string>
#include <vector>

#include "finsler/curvature.hpp"
#include "finsler/metric.hpp"

namespace finsler {

// Conformal change F = e^{kappa(x)} Fbase with a locally Minkowski base.
struct ConformalData {
  MetricSpec base;
  Expr kappa;
};

// Coefficient-level scaling: a_ij by e^{2 kappa}, b_i by e^{kappa}, m-th root
// tensors by e^{m kappa}. No Minkowski validation (see makeConformal).
MetricSpec scaleMetricByConformalFactor(const MetricSpec& M, const Expr& kappa);

// Validating entry point: the base must be x-independent.
MetricSpec makeConformal(const ConformalData& D);

// kappa derivative data at x, raised/contracted with the base Riemannian
// metric of an (alpha,beta) base.
template <class T>
struct ConformalScalars {
  std::vector<T> ki;   // kappa_i
  Mat<T> kij;          // kappa Hessian
  std::vector<T> kUp;  // k^i = atilde^{ij} k_j
  T f, f1, f2, k0, k00, gradNormSq;
};

template <class T>
ConformalScalars<T> conformalScalars(const RiemannSpec& atilde, const OneFormSpec& btilde,
                                     const Expr& kappa, const std::vector<T>& x,
                                     const std::vector<T>& y) {
  const int n = atilde.n;
  T zero = likeZero(x[0]);
  Jet<T> kj = kappa.evalJet(x, 2, n);

  ConformalScalars<T> out;
  out.ki.assign(static_cast<size_t>(n), zero);
  out.kij = matZero(n, n, zero);
  for (int i = 0; i < n; ++i) {
    Jet<T> di = kj.derivative(i);
    out.ki[static_cast<size_t>(i)] = di.value();
    for (int j = 0; j < n; ++j) out.kij[i][j] = di.derivative(j).value();
  }

  Mat<T> a = matZero(n, n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = atilde.a[i][j].evalJet(x, 0, n).value();
  Mat<T> ainv = matInverse(a);
  std::vector<T> bv(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i) bv[static_cast<size_t>(i)] = btilde.b[i].evalJet(x, 0, n).value();
  std::vector<T> bUp(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) bUp[i] = bUp[i] + ainv[i][j] * bv[j];

  out.kUp.assign(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.kUp[i] = out.kUp[i] + ainv[i][j] * out.ki[j];

  out.f = zero;
  out.f1 = zero;
  out.f2 = zero;
  out.k0 = zero;
  out.k00 = zero;
  out.gradNormSq = zero;
  for (int i = 0; i < n; ++i) {
    out.f = out.f + bv[i] * out.kUp[i];
    out.k0 = out.k0 + out.ki[i] * y[i];
    out.gradNormSq = out.gradNormSq + out.kUp[i] * out.ki[i];
    for (int j = 0; j < n; ++j) {
      out.f1 = out.f1 + out.kij[i][j] * bUp[i] * y[j];
      out.f2 = out.f2 + out.kij[i][j] * bUp[i] * bUp[j];
      out.k00 = out.k00 + out.kij[i][j] * y[i] * y[j];
    }
  }
  return out;
}

// Unwraps an (alpha,beta) base from ConformalData.
ConformalScalars<double> conformalScalars(const ConformalData& D, const std::vector<double>& x,
                                          const std::vector<double>& y);

// One report entry per displayed transformation law.
struct ConformalIdentityLine {
  std::string name;
  double maxAbsDeviation = 0;
  double scale = 1;  // max(1, |LHS|, |RHS|); pass threshold is 1e-7 * scale
  bool pass = false;
};

struct ConformalIdentityReport {
  std::vector<ConformalIdentityLine> lines;
  bool allPass = false;
};

ConformalIdentityReport verifyConformalIdentities(const ConformalData& D,
                                                  const std::vector<double>& x,
                                                  const std::vector<double>& y);

struct HomothetyVerdict {
  bool homothetic = false;
  double maxGradNorm = 0;
};

// kappa is homothetic iff its gradient vanishes (below 1e-9) at every probe.
HomothetyVerdict homothetyTest(const Expr& kappa, const std::vector<std::vector<double>>& probes);

}  // namespace finsler
