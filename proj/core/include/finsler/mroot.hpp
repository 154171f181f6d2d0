#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finsler/curvature.hpp"
#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler {

// Any metric spec in m-th root form: m-th root specs verbatim, cubic specs
// through their 3rd-root tensor, Riemannian specs as m = 2.
MRootSpec asMRoot(const MetricSpec& M);

template <class T>
struct ATensor {
  int m = 0;
  Mat<T> A;     // A_ij = (1/(m(m-1))) d^2 F^m / dy^i dy^j, degree m-2 in y
  Mat<T> Ainv;  // exact or floating inverse of A
};

template <class T>
ATensor<T> aTensor(const MRootSpec& M, const std::vector<T>& x, const std::vector<T>& y) {
  const int n = M.n;
  Jet<T> fm = mrootFormJet(M, x, y, 2);
  if (scalarSignApprox(fm.value()) <= 0)
    fail(ErrorKind::Cone, "m-th root form not positive at this direction");
  ATensor<T> out;
  out.m = M.m;
  out.A = matZero(n, n, likeZero(y[0]));
  const T scale = scalarFromRational<T>(ratFromLong(1, static_cast<long>(M.m) * (M.m - 1)));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      MultiIndex mi(static_cast<size_t>(2 * n), 0);
      mi[static_cast<size_t>(varY(n, i))] += 1;
      mi[static_cast<size_t>(varY(n, j))] += 1;
      T v = fm.partial(mi) * scale;
      out.A[i][j] = v;
      out.A[j][i] = v;
    }
  }
  out.Ainv = matInverse(out.A);
  return out;
}

// The closed-form inverse of the fundamental tensor for m-th root metrics:
// g^{ij} = F^{m-2}/(m-1) A^{ij} + (m-2)/(m-1) y^i y^j / F^2.
template <class T>
Mat<T> inverse41(const MRootSpec& M, const std::vector<T>& x, const std::vector<T>& y) {
  const int n = M.n;
  ATensor<T> at = aTensor(M, x, y);
  T fmv = mrootFormJet(M, x, y, 0).value();
  T fPow = scalarPowRational(fmv, ratFromLong(M.m - 2, M.m));  // F^{m-2}
  T f2 = scalarPowRational(fmv, ratFromLong(2, M.m));          // F^2
  const T cA = fPow * scalarFromRational<T>(ratFromLong(1, M.m - 1));
  const T cY = scalarFromRational<T>(ratFromLong(M.m - 2, M.m - 1));
  Mat<T> g = matZero(n, n, likeZero(y[0]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = cA * at.Ainv[i][j] + cY * y[i] * y[j] / f2;
  return g;
}

// F^2 g^{ij} = F^m/(m-1) A^{ij} + (m-2)/(m-1) y^i y^j: every entry is a
// rational function of y, exactly evaluable for constant-coefficient specs.
template <class T>
Mat<T> f2Ginv(const MRootSpec& M, const std::vector<T>& x, const std::vector<T>& y) {
  const int n = M.n;
  ATensor<T> at = aTensor(M, x, y);
  T fm = mrootFormJet(M, x, y, 0).value();
  const T cA = fm * scalarFromRational<T>(ratFromLong(1, M.m - 1));
  const T cY = scalarFromRational<T>(ratFromLong(M.m - 2, M.m - 1));
  Mat<T> g = matZero(n, n, likeZero(y[0]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = cA * at.Ainv[i][j] + cY * y[i] * y[j];
  return g;
}

enum class CertTarget { F2Ginv, Ric, F2R };
std::string certTargetName(CertTarget t);

struct DegreeBounds {
  int num = 0;
  int den = 0;
};

struct RationalityCertificate {
  CertTarget target = CertTarget::Ric;
  int entryI = 0, entryJ = 0;  // component, F2Ginv only
  bool exactMode = false;
  int numDegree = 0, denDegree = 0;  // homogeneous degrees actually fitted
  double fitResidual = 0;
  double holdoutResidual = 0;
  bool conclusive = false;  // a candidate num/den emerged from the fit
  bool pass = false;        // holdout clean: exact zero, or < 1e-8 relative
  std::uint64_t seed = 0;
};

// Certifies that the target quantity, frozen at x and viewed as a function of
// y, is a ratio of homogeneous polynomials with numerator degree d+2 over
// denominator degree d, d = min(bounds.den, bounds.num - 2); every target here
// is 2-homogeneous in y. Fits on random cone directions, validates on a
// disjoint holdout set. sampleBudget caps the total draws including cone
// rejections. F2Ginv on constant-coefficient specs runs in exact rational
// arithmetic; Ric and F2R evaluate through the floating curvature pipeline.
RationalityCertificate certifyRational(const MetricSpec& M, CertTarget target,
                                       DegreeBounds bounds, int sampleBudget,
                                       std::uint64_t seed, std::vector<double> x = {},
                                       int entryI = 0, int entryJ = 0);

// Degree escalation: starts at (3m, 3m), doubles while the fit is
// inconclusive or the holdout rejects, capped at 24.
RationalityCertificate certifyRationalEscalating(const MetricSpec& M, CertTarget target,
                                                 int sampleBudget, std::uint64_t seed,
                                                 std::vector<double> x = {}, int entryI = 0,
                                                 int entryJ = 0);

enum class Theorem1Verdict { VanishingR, HypothesisFails, Violation };
std::string theorem1VerdictName(Theorem1Verdict v);

struct Theorem1Report {
  Theorem1Verdict verdict = Theorem1Verdict::Violation;
  bool consistent = false;  // verdict != Violation
  double maxAbsR = 0;
  double fitResidual = 0;
  IsotropyFit fit;
};

// Evaluates the scalar curvature r on the given cone directions and fits the
// weak-isotropy form r = n(n-1)(theta_i y^i / F + mu). Consistent iff either
// r vanishes everywhere (max |r| < tol) or the fit rejects the form (residual
// >= tol); the never-expected remaining combination is a violation.
Theorem1Report theorem1Check(const MetricSpec& M, const std::vector<double>& x,
                             const std::vector<std::vector<double>>& directions, double tol);

}  // namespace finsler
