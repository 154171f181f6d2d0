#include "finsler/mroot.hpp"

#include <algorithm>
#include <cmath>

#include "finsler/errors.hpp"
#include "finsler/ratfit.hpp"
#include "finsler/rng.hpp"

namespace finsler {

MRootSpec asMRoot(const MetricSpec& M) {
  if (const auto* Mr = std::get_if<MRootSpec>(&M)) return *Mr;
  if (const auto* C = std::get_if<CubicSpec>(&M)) return cubicToMRoot(*C);
  const auto& R = std::get<RiemannSpec>(M);
  MRootSpec out;
  out.n = R.n;
  out.m = 2;
  for (int i = 0; i < R.n; ++i)
    for (int j = i; j < R.n; ++j) out.tensor[{i + 1, j + 1}] = R.a[i][j];
  return out;
}

std::string certTargetName(CertTarget t) {
  switch (t) {
    case CertTarget::F2Ginv:
      return "F2ginv";
    case CertTarget::Ric:
      return "Ric";
    case CertTarget::F2R:
      return "F2r";
  }
  return "unknown";
}

std::string theorem1VerdictName(Theorem1Verdict v) {
  switch (v) {
    case Theorem1Verdict::VanishingR:
      return "r-vanishes";
    case Theorem1Verdict::HypothesisFails:
      return "hypothesis-fails";
    case Theorem1Verdict::Violation:
      return "violation";
  }
  return "unknown";
}

namespace {

bool retryableSampleError(const Error& e) {
  return e.kind() == ErrorKind::Cone || e.kind() == ErrorKind::Definiteness ||
         e.kind() == ErrorKind::Singularity || e.kind() == ErrorKind::Domain;
}

}  // namespace

RationalityCertificate certifyRational(const MetricSpec& M, CertTarget target,
                                       DegreeBounds bounds, int sampleBudget,
                                       std::uint64_t seed, std::vector<double> x, int entryI,
                                       int entryJ) {
  const int n = dimension(M);
  if (x.empty()) x.assign(static_cast<size_t>(n), 0.0);
  if (static_cast<int>(x.size()) != n)
    fail(ErrorKind::Argument, "freeze point dimension does not match the metric");
  if (target == CertTarget::F2Ginv &&
      (entryI < 0 || entryI >= n || entryJ < 0 || entryJ >= n))
    fail(ErrorKind::Argument, "F2ginv entry indices out of range");

  const int d = std::min(bounds.den, bounds.num - 2);
  if (d < 0)
    fail(ErrorKind::Argument,
         "degree bounds too small: the targets are 2-homogeneous, so the "
         "numerator needs degree >= 2");

  RationalityCertificate cert;
  cert.target = target;
  cert.entryI = entryI;
  cert.entryJ = entryJ;
  cert.numDegree = d + 2;
  cert.denDegree = d;
  cert.seed = seed;
  // Rational-constant coefficients admit exact arithmetic for every target:
  // F^2 g^{ij} through the adjugate route, Ric and F^2 r because the radicand
  // then has no x-dependence, making the spray the zero function (witnessed
  // per sample). Constant-but-irrational coefficients (e.g. a conformal
  // scaling by a constant) must take the floating route.
  cert.exactMode = isExactConstantCoefficient(M);

  const size_t uN = homogeneousExponents(n, d + 2).size();
  const size_t uD = homogeneousExponents(n, d).size();
  const size_t fitCount = uN + uD + 4;
  const size_t holdCount = 12;

  Rng rng(seed);
  int draws = 0;
  auto spend = [&] {
    if (++draws > sampleBudget)
      fail(ErrorKind::Sampling,
           "cone rejection exhausted the sample budget (" + std::to_string(sampleBudget) +
               " draws for " + std::to_string(fitCount + holdCount) + " samples)");
  };

  if (cert.exactMode) {
    MRootSpec mr = asMRoot(M);
    std::vector<Rational> xr(static_cast<size_t>(n), Rational(0));
    auto exactValue = [&](const std::vector<Rational>& y) -> Rational {
      if (target == CertTarget::F2Ginv) return f2Ginv(mr, xr, y)[entryI][entryJ];
      Jet<Rational> fm = mrootFormJet(mr, xr, y, 1);
      if (scalarSignApprox(fm.value()) <= 0)
        fail(ErrorKind::Cone, "m-th root form not positive at this direction");
      for (int i = 0; i < n; ++i)
        if (!(fm.derivative(varX(i)).value() == 0))
          fail(ErrorKind::Argument,
               "internal contradiction: constant-coefficient radicand has a "
               "nonvanishing x-derivative");
      // zero x-gradient makes the spray vanish identically, so Ric and F^2 r
      // are exactly the zero function on the cone
      return Rational(0);
    };
    auto drawSample = [&](std::vector<Rational>& pt, Rational& val) {
      for (;;) {
        spend();
        std::vector<Rational> y(static_cast<size_t>(n));
        // nonzero coordinates keep adjugate-route denominators (which often
        // carry coordinate factors) from vanishing on holdout points
        for (auto& c : y) {
          long num = rng.uniformInt(1, 9);
          if (rng.uniform() < 0.5) num = -num;
          c = ratFromLong(num, rng.uniformInt(1, 4));
        }
        try {
          val = exactValue(y);
        } catch (const Error& e) {
          if (retryableSampleError(e)) continue;
          throw;
        }
        pt = std::move(y);
        return;
      }
    };
    std::vector<std::vector<Rational>> fitPts(fitCount), holdPts(holdCount);
    std::vector<Rational> fitVals(fitCount), holdVals(holdCount);
    for (size_t k = 0; k < fitCount; ++k) drawSample(fitPts[k], fitVals[k]);
    for (size_t k = 0; k < holdCount; ++k) drawSample(holdPts[k], holdVals[k]);
    ExactRatFit fr = ratFitExact(n, d + 2, d, fitPts, fitVals, holdPts, holdVals);
    cert.conclusive = fr.conclusive;
    cert.pass = fr.pass;
    cert.fitResidual = 0;
    cert.holdoutResidual = fr.holdoutResidual;
    return cert;
  }

  MRootSpec mr = asMRoot(M);
  auto evaluate = [&](const std::vector<double>& y) -> double {
    switch (target) {
      case CertTarget::F2Ginv:
        return f2Ginv(mr, x, y)[entryI][entryJ];
      case CertTarget::Ric:
        return ricci(M, x, y);
      case CertTarget::F2R:
        return evalF2Jet(M, x, y, 0).value() * scalarCurvature(M, x, y);
    }
    fail(ErrorKind::Argument, "unknown certification target");
  };
  auto drawSample = [&](std::vector<double>& pt, double& val) {
    for (;;) {
      spend();
      std::vector<double> y(static_cast<size_t>(n));
      double norm2 = 0;
      for (auto& c : y) {
        c = rng.uniform(-1.5, 1.5);
        norm2 += c * c;
      }
      if (norm2 < 0.09) continue;  // monomials degenerate near y = 0
      try {
        val = evaluate(y);
      } catch (const Error& e) {
        if (retryableSampleError(e)) continue;
        throw;
      }
      pt = std::move(y);
      return;
    }
  };
  std::vector<std::vector<double>> fitPts(fitCount), holdPts(holdCount);
  std::vector<double> fitVals(fitCount), holdVals(holdCount);
  for (size_t k = 0; k < fitCount; ++k) drawSample(fitPts[k], fitVals[k]);
  for (size_t k = 0; k < holdCount; ++k) drawSample(holdPts[k], holdVals[k]);
  ApproxRatFit fa = ratFitApprox(n, d + 2, d, fitPts, fitVals, holdPts, holdVals, 1e-8);
  cert.conclusive = fa.conclusive;
  cert.pass = fa.pass;
  cert.fitResidual = fa.fitResidual;
  cert.holdoutResidual = fa.holdoutResidual;
  return cert;
}

RationalityCertificate certifyRationalEscalating(const MetricSpec& M, CertTarget target,
                                                 int sampleBudget, std::uint64_t seed,
                                                 std::vector<double> x, int entryI,
                                                 int entryJ) {
  const int cap = 24;
  const int m = asMRoot(M).m;
  DegreeBounds bounds{std::min(3 * m, cap), std::min(3 * m, cap)};
  for (;;) {
    RationalityCertificate cert =
        certifyRational(M, target, bounds, sampleBudget, seed, x, entryI, entryJ);
    if (cert.conclusive && cert.pass) return cert;
    if (bounds.num >= cap && bounds.den >= cap) return cert;
    bounds.num = std::min(2 * bounds.num, cap);
    bounds.den = std::min(2 * bounds.den, cap);
  }
}

Theorem1Report theorem1Check(const MetricSpec& M, const std::vector<double>& x,
                             const std::vector<std::vector<double>>& directions, double tol) {
  const int n = dimension(M);
  if (static_cast<int>(x.size()) != n)
    fail(ErrorKind::Argument, "base point dimension does not match the metric");
  if (static_cast<int>(directions.size()) < n + 2)
    fail(ErrorKind::Sampling, "need at least n + 2 cone directions");

  std::vector<double> rs, fs;
  rs.reserve(directions.size());
  fs.reserve(directions.size());
  double maxR = 0;
  for (const auto& y : directions) {
    if (static_cast<int>(y.size()) != n)
      fail(ErrorKind::Argument, "direction dimension does not match the metric");
    CurvatureBundle<double> bundle = curvatureBundle(M, x, y);
    rs.push_back(bundle.scalarR);
    fs.push_back(evalF(M, x, y, 0).value());
    maxR = std::max(maxR, std::abs(bundle.scalarR));
  }

  Theorem1Report rep;
  rep.maxAbsR = maxR;
  rep.fit = fitWeaklyIsotropic(directions, rs, fs, n);
  rep.fitResidual = rep.fit.residual;
  if (maxR < tol)
    rep.verdict = Theorem1Verdict::VanishingR;
  else if (rep.fit.residual >= tol)
    rep.verdict = Theorem1Verdict::HypothesisFails;
  else
    rep.verdict = Theorem1Verdict::Violation;
  rep.consistent = rep.verdict != Theorem1Verdict::Violation;
  return rep;
}

}  // namespace finsler
