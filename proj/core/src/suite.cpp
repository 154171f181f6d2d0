#include "finsler/suite.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "finsler/curvature.hpp"
#include "finsler/errors.hpp"
#include "finsler/mroot.hpp"
#include "finsler/rng.hpp"
#include "finsler/version.hpp"

namespace finsler {

namespace {

constexpr int kConeRetryCap = 1000;

const std::map<std::string, double>& defaultTolerances() {
  static const std::map<std::string, double> tols = {
      {"positivity-24-27", 1e-9},   {"spray-cross-check", 1e-7},
      {"minkowski-flatness", 1e-12}, {"conformal-identities-33", 1e-7},
      {"inverse-41", 1e-8},          {"rationality-lemma-24", 0.0},
      {"theorem1", 1e-9},            {"proofchain-410-412", 0.0},
      {"case-analysis", 0.0},        {"homothety", 1e-9},
  };
  return tols;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::uint64_t subSeed(std::uint64_t master, const std::string& tag) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h ^ master;
}

bool retryable(const Error& e) {
  return e.kind() == ErrorKind::Cone || e.kind() == ErrorKind::Definiteness ||
         e.kind() == ErrorKind::Singularity || e.kind() == ErrorKind::Domain;
}

std::vector<double> sphereDirection(Rng& rng, int n) {
  for (;;) {
    std::vector<double> y(static_cast<size_t>(n));
    double norm2 = 0;
    for (auto& c : y) {
      c = rng.normal();
      norm2 += c * c;
    }
    if (norm2 < 1e-12) continue;
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : y) c *= inv;
    return y;
  }
}

// Draws sphere directions until fn accepts one; cone-type rejections spend
// retries, anything else propagates.
template <class Fn>
auto sampleInCone(Rng& rng, int n, Fn&& fn) {
  for (int k = 0; k < kConeRetryCap; ++k) {
    std::vector<double> y = sphereDirection(rng, n);
    try {
      return fn(y);
    } catch (const Error& e) {
      if (!retryable(e)) throw;
    }
  }
  fail(ErrorKind::Sampling,
       "cone rejection cap (" + std::to_string(kConeRetryCap) + ") exceeded");
}

std::vector<double> sampleX(Rng& rng, int n, bool constantCoeff, double halfWidth = 0.5) {
  std::vector<double> x(static_cast<size_t>(n), 0.0);
  if (!constantCoeff)
    for (auto& c : x) c = rng.uniform(-halfWidth, halfWidth);
  return x;
}

struct FixtureInfo {
  std::string name;
  const LoadedFixture* raw = nullptr;
  std::optional<MetricSpec> effective;  // metric fixtures and scaled conformal data
  const ConformalData* conformal = nullptr;
  const ProofInstance* instance = nullptr;
  int m = 0;
  bool constantCoeff = false;
  bool exactConst = false;  // coefficients are literal rationals, not just x-free
  bool conformallyFlat = false;  // constant coefficients, possibly after e^kappa
};

struct Ctx {
  std::vector<LoadedFixture> loaded;
  std::vector<FixtureInfo> fixtures;
  int samples = 0;
  std::uint64_t seed = 0;
  const SuiteConfig* config = nullptr;
  std::vector<CheckResult> entries;

  double tol(const std::string& check) const {
    auto o = config->tolerances.find(check);
    if (o != config->tolerances.end()) return o->second;
    return defaultTolerances().at(check);
  }

  Rng rngFor(const std::string& check, const std::string& fixture) const {
    return Rng(subSeed(seed, check + "/" + fixture));
  }

  void add(const std::string& check, const std::string& fixture, CheckStatus status,
           double worst, const std::string& details) {
    entries.push_back({check, fixture, status, worst, tol(check), details});
  }
};

// Runs body for one fixture, converting thrown errors into an error entry.
template <class Body>
void guarded(Ctx& ctx, const std::string& check, const std::string& fixture, Body&& body) {
  try {
    body();
  } catch (const Error& e) {
    ctx.add(check, fixture, CheckStatus::Error, 0.0, e.what());
  } catch (const std::exception& e) {
    ctx.add(check, fixture, CheckStatus::Error, 0.0, std::string("unexpected: ") + e.what());
  }
}

const CubicSpec* asCubic(const FixtureInfo& f) {
  if (!f.effective) return nullptr;
  return std::get_if<CubicSpec>(&*f.effective);
}

// --- positivity-24-27: sign agreement of the two positivity criteria plus the
// exact polynomial identity connecting them.
void runPositivity(Ctx& ctx) {
  const std::string check = "positivity-24-27";
  guarded(ctx, check, "-", [&] {
    Rng rng = ctx.rngFor(check, "-");
    const int tuples = std::max(1000, ctx.samples * 8);
    int tested = 0, disagreements = 0;
    double worstIdentity = 0;
    while (tested < tuples) {
      double B = rng.uniform(0.05, 2.0);
      double s = rng.uniform(-1.0, 1.0) * std::sqrt(B);
      double p = rng.uniform(0.2, 3.0);
      double q = rng.uniform(-1.0, 1.0);
      double u = p * s + q * s * s * s;
      if (u < 1e-4) continue;  // metric domain: positive radicand
      double phi = std::cbrt(u);
      double up = p + 3 * q * s * s;
      double upp = 6 * q * s;
      double phiP = up / (3 * phi * phi);
      double phiPP = (upp - 6 * phi * phiP * phiP) / (3 * phi * phi);
      Positivity24 p24 = positivity24(phi, phiP, phiPP, B, s);
      Positivity27 p27 = cubicPositivity27(p, q, B, s);
      worstIdentity = std::max(worstIdentity, p27.identityResidual);
      if (std::abs(p27.value) < 1e-10) continue;  // boundary: sign ill-conditioned
      ++tested;
      if (p24.positive != p27.positive) ++disagreements;
    }
    bool symbolic = verifyCubicPositivityIdentity();
    double worst = std::max(worstIdentity, disagreements > 0 ? 1.0 : 0.0);
    if (!symbolic) worst = std::max(worst, 1.0);
    bool pass = disagreements == 0 && symbolic && worstIdentity < ctx.tol(check);
    ctx.add(check, "-", pass ? CheckStatus::Pass : CheckStatus::Fail, worst,
            std::to_string(tested) + " tuples, " + std::to_string(disagreements) +
                " sign disagreements, identity residual " + fmt(worstIdentity) +
                ", symbolic identity " + (symbolic ? "holds" : "FAILS"));
  });
}

// --- spray-cross-check: structured alpha-beta spray against the definition.
void runSprayCross(Ctx& ctx) {
  const std::string check = "spray-cross-check";
  bool any = false;
  for (const auto& f : ctx.fixtures) {
    const CubicSpec* C = asCubic(f);
    if (!C || C->p == 0) continue;
    any = true;
    guarded(ctx, check, f.name, [&] {
      Rng rng = ctx.rngFor(check, f.name);
      const int n = C->alpha.n;
      double worst = 0;
      for (int k = 0; k < ctx.samples; ++k) {
        std::vector<double> x = sampleX(rng, n, f.constantCoeff);
        double dev = sampleInCone(rng, n, [&](const std::vector<double>& y) {
          std::vector<double> ga = sprayAlphaBeta(*C, x, y);
          auto gd = sprayFromDefinition(*f.effective, x, y, 0);
          double d = 0;
          for (int i = 0; i < n; ++i) {
            double gi = gd[static_cast<size_t>(i)].value();
            d = std::max(d, std::abs(ga[static_cast<size_t>(i)] - gi) /
                                std::max(1.0, std::abs(gi)));
          }
          return d;
        });
        worst = std::max(worst, dev);
      }
      bool pass = worst < ctx.tol(check);
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail, worst,
              std::to_string(ctx.samples) + " samples, worst relative deviation " + fmt(worst));
    });
  }
  if (!any)
    ctx.add(check, "-", CheckStatus::Error, 0.0, "no cubic fixture with p != 0 in the config");
}

// --- minkowski-flatness: constant coefficients force vanishing curvature.
void runFlatness(Ctx& ctx) {
  const std::string check = "minkowski-flatness";
  bool any = false;
  for (const auto& f : ctx.fixtures) {
    if (!f.effective || !f.constantCoeff) continue;
    any = true;
    guarded(ctx, check, f.name, [&] {
      Rng rng = ctx.rngFor(check, f.name);
      const int n = dimension(*f.effective);
      std::vector<double> x(static_cast<size_t>(n), 0.0);
      double worst = 0;
      for (int k = 0; k < ctx.samples; ++k) {
        double dev = sampleInCone(rng, n, [&](const std::vector<double>& y) {
          auto bundle = curvatureBundle(*f.effective, x, y);
          double d = std::abs(bundle.Ric);
          d = std::max(d, std::abs(bundle.scalarR));
          for (const auto& row : bundle.R)
            for (double v : row) d = std::max(d, std::abs(v));
          return d;
        });
        worst = std::max(worst, dev);
      }
      bool pass = worst < ctx.tol(check);
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail, worst,
              std::to_string(ctx.samples) + " samples, worst |R|, |Ric|, |r| = " + fmt(worst));
    });
  }
  if (!any)
    ctx.add(check, "-", CheckStatus::Error, 0.0, "no constant-coefficient fixture in the config");
}

// --- conformal-identities-33: the eight displayed transformation laws.
void runConformalIdentities(Ctx& ctx) {
  const std::string check = "conformal-identities-33";
  bool any = false;
  for (const auto& f : ctx.fixtures) {
    if (!f.conformal) continue;
    any = true;
    guarded(ctx, check, f.name, [&] {
      Rng rng = ctx.rngFor(check, f.name);
      const int n = dimension(f.conformal->base);
      double worst = 0;
      std::string worstLine;
      for (int k = 0; k < ctx.samples; ++k) {
        std::vector<double> x = sampleX(rng, n, false);
        auto rep = sampleInCone(rng, n, [&](const std::vector<double>& y) {
          return verifyConformalIdentities(*f.conformal, x, y);
        });
        for (const auto& line : rep.lines) {
          double rel = line.maxAbsDeviation / line.scale;
          if (rel > worst) {
            worst = rel;
            worstLine = line.name;
          }
        }
      }
      bool pass = worst < ctx.tol(check);
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail, worst,
              std::to_string(ctx.samples) + " draws, worst line \"" + worstLine +
                  "\" at relative deviation " + fmt(worst));
    });
  }
  if (!any) ctx.add(check, "-", CheckStatus::Error, 0.0, "no conformal fixture in the config");
}

// --- inverse-41: closed-form inverse times the fundamental tensor.
void runInverse41(Ctx& ctx) {
  const std::string check = "inverse-41";
  bool any = false;
  for (const auto& f : ctx.fixtures) {
    if (!f.effective) continue;
    any = true;
    guarded(ctx, check, f.name, [&] {
      Rng rng = ctx.rngFor(check, f.name);
      const int n = dimension(*f.effective);
      MRootSpec mr = asMRoot(*f.effective);
      double worst = 0;
      for (int k = 0; k < ctx.samples; ++k) {
        std::vector<double> x = sampleX(rng, n, f.constantCoeff);
        double dev = sampleInCone(rng, n, [&](const std::vector<double>& y) {
          Mat<double> gi = inverse41(mr, x, y);
          Mat<double> g = fundamentalTensor(*f.effective, x, y);
          Mat<double> prod = matMul(gi, g);
          double d = 0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              d = std::max(d, std::abs(prod[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                       (i == j ? 1.0 : 0.0)));
          return d;
        });
        worst = std::max(worst, dev);
      }
      bool pass = worst < ctx.tol(check);
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail, worst,
              std::to_string(ctx.samples) + " samples, worst |g^{-1}g - I| = " + fmt(worst));
    });
  }
  if (!any) ctx.add(check, "-", CheckStatus::Error, 0.0, "no metric fixture in the config");
}

// --- rationality-lemma-24: exact rational-function certificates for
// F^2 g^{ij}, Ric and F^2 r on fixtures with rational-constant coefficients.
void runRationality(Ctx& ctx) {
  const std::string check = "rationality-lemma-24";
  bool any = false;
  for (const auto& f : ctx.fixtures) {
    if (!f.effective || !f.exactConst) continue;
    any = true;
    guarded(ctx, check, f.name, [&] {
      const int n = dimension(*f.effective);
      const int m = f.m;
      DegreeBounds ginvBounds{m + (n - 1) * (m - 2), n * (m - 2)};
      const int budget = 40000;
      std::uint64_t s = subSeed(ctx.seed, check + "/" + f.name);
      bool pass = true;
      double worst = 0;
      int certs = 0;
      auto absorb = [&](const RationalityCertificate& cert) {
        ++certs;
        worst = std::max(worst, cert.holdoutResidual);
        if (!(cert.exactMode && cert.conclusive && cert.pass)) pass = false;
      };
      for (int i = 0; i < n && pass; ++i)
        for (int j = i; j < n && pass; ++j)
          absorb(certifyRational(*f.effective, CertTarget::F2Ginv, ginvBounds, budget,
                                 s + static_cast<std::uint64_t>(i * n + j), {}, i, j));
      if (pass) absorb(certifyRational(*f.effective, CertTarget::Ric, {4, 2}, budget, s, {}));
      if (pass) absorb(certifyRational(*f.effective, CertTarget::F2R, {4, 2}, budget, s, {}));
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail,
              pass ? worst : std::max(worst, 1.0),
              std::to_string(certs) + " exact certificates at degrees (" +
                  std::to_string(ginvBounds.num) + "," + std::to_string(ginvBounds.den) +
                  ") for F2ginv, holdout residual " + fmt(worst));
    });
  }
  if (!any)
    ctx.add(check, "-", CheckStatus::Error, 0.0, "no constant-coefficient fixture in the config");
}

// --- theorem1: scalar-curvature dichotomy on the conformally flat family.
void runTheorem1(Ctx& ctx) {
  const std::string check = "theorem1";
  bool any = false;
  for (const auto& f : ctx.fixtures) {
    if (!f.effective || f.m < 3 || !f.conformallyFlat) continue;
    any = true;
    guarded(ctx, check, f.name, [&] {
      Rng rng = ctx.rngFor(check, f.name);
      const int n = dimension(*f.effective);
      std::vector<double> x = sampleX(rng, n, f.constantCoeff);
      const int dirCount = n >= 4 ? n + 2 : n + 5;
      std::vector<std::vector<double>> dirs;
      for (int k = 0; k < dirCount; ++k)
        dirs.push_back(sampleInCone(rng, n, [&](const std::vector<double>& y) {
          (void)evalF(*f.effective, x, y, 0);
          return y;
        }));
      Theorem1Report rep = theorem1Check(*f.effective, x, dirs, 1e-7);
      bool pass = rep.consistent;
      double worst = 0;
      if (f.constantCoeff) {
        worst = rep.maxAbsR;
        if (rep.maxAbsR >= ctx.tol(check)) pass = false;
      }
      if (!rep.consistent) worst = std::max(worst, 1.0);
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail, worst,
              "verdict " + theorem1VerdictName(rep.verdict) + ", max |r| = " + fmt(rep.maxAbsR) +
                  ", isotropy-fit residual " + fmt(rep.fit.residual));
    });
  }
  if (!any)
    ctx.add(check, "-", CheckStatus::Error, 0.0,
            "no conformally flat fixture of root order >= 3 in the config");
}

// --- proofchain-410-412: exact symbolic steps plus instance replications.
void runProofChain(Ctx& ctx) {
  const std::string check = "proofchain-410-412";
  guarded(ctx, check, "-", [&] {
    SymbolicStepReport s410 = verifyStep410Symbolic();
    SymbolicStepReport s412 = verifyStep412Symbolic();
    bool pass = s410.pass && s412.pass;
    ctx.add(check, "-", pass ? CheckStatus::Pass : CheckStatus::Fail, pass ? 0.0 : 1.0,
            std::string("symbolic contraction step ") + (s410.pass ? "holds" : "FAILS") +
                ", symbolic reduction step " + (s412.pass ? "holds" : "FAILS"));
  });
  for (const auto& f : ctx.fixtures) {
    if (!f.instance) continue;
    guarded(ctx, check, f.name, [&] {
      bool ok410 = verifyStep410Instance(*f.instance);
      Poly res412 = verifyStep412Instance(*f.instance);
      bool pass = ok410 && res412.isZero();
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail, pass ? 0.0 : 1.0,
              std::string("instance contraction ") + (ok410 ? "holds" : "FAILS") +
                  ", reduction residue " + (res412.isZero() ? "zero" : res412.repr()));
    });
  }
}

// --- case-analysis: the pinned verdict of each instance fixture.
void runCaseAnalysis(Ctx& ctx) {
  const std::string check = "case-analysis";
  bool any = false;
  for (const auto& f : ctx.fixtures) {
    if (!f.instance) continue;
    any = true;
    guarded(ctx, check, f.name, [&] {
      CaseReport rep = caseAnalysis(*f.instance);
      std::string got = caseOutcomeName(rep.outcome);
      bool pass = true;
      std::string details = "outcome " + got;
      if (f.raw->expect) {
        const auto& e = *f.raw->expect;
        if (got != e.outcome) pass = false;
        if (e.h) {
          if (!rep.h || *rep.h != *e.h) pass = false;
          details += ", h " + (rep.h ? toString(*rep.h) : std::string("-")) + " (expected " +
                     toString(*e.h) + ")";
        }
        if (!pass) details += ", expected outcome " + e.outcome;
      }
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail, pass ? 0.0 : 1.0,
              details);
    });
  }
  if (!any) ctx.add(check, "-", CheckStatus::Error, 0.0, "no instance fixture in the config");
}

// --- homothety: a conformal factor is a homothety exactly when its gradient
// vanishes; fixtures pin the expected answer.
void runHomothety(Ctx& ctx) {
  const std::string check = "homothety";
  bool any = false;
  for (const auto& f : ctx.fixtures) {
    if (!f.conformal) continue;
    any = true;
    guarded(ctx, check, f.name, [&] {
      Rng rng = ctx.rngFor(check, f.name);
      const int n = dimension(f.conformal->base);
      std::vector<std::vector<double>> probes;
      for (int k = 0; k < 8; ++k) probes.push_back(sampleX(rng, n, false, 0.7));
      HomothetyVerdict v = homothetyTest(f.conformal->kappa, probes);
      bool pass = true;
      std::string details = v.homothetic ? "homothetic" : "not homothetic";
      details += ", max gradient norm " + fmt(v.maxGradNorm);
      if (f.raw->homothetic) {
        pass = v.homothetic == *f.raw->homothetic;
        if (!pass) details += ", expected " + std::string(*f.raw->homothetic ? "homothetic"
                                                                             : "not homothetic");
      }
      double worst = (f.raw->homothetic && *f.raw->homothetic) ? v.maxGradNorm : 0.0;
      if (!pass) worst = std::max(worst, 1.0);
      ctx.add(check, f.name, pass ? CheckStatus::Pass : CheckStatus::Fail, worst, details);
    });
  }
  if (!any) ctx.add(check, "-", CheckStatus::Error, 0.0, "no conformal fixture in the config");
}

}  // namespace

std::string checkStatusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Error:
      return "error";
  }
  return "unknown";
}

const std::vector<std::string>& checkRegistry() {
  static const std::vector<std::string> names = {
      "positivity-24-27",  "spray-cross-check", "minkowski-flatness",
      "conformal-identities-33", "inverse-41",  "rationality-lemma-24",
      "theorem1",          "proofchain-410-412", "case-analysis",
      "homothety",
  };
  return names;
}

Report runSuite(const SuiteConfig& config) {
  if (config.samples < 8) fail(ErrorKind::Argument, "samples must be at least 8");
  const auto& registry = checkRegistry();
  std::vector<std::string> checks = config.checks.empty() ? registry : config.checks;
  for (const auto& c : checks)
    if (std::find(registry.begin(), registry.end(), c) == registry.end())
      fail(ErrorKind::Argument, "unknown check \"" + c + "\"");
  for (const auto& t : config.tolerances)
    if (std::find(registry.begin(), registry.end(), t.first) == registry.end())
      fail(ErrorKind::Argument, "tolerance for unknown check \"" + t.first + "\"");

  Ctx ctx;
  ctx.samples = config.samples;
  ctx.seed = config.seed;
  ctx.config = &config;
  for (const auto& path : config.metricFiles) ctx.loaded.push_back(loadFixture(path));
  for (const auto& lf : ctx.loaded) {
    FixtureInfo info;
    info.name = lf.name;
    info.raw = &lf;
    if (const auto* M = std::get_if<MetricSpec>(&lf.payload)) {
      info.effective = *M;
      info.constantCoeff = isConstantCoefficient(*M);
      info.exactConst = isExactConstantCoefficient(*M);
      info.conformallyFlat = info.constantCoeff;
    } else if (const auto* D = std::get_if<ConformalData>(&lf.payload)) {
      info.conformal = D;
      info.effective = makeConformal(*D);
      info.constantCoeff = isConstantCoefficient(*info.effective);
      info.exactConst = isExactConstantCoefficient(*info.effective);
      info.conformallyFlat = isConstantCoefficient(D->base);
    } else {
      info.instance = std::get_if<ProofInstance>(&lf.payload);
    }
    if (info.effective) info.m = asMRoot(*info.effective).m;
    ctx.fixtures.push_back(std::move(info));
  }

  for (const auto& c : checks) {
    if (c == "positivity-24-27") runPositivity(ctx);
    else if (c == "spray-cross-check") runSprayCross(ctx);
    else if (c == "minkowski-flatness") runFlatness(ctx);
    else if (c == "conformal-identities-33") runConformalIdentities(ctx);
    else if (c == "inverse-41") runInverse41(ctx);
    else if (c == "rationality-lemma-24") runRationality(ctx);
    else if (c == "theorem1") runTheorem1(ctx);
    else if (c == "proofchain-410-412") runProofChain(ctx);
    else if (c == "case-analysis") runCaseAnalysis(ctx);
    else if (c == "homothety") runHomothety(ctx);
  }

  std::sort(ctx.entries.begin(), ctx.entries.end(), [](const CheckResult& a, const CheckResult& b) {
    if (a.check != b.check) return a.check < b.check;
    return a.fixture < b.fixture;
  });

  Report report;
  report.entries = std::move(ctx.entries);
  report.seed = config.seed;
  report.version = kVersion;
  for (const auto& e : report.entries) {
    if (e.status == CheckStatus::Pass) ++report.passCount;
    else if (e.status == CheckStatus::Fail) ++report.failCount;
    else ++report.errorCount;
  }
  return report;
}

bool allPassed(const Report& report) {
  return report.failCount == 0 && report.errorCount == 0 && !report.entries.empty();
}

std::string reportJson(const Report& report) {
  nlohmann::ordered_json j;
  j["version"] = report.version;
  j["seed"] = report.seed;
  j["summary"] = {{"pass", report.passCount},
                  {"fail", report.failCount},
                  {"error", report.errorCount},
                  {"total", static_cast<int>(report.entries.size())}};
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json entry;
    entry["name"] = e.check;
    entry["fixture"] = e.fixture;
    entry["status"] = checkStatusName(e.status);
    entry["worst_residual"] = e.worstResidual;
    entry["tolerance"] = e.tolerance;
    entry["details"] = e.details;
    checks.push_back(std::move(entry));
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

std::string reportMarkdown(const Report& report) {
  std::string out;
  out += "# finslerlab check report\n\n";
  out += "version " + report.version + ", seed " + std::to_string(report.seed) + "\n\n";
  out += "| check | fixture | status | worst residual | tolerance | details |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& e : report.entries) {
    out += "| " + e.check + " | " + e.fixture + " | " + checkStatusName(e.status) + " | " +
           fmt(e.worstResidual) + " | " + fmt(e.tolerance) + " | " + e.details + " |\n";
  }
  out += "\n";
  out += std::to_string(report.passCount) + " pass, " + std::to_string(report.failCount) +
         " fail, " + std::to_string(report.errorCount) + " error\n";
  return out;
}

}  // namespace finsler
