#include <doctest.h>

#include <cmath>
#include <vector>

#include <finsler/conformal.hpp>
#include <finsler/mroot.hpp>
#include <finsler/rng.hpp>

#include "builders.hpp"

using namespace finsler;
using namespace finsler::testing;

TEST_CASE("symmetric tensor contraction A_ij") {
  std::vector<Rational> xr(3, Rational(0));

  SUBCASE("m = 2 reduces to the coefficient matrix") {
    MRootSpec r2 = asMRoot(MetricSpec(deltaMetric(3)));
    CHECK(r2.m == 2);
    ATensor<Rational> at2 = aTensor(r2, xr, {Rational(1), Rational(2), Rational(-1)});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(at2.A[i][j] == (i == j ? 1 : 0));
  }

  SUBCASE("cubic fixture at y = (1,1,0), exact values") {
    MRootSpec mc = asMRoot(MetricSpec(minkCubic()));
    CHECK(mc.m == 3);
    ATensor<Rational> at3 = aTensor(mc, xr, {Rational(1), Rational(1), Rational(0)});
    CHECK(at3.A[0][0] == ratFromLong(3, 10));
    CHECK(at3.A[0][1] == ratFromLong(1, 10));
    CHECK(at3.A[1][1] == ratFromLong(1, 10));
    CHECK(at3.A[2][2] == ratFromLong(1, 10));
    CHECK(at3.A[1][2] == 0);
    Mat<Rational> prod = matMul(at3.A, at3.Ainv);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(prod[i][j] == (i == j ? 1 : 0));
  }

  SUBCASE("homogeneity A(x, t y) = t^{m-2} A(x, y)") {
    std::vector<double> xd(3, 0.0), yd{0.7, 0.3, -0.2};
    MRootSpec q4 = quarticSpec();
    ATensor<double> a1 = aTensor(q4, xd, yd);
    ATensor<double> a2 = aTensor(q4, xd, {1.4, 0.6, -0.4});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(a2.A[i][j] - 4.0 * a1.A[i][j]) < 1e-10);
  }

  SUBCASE("A equals the y-Hessian of F^m over m(m-1)") {
    std::vector<double> xd(3, 0.0), yd{0.7, 0.3, -0.2};
    MRootSpec q4 = quarticSpec();
    ATensor<double> a1 = aTensor(q4, xd, yd);
    auto fm = [&](std::vector<double> yy) { return mrootFormJet(q4, xd, yy, 0).value(); };
    const double h = 1e-4;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        std::vector<double> ypp = yd, ypm = yd, ymp = yd, ymm = yd;
        ypp[i] += h;
        ypp[j] += h;
        ypm[i] += h;
        ypm[j] -= h;
        ymp[i] -= h;
        ymp[j] += h;
        ymm[i] -= h;
        ymm[j] -= h;
        double hess = (fm(ypp) - fm(ypm) - fm(ymp) + fm(ymm)) / (4 * h * h);
        CHECK(std::abs(a1.A[i][j] - hess / 12.0) < 1e-5);  // 1/(m(m-1)) = 1/12
      }
  }

  SUBCASE("cone violation raises") {
    MRootSpec mc = asMRoot(MetricSpec(minkCubic()));
    std::vector<double> xd(3, 0.0), yOut{-1.0, 0.0, 0.0};
    CHECK(throwsKind(ErrorKind::Cone, [&] { (void)aTensor(mc, xd, yOut); }));
  }
}

TEST_CASE("closed-form inverse equals the generic inverse") {
  std::vector<double> xd(3, 0.0);
  MetricSpec mink(minkCubic());
  MRootSpec mc = asMRoot(mink);
  MetricSpec quart(quarticSpec());
  MRootSpec q4 = quarticSpec();

  SUBCASE("m = 2 gives exactly a^{ij}") {
    MRootSpec r2 = asMRoot(MetricSpec(deltaMetric(3)));
    Mat<double> g2 = inverse41(r2, xd, {0.4, -1.1, 0.3});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(g2[i][j] - (i == j ? 1.0 : 0.0)) < 1e-12);
  }

  SUBCASE("cubic and quartic on random cone directions") {
    Rng rng(17);
    int done = 0;
    double worstCubic = 0, worstQuartic = 0;
    while (done < 40) {
      std::vector<double> y{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                            rng.uniform(-1.5, 1.5)};
      try {
        Mat<double> viaA = inverse41(mc, xd, y);
        Mat<double> g = fundamentalTensor(mink, xd, y);
        Mat<double> ginv = matInverse(g);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            worstCubic = std::max(worstCubic, std::abs(viaA[i][j] - ginv[i][j]));
        Mat<double> prod = matMul(viaA, g);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            CHECK(std::abs(prod[i][j] - (i == j ? 1.0 : 0.0)) < 1e-9);

        Mat<double> viaA4 = inverse41(q4, xd, y);
        Mat<double> ginv4 = matInverse(fundamentalTensor(quart, xd, y));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            worstQuartic = std::max(worstQuartic, std::abs(viaA4[i][j] - ginv4[i][j]));
        ++done;
      } catch (const Error&) {
        continue;  // outside the cone
      }
    }
    CHECK(worstCubic < 1e-8);
    CHECK(worstQuartic < 1e-8);
  }

  SUBCASE("f2Ginv is F^2 g^{ij}") {
    std::vector<double> y{0.9, 0.2, -0.4};
    Mat<double> fg = f2Ginv(mc, xd, y);
    double F2 = evalF2Jet(mink, xd, y, 0).value();
    Mat<double> ginv = matInverse(fundamentalTensor(mink, xd, y));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(fg[i][j] - F2 * ginv[i][j]) < 1e-9);
  }
}

TEST_CASE("rationality certification in exact mode") {
  MetricSpec mink(minkCubic());

  RationalityCertificate cert = certifyRational(mink, CertTarget::F2Ginv, {9, 9}, 20000, 42, {}, 0, 1);
  CHECK(cert.exactMode);
  CHECK(cert.conclusive);
  CHECK(cert.pass);
  CHECK(cert.numDegree == 9);   // bounds clamp: d = min(den, num-2) = 7
  CHECK(cert.denDegree == 7);
  CHECK(cert.holdoutResidual == 0);

  RationalityCertificate tight = certifyRational(mink, CertTarget::F2Ginv, {5, 3}, 20000, 42, {}, 0, 0);
  CHECK(tight.exactMode);
  CHECK(tight.pass);

  // this fixture's F^2 g^{ij} reduces to degrees (4, 2) through a shared
  // linear factor, so (4, 2) still certifies
  RationalityCertificate reduced =
      certifyRational(mink, CertTarget::F2Ginv, {4, 2}, 20000, 42, {}, 0, 0);
  CHECK(reduced.pass);
  // entry (0,1) is an irreducible (4, 2) quotient: (3, 1) cannot represent it
  RationalityCertificate tooTight =
      certifyRational(mink, CertTarget::F2Ginv, {3, 1}, 20000, 42, {}, 0, 1);
  CHECK(!tooTight.pass);

  SUBCASE("flat fixtures have identically zero Ric and F^2 r") {
    RationalityCertificate ric = certifyRational(mink, CertTarget::Ric, {4, 4}, 20000, 42, {}, 0, 0);
    CHECK(ric.exactMode);
    CHECK(ric.pass);
    CHECK(ric.holdoutResidual == 0);
    RationalityCertificate f2r = certifyRational(mink, CertTarget::F2R, {4, 4}, 20000, 42, {}, 0, 0);
    CHECK(f2r.pass);
    RationalityCertificate q4r =
        certifyRational(MetricSpec(quarticSpec()), CertTarget::Ric, {4, 2}, 20000, 7, {}, 0, 0);
    CHECK(q4r.pass);
  }

  SUBCASE("budget exhaustion and absurd bounds raise") {
    CHECK(throwsKind(ErrorKind::Sampling, [&] {
      (void)certifyRational(mink, CertTarget::F2Ginv, {9, 9}, 10, 42, {}, 0, 0);
    }));
    CHECK(throwsKind(ErrorKind::Argument, [&] {
      (void)certifyRational(mink, CertTarget::F2Ginv, {1, 0}, 1000, 42, {}, 0, 0);
    }));
  }

  SUBCASE("escalation stops at the first passing square degree") {
    RationalityCertificate esc =
        certifyRationalEscalating(mink, CertTarget::F2Ginv, 20000, 42, {}, 1, 1);
    CHECK(esc.pass);
    CHECK(esc.numDegree == 9);
  }
}

TEST_CASE("rationality certification in floating mode") {
  // conformally scaled cubic at frozen x: coefficients are not rational
  ConformalData D;
  D.base = MetricSpec(minkCubic());
  D.kappa = Expr::parse("x1", 3);
  MetricSpec scaled = makeConformal(D);
  RationalityCertificate cert =
      certifyRationalEscalating(scaled, CertTarget::Ric, 40000, 99, {0.3, -0.1, 0.2}, 0, 0);
  CHECK(!cert.exactMode);
  CHECK(cert.pass);
}

TEST_CASE("scalar curvature verdicts") {
  MetricSpec mink(minkCubic());
  std::vector<double> x0{0.0, 0.0, 0.0};
  std::vector<std::vector<double>> dirs;
  Rng rng(23);
  while (dirs.size() < 9) {
    dirs.push_back({rng.uniform(0.2, 1.5), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
  }

  Theorem1Report repA = theorem1Check(mink, x0, dirs, 1e-7);
  CHECK(repA.verdict == Theorem1Verdict::VanishingR);
  CHECK(repA.consistent);
  CHECK(repA.maxAbsR < 1e-9);

  SUBCASE("constant conformal factor stays flat") {
    ConformalData Dc;
    Dc.base = mink;
    Dc.kappa = Expr::parse("1/2", 3);
    Theorem1Report repC = theorem1Check(makeConformal(Dc), x0, dirs, 1e-7);
    CHECK(repC.verdict == Theorem1Verdict::VanishingR);
    CHECK(repC.consistent);
  }

  SUBCASE("non-constant factor produces curvature that fails the hypothesis") {
    ConformalData Dx;
    Dx.base = mink;
    Dx.kappa = Expr::parse("x1", 3);
    Theorem1Report repB = theorem1Check(makeConformal(Dx), {0.3, -0.1, 0.2}, dirs, 1e-7);
    CHECK(repB.verdict == Theorem1Verdict::HypothesisFails);
    CHECK(repB.consistent);
  }

  SUBCASE("too few directions is a sampling error") {
    std::vector<std::vector<double>> few(dirs.begin(), dirs.begin() + 3);
    CHECK(throwsKind(ErrorKind::Sampling, [&] { (void)theorem1Check(mink, x0, few, 1e-7); }));
  }
}
