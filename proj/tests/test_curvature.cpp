#include <doctest.h>

#include <cmath>
#include <vector>

#include <finsler/curvature.hpp>
#include <finsler/linalg.hpp>
#include <finsler/metric.hpp>

#include "builders.hpp"

using namespace finsler;
using namespace finsler::testing;

namespace {

double coeffAt(const RiemannSpec& A, int i, int j, std::vector<double> x) {
  return A.a[i][j].evalJet<double>(x, 0).value();
}

// Independent spray oracle for Riemannian metrics: G^i = 1/2 Gamma^i_jk y^j y^k
// with Gamma from central finite differences of the coefficient matrix.
std::vector<double> sprayOracleRiemann(const RiemannSpec& A, const std::vector<double>& x,
                                       const std::vector<double>& y) {
  const int n = A.n;
  const double h = 1e-6;
  auto dCoeff = [&](int i, int j, int k) {
    auto xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    return (coeffAt(A, i, j, xp) - coeffAt(A, i, j, xm)) / (2 * h);
  };
  Mat<double> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = coeffAt(A, i, j, x);
  Mat<double> ai = matInverse(a);

  std::vector<double> G(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double gamma = 0;
        for (int l = 0; l < n; ++l)
          gamma += 0.5 * ai[i][l] * (dCoeff(l, k, j) + dCoeff(j, l, k) - dCoeff(j, k, l));
        G[i] += 0.5 * gamma * y[j] * y[k];
      }
  return G;
}

}  // namespace

TEST_CASE("Riemannian spray matches the Christoffel oracle") {
  RiemannSpec A = diagSpec(3, {"1+1/5*x2^2", "1+1/10*x1^2", "1+1/10*x3^2"});
  MetricSpec M = A;
  std::vector<double> x{0.4, -0.3, 0.6}, y{1.0, 0.5, -0.8};
  auto G = sprayFromDefinition(M, x, y, 0);
  auto want = sprayOracleRiemann(A, x, y);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(G[i].value() - want[i]) < 1e-6 * std::max(1.0, std::abs(want[i])));
}

TEST_CASE("Minkowski cubic is curvature free") {
  CubicSpec cub;
  cub.alpha = deltaMetric(3);
  cub.beta = oneForm(3, {"1", "0", "0"});
  cub.p = 1;
  cub.q = 0;
  MetricSpec M = cub;
  std::vector<double> x{0.7, -0.3, 0.1}, y{1.0, 0.2, 0.4};
  CurvatureBundle<double> cb = curvatureBundle(M, x, y);
  double mx = 0;
  for (int i = 0; i < 3; ++i) {
    mx = std::max(mx, std::abs(cb.G[i]));
    for (int j = 0; j < 3; ++j)
      mx = std::max({mx, std::abs(cb.R[i][j]), std::abs(cb.RicTensor[i][j])});
  }
  mx = std::max({mx, std::abs(cb.Ric), std::abs(cb.scalarR)});
  CHECK(mx < 1e-12);
}

TEST_CASE("constant sectional curvature K = 1") {
  // w = (1 + |x|^2/4)^{-2}: Ric = (n-1) K alpha^2, r = n(n-1) K
  std::string w = "(1+1/4*(x1^2+x2^2+x3^2))^(-2)";
  MetricSpec M = diagSpec(3, {w, w, w});
  std::vector<double> x{0.2, -0.1, 0.3}, y{0.5, 1.0, -0.7};
  CurvatureBundle<double> cb = curvatureBundle(M, x, y);
  double w0 = std::pow(1 + 0.25 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]), -2);
  double alpha2 = w0 * (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
  CHECK(std::abs(cb.Ric - 2 * alpha2) < 1e-5 * std::max(1.0, std::abs(2 * alpha2)));
  CHECK(std::abs(cb.scalarR - 6.0) < 1e-5);

  // Ric_ij y^i y^j recovers Ric (2-homogeneity)
  double contr = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) contr += cb.RicTensor[i][j] * y[i] * y[j];
  CHECK(std::abs(contr - cb.Ric) < 1e-8 * std::max(1.0, std::abs(cb.Ric)));
}

TEST_CASE("covariant derivative split of b = (x2, 0, 0)") {
  RiemannSpec A = deltaMetric(3);
  OneFormSpec B = oneForm(3, {"x2", "0", "0"});
  std::vector<double> x{0.4, 0.8, -0.2}, y{1.0, 2.0, 3.0};
  CovDerivBundle<double> D = covDerivBundle(A, B, x, y);
  CHECK(std::abs(D.rij[0][1] - 0.5) < 1e-12);
  CHECK(std::abs(D.sij[0][1] - 0.5) < 1e-12);
  CHECK(std::abs(D.sij[1][0] + 0.5) < 1e-12);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(D.sij[i][j] + D.sij[j][i]) < 1e-15);
  CHECK(std::abs(D.r00 - y[0] * y[1]) < 1e-12);
}

TEST_CASE("cubic spray closed form vs definition") {
  CubicSpec curved;
  curved.alpha = diagSpec(3, {"1+1/10*x2^2", "1+1/10*x1^2", "1"});
  curved.beta = oneForm(3, {"1/2+1/20*x2", "1/20*x1", "0"});
  curved.p = 1;
  curved.q = 1;
  std::vector<double> x{0.3, -0.2, 0.5}, y{1.0, 0.4, -0.3};
  auto Gdef = sprayFromDefinition(MetricSpec(curved), x, y, 0);
  auto Gab = sprayAlphaBeta(curved, x, y);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(Gdef[i].value() - Gab[i]) <
          1e-7 * std::max({1.0, std::abs(Gdef[i].value()), std::abs(Gab[i])}));

  SUBCASE("parallel one-form on flat alpha gives zero spray") {
    CubicSpec cub;
    cub.alpha = deltaMetric(3);
    cub.beta = oneForm(3, {"1", "0", "0"});
    cub.p = 1;
    cub.q = 0;
    auto Gz = sprayAlphaBeta(cub, x, y);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(Gz[i]) < 1e-14);
  }

  SUBCASE("spray is 2-homogeneous in y") {
    auto G1 = sprayFromDefinition(MetricSpec(curved), x, y, 0);
    auto G2 = sprayFromDefinition(MetricSpec(curved), x, {2.0, 0.8, -0.6}, 0);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(G2[i].value() - 4 * G1[i].value()) <
            1e-10 * std::max(1.0, std::abs(G1[i].value())));
  }
}

TEST_CASE("weak isotropy fit recovers planted parameters") {
  std::vector<std::vector<double>> ys;
  std::vector<double> rv, fv;
  const int n = 3;
  const double thTrue[3] = {1, 0, 0};
  const double muTrue = 2;
  for (int k = 0; k < 12; ++k) {
    std::vector<double> y{std::cos(0.5 * k), std::sin(0.8 * k + 0.3), std::cos(1.1 * k + 1.0)};
    double F = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    double dot = thTrue[0] * y[0] + thTrue[1] * y[1] + thTrue[2] * y[2];
    ys.push_back(y);
    fv.push_back(F);
    rv.push_back(n * (n - 1) * (dot / F + muTrue));
  }
  IsotropyFit fit = fitWeaklyIsotropic(ys, rv, fv, n);
  CHECK(std::abs(fit.theta[0] - 1) < 1e-9);
  CHECK(std::abs(fit.theta[1]) < 1e-9);
  CHECK(std::abs(fit.isoMu - 2) < 1e-9);
  CHECK(fit.residual < 1e-10);

  SUBCASE("degenerate direction set is refused") {
    std::vector<std::vector<double>> ys2(8, std::vector<double>{1, 0, 0});
    std::vector<double> rv2(8, 0.0), fv2(8, 1.0);
    CHECK(throwsKind(ErrorKind::Sampling, [&] { (void)fitWeaklyIsotropic(ys2, rv2, fv2, n); }));
  }
}
