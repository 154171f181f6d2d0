#include <doctest.h>

#include <cmath>

#include <finsler/jet.hpp>
#include <finsler/multiindex.hpp>
#include <finsler/rational.hpp>
#include <finsler/rng.hpp>
#include <finsler/rootscalar.hpp>

#include "builders.hpp"

using namespace finsler;
using finsler::testing::throwsKind;

TEST_CASE("multiindex table enumerates by degree") {
  const auto& t = MultiIndexTable::get(3, 4);
  CHECK(t.size() > 0);
  CHECK(t.degree(0) == 0);
}

TEST_CASE("jet derivatives of polynomials") {
  // d/dx x^2 = 2x -> 6 at x = 3
  auto x = Jet<double>::coordinate(3.0, 0, 4, 1);
  auto x2 = x * x;
  CHECK(std::fabs(x2.derivative(0).value() - 6.0) < 1e-12);

  // rational jets stay exact: (x^3)' = 3x^2 -> 12 at x = 2
  auto xr = Jet<Rational>::coordinate(Rational(2), 0, 4, 1);
  auto p = jetIntPow(xr, 3);
  CHECK(p.value() == Rational(8));
  CHECK(p.derivative(0).value() == Rational(12));
}

TEST_CASE("smooth functions through jets match closed forms") {
  // y^{1/3} at y = 8: value 2, derivative 1/(3 y^{2/3}) = 1/12
  auto y = Jet<double>::coordinate(8.0, 0, 3, 1);
  auto c = applySmooth(SmoothFn::Cbrt, y);
  CHECK(std::fabs(c.value() - 2.0) < 1e-12);
  CHECK(std::fabs(c.derivative(0).value() - 1.0 / 12.0) < 1e-12);
}

TEST_CASE("jet derivatives agree with central differences") {
  // f(x) = sin(x)cos(x) + x^3 at several points, first and second derivative
  auto f = [](auto x) {
    return applySmooth(SmoothFn::Sin, x) * applySmooth(SmoothFn::Cos, x) + jetIntPow(x, 3);
  };
  auto fplain = [](double x) { return std::sin(x) * std::cos(x) + x * x * x; };
  const double h = 1e-5;
  for (double x0 : {-1.2, -0.3, 0.4, 1.7}) {
    auto j = f(Jet<double>::coordinate(x0, 0, 3, 1));
    double d1 = (fplain(x0 + h) - fplain(x0 - h)) / (2 * h);
    double d2 = (fplain(x0 + h) - 2 * fplain(x0) + fplain(x0 - h)) / (h * h);
    CHECK(std::fabs(j.derivative(0).value() - d1) < 1e-8);
    CHECK(std::fabs(j.derivative(0).derivative(0).value() - d2) < 1e-4);
  }
}

TEST_CASE("product rule holds in jet arithmetic") {
  // (fg)' = f'g + fg' verified coefficientwise on random 2-variable jets
  Rng rng(31);
  for (int it = 0; it < 20; ++it) {
    std::vector<double> pt{rng.uniform(-1, 1), rng.uniform(0.5, 1.5)};
    auto u = Jet<double>::coordinate(pt[0], 0, 3, 2);
    auto v = Jet<double>::coordinate(pt[1], 1, 3, 2);
    auto fj = applySmooth(SmoothFn::Exp, u * v) + jetIntPow(u, 2);
    auto gj = applySmooth(SmoothFn::Sin, u) - v;
    auto lhs = (fj * gj).derivative(0);
    auto rhs = fj.derivative(0) * gj + fj * gj.derivative(0);
    CHECK(std::fabs(lhs.value() - rhs.value()) < 1e-12);
    CHECK(std::fabs(lhs.derivative(1).value() - rhs.derivative(1).value()) < 1e-12);
  }
}

TEST_CASE("chain rule through composed smooth calls") {
  // exp(sin(x)) at x0: d/dx = cos(x) exp(sin(x))
  double x0 = 0.7;
  auto j = applySmooth(SmoothFn::Exp, applySmooth(SmoothFn::Sin, Jet<double>::coordinate(x0, 0, 2, 1)));
  double want = std::cos(x0) * std::exp(std::sin(x0));
  CHECK(std::fabs(j.derivative(0).value() - want) < 1e-12);
}

TEST_CASE("cube root field arithmetic is exact") {
  auto ctx = RootScalar::makeContext(3, Rational(2));
  auto r = RootScalar::root(ctx);
  auto r3 = r * r * r;
  CHECK(r3.isRationalElement());
  CHECK(r3.rationalPart() == Rational(2));

  auto inv = scalarRecip(r);
  auto one = inv * r;
  CHECK(one.isRationalElement());
  CHECK(one.rationalPart() == Rational(1));

  // 2^{2/3} cubed = 4
  auto two = RootScalar::embed(ctx, Rational(2));
  auto tw23 = two.powRational(Rational(2, 3));
  CHECK((tw23 * tw23 * tw23).rationalPart() == Rational(4));
}

TEST_CASE("reducible root contexts are rejected") {
  // t^2 - 4 factors over Q
  CHECK(throwsKind(ErrorKind::Argument, [] { (void)RootScalar::makeContext(2, Rational(4)); }));
}

TEST_CASE("jets over the root field compose") {
  auto ctx = RootScalar::makeContext(3, Rational(2));
  auto jr = Jet<RootScalar>::constant(RootScalar::root(ctx), 2, 2);
  CHECK(!(jr * jr).value().isRationalElement());
}

TEST_CASE("seeded rng streams are reproducible") {
  Rng a(7), b(7);
  for (int i = 0; i < 10; ++i) CHECK(a.nextU64() == b.nextU64());
}
