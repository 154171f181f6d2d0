#include <doctest.h>

#include <string>
#include <vector>

#include <finsler/poly.hpp>
#include <finsler/rng.hpp>

#include "builders.hpp"

using namespace finsler;
using finsler::testing::throwsKind;

TEST_CASE("polynomial ring basics") {
  std::vector<std::string> names{"x", "y"};
  Poly x = Poly::variable(names, 0);
  Poly y = Poly::variable(names, 1);
  Poly s = (x + y) * (x + y);
  CHECK(s.coefficient({2, 0}) == 1);
  CHECK(s.coefficient({1, 1}) == 2);
  CHECK(s.coefficient({0, 2}) == 1);
  CHECK(s.totalDegree() == 2);
  CHECK((s - x * x - x * y * Rational(2) - y * y).isZero());
  CHECK(s.derivative(0) == x * Rational(2) + y * Rational(2));
  CHECK(s.eval({Rational(2), Rational(3)}) == 25);
  CHECK(s.substitute(1, Rational(1)) ==
        x * x + x * Rational(2) + Poly::constant(names, Rational(1)));

  Poly z(names);
  CHECK(z.isZero());
  CHECK(z.totalDegree() == -1);
  CHECK(Poly::constant(names, Rational(0)).isZero());

  CHECK((x * x - y).repr() == "x^2 - y");
  CHECK((-(x * ratFromLong(3, 4))).repr() == "-3/4*x");
}

TEST_CASE("ring laws on random polynomials") {
  std::vector<std::string> names{"x", "y"};
  Rng rng(7);
  auto randPoly = [&](int terms) {
    Poly r(names);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e{static_cast<int>(rng.uniformInt(0, 3)),
                         static_cast<int>(rng.uniformInt(0, 3))};
      r.addTerm(e, ratFromLong(static_cast<long>(rng.uniformInt(1, 9)),
                               static_cast<long>(rng.uniformInt(1, 5))));
    }
    return r;
  };
  for (int it = 0; it < 25; ++it) {
    Poly a = randPoly(4), b = randPoly(4), c = randPoly(3);
    CHECK(((a + b) * c - (a * c + b * c)).isZero());
    if (!a.isZero() && !b.isZero())
      CHECK((a * b).totalDegree() == a.totalDegree() + b.totalDegree());
  }
}

TEST_CASE("different rings refuse to mix") {
  std::vector<std::string> names{"x", "y"}, other{"u", "v"};
  Poly x = Poly::variable(names, 0);
  CHECK(throwsKind(ErrorKind::Argument, [&] { (void)(x + Poly::variable(other, 0)); }));
}
