#pragma once

#include <cmath>
#include <string>

#include "finsler/errors.hpp"
#include "finsler/rational.hpp"

// Scalar field operations the jet/curvature layers are generic over.
// double gets the full set; exact types reject transcendentals and any root
// that would leave the field.

namespace finsler {

// ---- double ----

inline bool scalarIsZero(double v) { return v == 0.0; }
inline double scalarWeight(double v) { return std::fabs(v); }
inline std::string scalarRepr(double v) { return std::to_string(v); }

template <class T>
T scalarFromRational(const Rational& q);

template <>
inline double scalarFromRational<double>(const Rational& q) { return toDouble(q); }

inline double scalarRecip(double v) {
  if (v == 0.0) fail(ErrorKind::Domain, "recip at 0");
  return 1.0 / v;
}

inline double scalarExp(double v) { return std::exp(v); }
inline double scalarSin(double v) { return std::sin(v); }
inline double scalarCos(double v) { return std::cos(v); }

// v^(a/b) as a real number. Negative bases are accepted only for odd b
// (real root); v = 0 only for nonnegative integer exponents.
inline double scalarPowRational(double v, Rational r) {
  r.canonicalize();
  if (r.get_den() == 1) {
    long e = static_cast<long>(r.get_num().get_si());
    if (v == 0.0 && e < 0) fail(ErrorKind::Domain, "pow: 0 raised to negative exponent");
    return std::pow(v, static_cast<double>(e));
  }
  if (v == 0.0) fail(ErrorKind::Domain, "pow: fractional power at 0");
  bool denOdd = mpz_odd_p(r.get_den().get_mpz_t()) != 0;
  if (v < 0.0) {
    if (!denOdd) {
      fail(ErrorKind::Domain, "pow: negative base " + scalarRepr(v) +
                                  " with even root order " + r.get_den().get_str());
    }
    bool numOdd = mpz_odd_p(r.get_num().get_mpz_t()) != 0;
    double mag = std::pow(-v, toDouble(r));
    return numOdd ? -mag : mag;
  }
  return std::pow(v, toDouble(r));
}

// ---- exact rational ----

inline bool scalarIsZero(const Rational& v) { return sgn(v) == 0; }
inline double scalarWeight(const Rational& v) { return sgn(v) == 0 ? 0.0 : 1.0; }
inline std::string scalarRepr(const Rational& v) { return toString(v); }

template <>
inline Rational scalarFromRational<Rational>(const Rational& q) { return q; }

inline Rational scalarRecip(const Rational& v) {
  if (sgn(v) == 0) fail(ErrorKind::Domain, "recip at 0");
  Rational r(v.get_den(), v.get_num());
  r.canonicalize();
  return r;
}

inline Rational scalarExp(const Rational&) {
  fail(ErrorKind::Unsupported, "exp requires floating arithmetic");
}
inline Rational scalarSin(const Rational&) {
  fail(ErrorKind::Unsupported, "sin requires floating arithmetic");
}
inline Rational scalarCos(const Rational&) {
  fail(ErrorKind::Unsupported, "cos requires floating arithmetic");
}

inline Rational scalarPowRational(const Rational& v, Rational r) {
  r.canonicalize();
  if (r.get_den() == 1) return ratPow(v, r.get_num().get_si());
  if (sgn(v) == 0) fail(ErrorKind::Domain, "pow: fractional power at 0");
  unsigned long b = r.get_den().get_ui();
  Rational base = v;
  bool negate = false;
  if (sgn(v) < 0) {
    if (b % 2 == 0) fail(ErrorKind::Domain, "pow: negative base with even root order");
    base = -v;
    negate = mpz_odd_p(r.get_num().get_mpz_t()) != 0;
  }
  if (!isPerfectPower(base, b)) {
    fail(ErrorKind::Unsupported,
         "pow: " + toString(v) + "^(" + toString(r) + ") is irrational");
  }
  Rational root(intRootFloor(base.get_num(), b), intRootFloor(base.get_den(), b));
  root.canonicalize();
  Rational out = ratPow(root, r.get_num().get_si());
  return negate ? Rational(-out) : out;
}

// ---- shape-preserving constants ----
// Plain scalars carry no shape; jet overloads (in jet.hpp) clone order/vars.

template <class S>
S likeZero(const S&) {
  return scalarFromRational<S>(Rational(0));
}

template <class S>
S likeOne(const S&) {
  return scalarFromRational<S>(Rational(1));
}

// Approximate sign, used for cone checks where exact types fall back to a
// floating estimate of their value.
inline int scalarSignApprox(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }
inline int scalarSignApprox(const Rational& v) { return sgn(v); }

}  // namespace finsler
