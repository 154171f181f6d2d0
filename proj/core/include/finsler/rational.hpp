#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace finsler {

// Exact arbitrary-precision rational, always kept in canonical form by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational ratFromLong(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "n", "n/d", decimal ("1.25") and scientific ("1e-3") forms; all are
// converted exactly. Returns nullopt on anything else.
std::optional<Rational> parseRational(const std::string& text);

std::string toString(const Rational& q);

// q^e for integer e; e < 0 requires q != 0.
Rational ratPow(const Rational& q, long e);

// Floor of the real k-th root of a nonnegative integer.
Integer intRootFloor(const Integer& v, unsigned long k);

// True iff q = s^k for some rational s (num and den both perfect k-th powers).
bool isPerfectPower(const Rational& q, unsigned long k);

inline double toDouble(const Rational& q) { return q.get_d(); }

}  // namespace finsler
