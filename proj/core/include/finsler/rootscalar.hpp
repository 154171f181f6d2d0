#pragma once

#include <memory>
#include <string>
#include <vector>

#include "finsler/rational.hpp"
#include "finsler/scalar_ops.hpp"

namespace finsler {

// Field context Q[t]/(t^m - a0), t the real positive m-th root of a0 > 0.
// makeContext rejects radicands for which t^m - a0 is reducible over Q
// (a0 a perfect p-th power for a prime p | m), so the quotient is a field and
// exact zero tests are faithful to the real embedding.
struct RootContext {
  unsigned long m;
  Rational a0;
  double approxRoot;  // numeric t, for pivot weighting only
};

class RootScalar {
 public:
  RootScalar() : c_(1) {}
  explicit RootScalar(const Rational& q) : c_{q} {}
  RootScalar(std::shared_ptr<const RootContext> ctx, std::vector<Rational> c);

  static std::shared_ptr<const RootContext> makeContext(unsigned long m, const Rational& a0);
  static RootScalar embed(std::shared_ptr<const RootContext> ctx, const Rational& q);
  static RootScalar root(std::shared_ptr<const RootContext> ctx);  // the element t

  const std::shared_ptr<const RootContext>& context() const { return ctx_; }
  bool isZero() const;
  bool isRationalElement() const;       // t-components all zero
  const Rational& rationalPart() const { return c_[0]; }
  Rational toRational() const;          // errors unless isRationalElement()
  double toDoubleApprox() const;

  RootScalar operator-() const;
  RootScalar& operator+=(const RootScalar& o);
  RootScalar& operator-=(const RootScalar& o);
  friend RootScalar operator+(RootScalar a, const RootScalar& b) { a += b; return a; }
  friend RootScalar operator-(RootScalar a, const RootScalar& b) { a -= b; return a; }
  friend RootScalar operator*(const RootScalar& a, const RootScalar& b);

  RootScalar recip() const;
  // v^(num/den): exact when v is rational with a rational result, or when v is
  // the context radicand and den divides m (the designated-root case the
  // metric pipeline uses).
  RootScalar powRational(Rational r) const;

  std::string repr() const;

 private:
  const RootScalar& unifyWith(const RootScalar& o);
  void promote(const std::shared_ptr<const RootContext>& ctx);

  std::shared_ptr<const RootContext> ctx_;  // null: plain rational
  std::vector<Rational> c_;                 // length 1 (null ctx) or m
};

inline bool scalarIsZero(const RootScalar& v) { return v.isZero(); }
double scalarWeight(const RootScalar& v);
int scalarSignApprox(const RootScalar& v);
inline std::string scalarRepr(const RootScalar& v) { return v.repr(); }

template <>
inline RootScalar scalarFromRational<RootScalar>(const Rational& q) {
  return RootScalar(q);
}

inline RootScalar scalarRecip(const RootScalar& v) { return v.recip(); }
inline RootScalar scalarPowRational(const RootScalar& v, const Rational& r) {
  return v.powRational(r);
}

RootScalar scalarExp(const RootScalar&);
RootScalar scalarSin(const RootScalar&);
RootScalar scalarCos(const RootScalar&);

}  // namespace finsler
