#pragma once

#include <optional>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/multiindex.hpp"
#include "finsler/scalar_ops.hpp"

namespace finsler {

// Truncated multivariate Taylor expansion: dense coefficients c_alpha over all
// multi-indices |alpha| <= order, stored as Taylor coefficients (partial
// derivative / alpha!), graded-lex ranked. Ranks agree across orders for the
// same variable count, so truncation is a prefix copy.
template <class T>
class Jet {
 public:
  Jet(int vars, int order)
      : vars_(vars), order_(order),
        coeffs_(MultiIndexTable::get(vars, order).size()) {}

  static Jet constant(const T& value, int vars, int order) {
    Jet j(vars, order);
    j.coeffs_[0] = value;
    return j;
  }

  // The coordinate function x_varIndex (0-based) with the given value at the
  // expansion point.
  static Jet coordinate(const T& value, int varIndex, int vars, int order) {
    if (varIndex < 0 || varIndex >= vars) {
      fail(ErrorKind::Argument, "coordinate index out of range");
    }
    Jet j(vars, order);
    j.coeffs_[0] = value;
    if (order >= 1) j.coeffs_[1 + varIndex] = scalarFromRational<T>(Rational(1));
    return j;
  }

  int vars() const { return vars_; }
  int order() const { return order_; }
  const MultiIndexTable& table() const { return MultiIndexTable::get(vars_, order_); }

  const T& value() const { return coeffs_[0]; }
  const T& coeff(int rank) const { return coeffs_[rank]; }
  T& coeff(int rank) { return coeffs_[rank]; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  Jet truncated(int newOrder) const {
    if (newOrder > order_) fail(ErrorKind::Truncation, "cannot raise jet order");
    if (newOrder == order_) return *this;
    Jet out(vars_, newOrder);
    for (int r = 0; r < out.size(); ++r) out.coeffs_[r] = coeffs_[r];
    return out;
  }

  // d/dx_v, one order lower. Taylor coefficients shift:
  // (df)_beta = (beta_v + 1) f_{beta + e_v}.
  Jet derivative(int v) const {
    if (v < 0 || v >= vars_) fail(ErrorKind::Argument, "derivative variable out of range");
    if (order_ == 0) {
      fail(ErrorKind::Truncation, "derivative of an order-0 jet: no information left");
    }
    Jet out(vars_, order_ - 1);
    const auto& tout = out.table();
    const auto& tin = table();
    for (int r = 0; r < out.size(); ++r) {
      MultiIndex mi = tout.index(r);
      mi[v] += 1;
      int src = tin.rank(mi);
      out.coeffs_[r] = coeffs_[src] * scalarFromRational<T>(Rational(mi[v]));
    }
    return out;
  }

  // Exact partial derivative: alpha! * c_alpha. Errors when |alpha| exceeds
  // the order (that information was truncated away).
  T partial(const MultiIndex& mi) const {
    if (static_cast<int>(mi.size()) != vars_) fail(ErrorKind::Argument, "multi-index arity mismatch");
    long deg = 0;
    for (int e : mi) {
      if (e < 0) fail(ErrorKind::Argument, "negative exponent in multi-index");
      deg += e;
    }
    if (deg > order_) {
      fail(ErrorKind::Truncation, "partial of degree " + std::to_string(deg) +
                                      " requested from an order-" + std::to_string(order_) + " jet");
    }
    int r = table().rank(mi);
    Rational fact(1);
    for (int e : mi) {
      for (int k = 2; k <= e; ++k) fact *= k;
    }
    return coeffs_[r] * scalarFromRational<T>(fact);
  }

  Jet& operator+=(const Jet& o) {
    if (vars_ != o.vars_) fail(ErrorKind::Argument, "jet variable count mismatch");
    alignDown(o.order_);
    for (int r = 0; r < size(); ++r) coeffs_[r] += o.coeffs_[r];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    if (vars_ != o.vars_) fail(ErrorKind::Argument, "jet variable count mismatch");
    alignDown(o.order_);
    for (int r = 0; r < size(); ++r) coeffs_[r] -= o.coeffs_[r];
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& c : coeffs_) c = c * s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
  friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
  friend Jet operator*(Jet a, const T& s) { a *= s; return a; }
  friend Jet operator*(const T& s, Jet a) { a *= s; return a; }

  friend Jet operator-(const Jet& a) {
    Jet out(a.vars_, a.order_);
    for (int r = 0; r < a.size(); ++r) out.coeffs_[r] = -a.coeffs_[r];
    return out;
  }

  // Truncated product at order min(a, b). Zero coefficients are skipped, so
  // polynomial jets (few nonzero terms) multiply at their support size.
  friend Jet operator*(const Jet& a, const Jet& b) {
    if (a.vars_ != b.vars_) fail(ErrorKind::Argument, "jet variable count mismatch");
    int K = a.order_ < b.order_ ? a.order_ : b.order_;
    Jet out(a.vars_, K);
    const auto& t = out.table();
    int n = out.size();
    for (int i = 0; i < n; ++i) {
      if (scalarIsZero(a.coeffs_[i])) continue;
      const T& ai = a.coeffs_[i];
      int jmax = t.jLimit(i);
      for (int j = 0; j < jmax; ++j) {
        if (scalarIsZero(b.coeffs_[j])) continue;
        out.coeffs_[t.sumRank(i, j)] += ai * b.coeffs_[j];
      }
    }
    return out;
  }

  friend Jet operator+(Jet a, const T& s) { a.coeffs_[0] += s; return a; }
  friend Jet operator-(Jet a, const T& s) { a.coeffs_[0] -= s; return a; }

  bool isZero() const {
    for (const auto& c : coeffs_) {
      if (!scalarIsZero(c)) return false;
    }
    return true;
  }

 private:
  // Sums are taken at the lower of the two orders; ranks are prefix-stable so
  // reading the longer operand's prefix is sound.
  void alignDown(int otherOrder) {
    if (otherOrder < order_) {
      order_ = otherOrder;
      coeffs_.resize(MultiIndexTable::get(vars_, order_).size());
    }
  }

  int vars_, order_;
  std::vector<T> coeffs_;
};

enum class SmoothFn { Exp, Sin, Cos, Sqrt, Cbrt, Recip };

// Integer power by binary exponentiation; exact for every scalar, valid at 0.
template <class T>
Jet<T> jetIntPow(const Jet<T>& j, long e) {
  if (e < 0) fail(ErrorKind::Argument, "jetIntPow wants e >= 0");
  Jet<T> acc = Jet<T>::constant(scalarFromRational<T>(Rational(1)), j.vars(), j.order());
  Jet<T> p = j;
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) acc = acc * p;
    n >>= 1;
    if (n) p = p * p;
  }
  return acc;
}

// j^r via the Taylor series of u^r around the jet's value:
// c_k = C(r, k) u0^{r-k}, then a Horner pass in (j - u0). One fractional power
// of the value is taken; everything after is ring arithmetic, which is what
// lets exact scalar fields participate.
template <class T>
Jet<T> applyPow(const Jet<T>& j, Rational r) {
  r.canonicalize();  // callers may pass mpq_class(a,b) unreduced
  if (r.get_den() == 1) {
    long e = r.get_num().get_si();
    if (e >= 0) return jetIntPow(j, e);
    // fall through: negative powers need a nonzero value
  }
  const T& u0 = j.value();
  if (scalarIsZero(u0)) {
    fail(ErrorKind::Domain, "pow(" + toString(r) + ") at value 0: derivatives undefined");
  }
  int K = j.order();
  std::vector<T> c(K + 1);
  c[0] = scalarPowRational(u0, r);
  T invU0 = scalarRecip(u0);
  Rational coef(1);
  T acc = c[0];
  for (int k = 1; k <= K; ++k) {
    coef = coef * (r - Rational(k - 1)) / Rational(k);
    acc = acc * invU0;
    c[k] = acc * scalarFromRational<T>(coef);
  }
  Jet<T> delta = j;
  delta = delta - u0;
  Jet<T> res = Jet<T>::constant(c[K], j.vars(), j.order());
  for (int k = K - 1; k >= 0; --k) {
    res = res * delta;
    res = res + c[k];
  }
  return res;
}

template <class T>
Jet<T> applySmooth(SmoothFn fn, const Jet<T>& j) {
  switch (fn) {
    case SmoothFn::Sqrt:
      return applyPow(j, Rational(1, 2));
    case SmoothFn::Cbrt:
      return applyPow(j, Rational(1, 3));
    case SmoothFn::Recip:
      return applyPow(j, Rational(-1));
    default:
      break;
  }
  int K = j.order();
  const T& u0 = j.value();
  std::vector<T> c(K + 1);
  Rational fact(1);
  if (fn == SmoothFn::Exp) {
    T e = scalarExp(u0);
    for (int k = 0; k <= K; ++k) {
      if (k > 0) fact *= k;
      c[k] = e * scalarFromRational<T>(Rational(1) / fact);
    }
  } else {
    T s = scalarSin(u0), co = scalarCos(u0);
    // derivative cycle of sin: sin, cos, -sin, -cos; cos starts one step in
    int phase = fn == SmoothFn::Cos ? 1 : 0;
    for (int k = 0; k <= K; ++k) {
      if (k > 0) fact *= k;
      T d;
      switch ((k + phase) % 4) {
        case 0: d = s; break;
        case 1: d = co; break;
        case 2: d = -s; break;
        default: d = -co; break;
      }
      c[k] = d * scalarFromRational<T>(Rational(1) / fact);
    }
  }
  Jet<T> delta = j;
  delta = delta - u0;
  Jet<T> res = Jet<T>::constant(c[K], j.vars(), j.order());
  for (int k = K - 1; k >= 0; --k) {
    res = res * delta;
    res = res + c[k];
  }
  return res;
}

// Spec-shaped seeding front end: varIndex present builds the coordinate jet
// x_varIndex from the point values; absent builds the constant jet values[0].
template <class T>
Jet<T> seed(const std::vector<T>& values, std::optional<int> varIndex, int order, int vars) {
  if (varIndex) {
    if (static_cast<int>(values.size()) != vars) {
      fail(ErrorKind::Argument, "seed: point arity differs from variable count");
    }
    return Jet<T>::coordinate(values[*varIndex], *varIndex, vars, order);
  }
  if (values.size() != 1) fail(ErrorKind::Argument, "seed: constant jet takes one value");
  return Jet<T>::constant(values[0], vars, order);
}

template <class T>
Jet<T> likeZero(const Jet<T>& proto) {
  return Jet<T>::constant(likeZero(proto.value()), proto.vars(), proto.order());
}

template <class T>
Jet<T> likeOne(const Jet<T>& proto) {
  return Jet<T>::constant(likeOne(proto.value()), proto.vars(), proto.order());
}

}  // namespace finsler
