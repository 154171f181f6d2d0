#include "finsler/rootscalar.hpp"

#include <cmath>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

// Dense polynomials over Q, lowest degree first, used only for the extended
// Euclid behind recip(). Degrees stay below m <= 8.
using QPoly = std::vector<Rational>;

int degreeOf(const QPoly& p) {
  for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d) {
    if (sgn(p[d]) != 0) return d;
  }
  return -1;
}

QPoly polySub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    Rational v(0);
    if (i < a.size()) v += a[i];
    if (i < b.size()) v -= b[i];
    out[i] = v;
  }
  return out;
}

QPoly polyMul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// a = q*b + r with deg r < deg b.
void polyDivMod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  int db = degreeOf(b);
  r = a;
  int dr = degreeOf(r);
  q.assign(dr >= db ? dr - db + 1 : 1, Rational(0));
  while (dr >= db) {
    Rational f = r[dr] / b[db];
    q[dr - db] = f;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * b[i];
    dr = degreeOf(r);
  }
}

}  // namespace

RootScalar::RootScalar(std::shared_ptr<const RootContext> ctx, std::vector<Rational> c)
    : ctx_(std::move(ctx)), c_(std::move(c)) {
  if (ctx_ && c_.size() != ctx_->m) fail(ErrorKind::Argument, "root scalar arity mismatch");
  if (!ctx_ && c_.size() != 1) fail(ErrorKind::Argument, "rational scalar wants one coefficient");
}

std::shared_ptr<const RootContext> RootScalar::makeContext(unsigned long m, const Rational& a0) {
  if (m < 1 || m > 8) fail(ErrorKind::Argument, "extension degree must be in [1, 8]");
  if (sgn(a0) <= 0) fail(ErrorKind::Argument, "radicand must be positive");
  for (unsigned long p = 2; p <= m; ++p) {
    if (m % p != 0) continue;
    bool prime = true;
    for (unsigned long d = 2; d * d <= p; ++d) {
      if (p % d == 0) { prime = false; break; }
    }
    if (prime && isPerfectPower(a0, p)) {
      fail(ErrorKind::Argument,
           "t^" + std::to_string(m) + " - " + toString(a0) +
               " is reducible over Q (radicand is a perfect " + std::to_string(p) + "-th power)");
    }
  }
  auto ctx = std::make_shared<RootContext>();
  ctx->m = m;
  ctx->a0 = a0;
  ctx->approxRoot = std::pow(toDouble(a0), 1.0 / static_cast<double>(m));
  return ctx;
}

RootScalar RootScalar::embed(std::shared_ptr<const RootContext> ctx, const Rational& q) {
  if (!ctx) return RootScalar(q);
  std::vector<Rational> c(ctx->m);
  c[0] = q;
  return RootScalar(std::move(ctx), std::move(c));
}

RootScalar RootScalar::root(std::shared_ptr<const RootContext> ctx) {
  if (!ctx) fail(ErrorKind::Argument, "root element needs a context");
  if (ctx->m == 1) return RootScalar(ctx, {ctx->a0});
  std::vector<Rational> c(ctx->m);
  c[1] = Rational(1);
  return RootScalar(std::move(ctx), std::move(c));
}

bool RootScalar::isZero() const {
  for (const auto& q : c_) {
    if (sgn(q) != 0) return false;
  }
  return true;
}

bool RootScalar::isRationalElement() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return false;
  }
  return true;
}

Rational RootScalar::toRational() const {
  if (!isRationalElement()) {
    fail(ErrorKind::Unsupported, "value " + repr() + " is not rational");
  }
  return c_[0];
}

double RootScalar::toDoubleApprox() const {
  double t = ctx_ ? ctx_->approxRoot : 0.0;
  double acc = 0.0, tp = 1.0;
  for (const auto& q : c_) {
    acc += toDouble(q) * tp;
    tp *= t;
  }
  return acc;
}

void RootScalar::promote(const std::shared_ptr<const RootContext>& ctx) {
  if (ctx_ || !ctx) return;
  Rational v = c_[0];
  c_.assign(ctx->m, Rational(0));
  c_[0] = v;
  ctx_ = ctx;
}

const RootScalar& RootScalar::unifyWith(const RootScalar& o) {
  if (ctx_ && o.ctx_ && ctx_ != o.ctx_) {
    fail(ErrorKind::Argument, "mixing scalars from different root contexts");
  }
  promote(o.ctx_);
  return o;
}

RootScalar RootScalar::operator-() const {
  RootScalar out = *this;
  for (auto& q : out.c_) q = -q;
  return out;
}

RootScalar& RootScalar::operator+=(const RootScalar& o) {
  if (!o.ctx_) {
    c_[0] += o.c_[0];
    return *this;
  }
  unifyWith(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

RootScalar& RootScalar::operator-=(const RootScalar& o) {
  if (!o.ctx_) {
    c_[0] -= o.c_[0];
    return *this;
  }
  unifyWith(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

RootScalar operator*(const RootScalar& a, const RootScalar& b) {
  // rational shortcut: scaling without promotion
  if (!a.ctx_ || !b.ctx_) {
    const RootScalar& full = a.ctx_ ? a : b;
    const RootScalar& rat = a.ctx_ ? b : a;
    RootScalar out = full;
    for (auto& q : out.c_) q *= rat.c_[0];
    return out;
  }
  if (a.ctx_ != b.ctx_) fail(ErrorKind::Argument, "mixing scalars from different root contexts");
  unsigned long m = a.ctx_->m;
  std::vector<Rational> out(m);
  for (unsigned long i = 0; i < m; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (unsigned long j = 0; j < m; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      Rational v = a.c_[i] * b.c_[j];
      unsigned long k = i + j;
      if (k >= m) {
        out[k - m] += v * a.ctx_->a0;  // t^m = a0
      } else {
        out[k] += v;
      }
    }
  }
  return RootScalar(a.ctx_, std::move(out));
}

RootScalar RootScalar::recip() const {
  if (isZero()) fail(ErrorKind::Domain, "recip at 0");
  if (!ctx_ || isRationalElement()) {
    Rational inv(c_[0].get_den(), c_[0].get_num());
    inv.canonicalize();
    RootScalar out = *this;
    out.c_.assign(c_.size(), Rational(0));
    out.c_[0] = inv;
    return out;
  }
  // extended Euclid: find u with u*elem = 1 mod (t^m - a0)
  QPoly modulus(ctx_->m + 1);
  modulus[0] = -ctx_->a0;
  modulus[ctx_->m] = Rational(1);
  QPoly r0 = modulus, r1(c_.begin(), c_.end());
  QPoly s0{Rational(0)}, s1{Rational(1)};  // bezout coefficients for elem
  while (degreeOf(r1) > 0) {
    QPoly q, r;
    polyDivMod(r0, r1, q, r);
    QPoly s = polySub(s0, polyMul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (degreeOf(r1) != 0) {
    fail(ErrorKind::Domain, "element not invertible: extension is not a field here");
  }
  Rational lead = r1[0];
  std::vector<Rational> inv(ctx_->m);
  for (std::size_t i = 0; i < s1.size() && i < inv.size(); ++i) inv[i] = s1[i] / lead;
  return RootScalar(ctx_, std::move(inv));
}

RootScalar RootScalar::powRational(Rational r) const {
  r.canonicalize();
  long num = r.get_num().get_si();
  unsigned long den = r.get_den().get_ui();
  if (den == 1) {
    RootScalar base = num < 0 ? recip() : *this;
    unsigned long e = num < 0 ? static_cast<unsigned long>(-num) : static_cast<unsigned long>(num);
    RootScalar acc = RootScalar::embed(ctx_, Rational(1));
    RootScalar p = base;
    while (e) {
      if (e & 1) acc = acc * p;
      e >>= 1;
      if (e) p = p * p;
    }
    return acc;
  }
  if (isRationalElement()) {
    // exact rational root when one exists
    const Rational& v = c_[0];
    bool negOddRoot = sgn(v) < 0 && den % 2 == 1;
    if ((sgn(v) > 0 && isPerfectPower(v, den)) || (negOddRoot && isPerfectPower(-v, den))) {
      Rational base = sgn(v) > 0 ? v : Rational(-v);
      Rational root(intRootFloor(base.get_num(), den), intRootFloor(base.get_den(), den));
      root.canonicalize();
      if (sgn(v) < 0) root = -root;
      return RootScalar::embed(ctx_, root).powRational(Rational(num));
    }
    if (ctx_ && v == ctx_->a0 && ctx_->m % den == 0) {
      // designated root: a0^(num/den) = t^(num * m/den)
      long e = num * static_cast<long>(ctx_->m / den);
      RootScalar t = RootScalar::root(ctx_);
      return t.powRational(Rational(e));
    }
  }
  fail(ErrorKind::Unsupported,
       "pow: " + repr() + "^(" + toString(r) + ") is not exactly representable here");
}

std::string RootScalar::repr() const {
  std::string out = toString(c_[0]);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    out += " + " + toString(c_[i]) + "*t^" + std::to_string(i);
  }
  return out;
}

double scalarWeight(const RootScalar& v) {
  if (v.isZero()) return 0.0;
  double w = std::fabs(v.toDoubleApprox());
  return w > 1e-300 ? w : 1e-300;
}

int scalarSignApprox(const RootScalar& v) {
  if (v.isZero()) return 0;
  if (v.isRationalElement()) return sgn(v.rationalPart());
  double a = v.toDoubleApprox();
  return a > 0.0 ? 1 : (a < 0.0 ? -1 : 0);
}

RootScalar scalarExp(const RootScalar&) {
  fail(ErrorKind::Unsupported, "exp requires floating arithmetic");
}
RootScalar scalarSin(const RootScalar&) {
  fail(ErrorKind::Unsupported, "sin requires floating arithmetic");
}
RootScalar scalarCos(const RootScalar&) {
  fail(ErrorKind::Unsupported, "cos requires floating arithmetic");
}

}  // namespace finsler
