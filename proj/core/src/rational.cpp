#include "finsler/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "finsler/errors.hpp"

namespace finsler {

std::optional<Rational> parseRational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  std::string intPart, fracPart, expPart;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) intPart += text[i++];
  if (i < text.size() && text[i] == '/') {
    // plain ratio n/d
    std::string den;
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) den += text[i++];
    if (intPart.empty() || den.empty() || i != text.size()) return std::nullopt;
    Integer n(intPart), d(den);
    if (d == 0) return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) fracPart += text[i++];
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) expPart += text[i++];
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) expPart += text[i++];
    if (expPart.empty() || expPart == "+" || expPart == "-") return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;
  if (intPart.empty() && fracPart.empty()) return std::nullopt;

  Integer num(intPart.empty() ? std::string("0") : intPart);
  Integer scale(1);
  for (char c : fracPart) {
    num = num * 10 + (c - '0');
    scale *= 10;
  }
  Rational q(num, scale);
  q.canonicalize();
  if (!expPart.empty()) {
    long e = std::strtol(expPart.c_str(), nullptr, 10);
    Rational ten(10);
    q *= ratPow(ten, e);
  }
  return neg ? Rational(-q) : q;
}

std::string toString(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational ratPow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0 && e < 0) fail(ErrorKind::Domain, "0 raised to a negative power");
  Rational base = e < 0 ? Rational(q.get_den(), q.get_num()) : q;
  if (e < 0) base.canonicalize();
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational acc(1), p = base;
  while (n) {
    if (n & 1) acc *= p;
    n >>= 1;
    if (n) p *= p;
  }
  return acc;
}

Integer intRootFloor(const Integer& v, unsigned long k) {
  Integer r;
  mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

namespace {

bool intIsKthPower(const Integer& v, unsigned long k) {
  Integer r = intRootFloor(v, k);
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), r.get_mpz_t(), k);
  return p == v;
}

}  // namespace

bool isPerfectPower(const Rational& q, unsigned long k) {
  if (q < 0) return false;
  return intIsKthPower(q.get_num(), k) && intIsKthPower(q.get_den(), k);
}

}  // namespace finsler
