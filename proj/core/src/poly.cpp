#include "finsler/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace finsler {

bool GradedLexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly::Poly(std::vector<std::string> names) : names_(std::move(names)) {}

Poly Poly::constant(std::vector<std::string> names, const Rational& c) {
  Poly out(std::move(names));
  out.addTerm(std::vector<int>(out.names_.size(), 0), c);
  return out;
}

Poly Poly::variable(std::vector<std::string> names, int index) {
  Poly out(std::move(names));
  if (index < 0 || index >= out.vars())
    fail(ErrorKind::Argument, "polynomial variable index out of range");
  std::vector<int> e(out.names_.size(), 0);
  e[static_cast<size_t>(index)] = 1;
  out.addTerm(e, Rational(1));
  return out;
}

int Poly::totalDegree() const {
  if (terms_.empty()) return -1;
  // graded-lex: the last term has maximal total degree
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

int Poly::degreeIn(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
  return d;
}

Rational Poly::coefficient(const std::vector<int>& expo) const {
  auto it = terms_.find(expo);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::addTerm(const std::vector<int>& expo, const Rational& c) {
  if (static_cast<int>(expo.size()) != vars())
    fail(ErrorKind::Argument, "exponent vector length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(expo, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::requireSameRing(const Poly& o) const {
  if (names_ != o.names_)
    fail(ErrorKind::Argument, "polynomial operands live in different rings");
}

Poly Poly::operator-() const {
  Poly out(names_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  requireSameRing(o);
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.addTerm(e, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  requireSameRing(o);
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.addTerm(e, -c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  requireSameRing(o);
  Poly out(names_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.addTerm(e, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator*(const Rational& c) const {
  Poly out(names_);
  if (c == 0) return out;
  for (const auto& [e, cc] : terms_) out.terms_.emplace(e, cc * c);
  return out;
}

bool Poly::operator==(const Poly& o) const {
  return names_ == o.names_ && terms_ == o.terms_;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= vars()) fail(ErrorKind::Argument, "derivative variable out of range");
  Poly out(names_);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<size_t>(var)];
    if (k == 0) continue;
    std::vector<int> d = e;
    d[static_cast<size_t>(var)] = k - 1;
    out.addTerm(d, c * Rational(k));
  }
  return out;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != vars())
    fail(ErrorKind::Argument, "evaluation point length does not match variable count");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

Poly Poly::substitute(int var, const Rational& value) const {
  if (var < 0 || var >= vars()) fail(ErrorKind::Argument, "substitution variable out of range");
  Poly out(names_);
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    for (int k = 0; k < e[static_cast<size_t>(var)]; ++k) coeff *= value;
    std::vector<int> d = e;
    d[static_cast<size_t>(var)] = 0;
    out.addTerm(d, coeff);
  }
  return out;
}

std::string Poly::repr() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool hasVar = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
    bool printCoeff = !hasVar || mag != 1;
    if (printCoeff) os << mag.get_str();
    bool firstVar = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!firstVar || printCoeff) os << "*";
      os << names_[i];
      if (e[i] > 1) os << "^" << e[i];
      firstVar = false;
    }
  }
  return os.str();
}

}  // namespace finsler
