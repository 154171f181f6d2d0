#pragma once

#include <map>
#include <string>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/rational.hpp"

namespace finsler {

// Sparse multivariate polynomial over the rationals with named indeterminates.
// Terms are kept in graded-lex order and zero coefficients are never stored.

struct GradedLexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

class Poly {
 public:
  using TermMap = std::map<std::vector<int>, Rational, GradedLexLess>;

  Poly() = default;  // zero polynomial in zero variables; assign before use
  explicit Poly(std::vector<std::string> names);
  static Poly constant(std::vector<std::string> names, const Rational& c);
  static Poly variable(std::vector<std::string> names, int index);

  int vars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  int totalDegree() const;  // -1 for the zero polynomial
  int degreeIn(int var) const;
  Rational coefficient(const std::vector<int>& expo) const;

  void addTerm(const std::vector<int>& expo, const Rational& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative(int var) const;
  Rational eval(const std::vector<Rational>& point) const;
  Poly substitute(int var, const Rational& value) const;  // same arity, var eliminated

  std::string repr() const;  // human-readable, leading term first

 private:
  void requireSameRing(const Poly& o) const;
  std::vector<std::string> names_;
  TermMap terms_;
};

}  // namespace finsler
