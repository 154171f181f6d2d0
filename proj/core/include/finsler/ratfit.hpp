#pragma once

#include <vector>

#include "finsler/rational.hpp"
#include "finsler/scalar_ops.hpp"

namespace finsler {

// All exponent vectors of total degree d in n variables, deterministic
// (lexicographically descending in the first variable). C(d+n-1, n-1) rows.
std::vector<std::vector<int>> homogeneousExponents(int n, int d);

template <class T>
T monomialValue(const std::vector<T>& y, const std::vector<int>& e) {
  T acc = likeOne(y[0]);
  for (size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) acc = acc * y[i];
  return acc;
}

template <class T>
T polyValue(const std::vector<T>& coeffs, const std::vector<std::vector<int>>& exps,
            const std::vector<T>& y) {
  T acc = likeZero(y[0]);
  for (size_t a = 0; a < coeffs.size(); ++a) acc = acc + coeffs[a] * monomialValue(y, exps[a]);
  return acc;
}

// Finds homogeneous P (degree numDeg) and Q (degree denDeg) with
// P(y_k) = t_k Q(y_k) on the fit points, by exact nullspace computation, then
// validates P - tQ = 0 on the holdout points. A P == 0 candidate is the zero
// function and passes iff every holdout value is zero. Otherwise a holdout
// point with Q = 0 and P != 0 refutes the candidate (pole against a finite
// target), Q = 0 with P = 0 is uninformative and skipped, and conclusive
// requires at least one informative holdout point.
struct ExactRatFit {
  bool conclusive = false;
  bool pass = false;  // every holdout residue exactly zero
  std::vector<Rational> num, den;
  double holdoutResidual = 0;  // 0 on pass; worst |P - tQ| otherwise
};

ExactRatFit ratFitExact(int n, int numDeg, int denDeg,
                        const std::vector<std::vector<Rational>>& fitPts,
                        const std::vector<Rational>& fitVals,
                        const std::vector<std::vector<Rational>>& holdPts,
                        const std::vector<Rational>& holdVals);

// Same shape in floating arithmetic: the candidate is the smallest singular
// vector of the row-normalized design matrix; pass iff the worst relative
// holdout residue |P - tQ| / max(1, |P|, |tQ|) is below tol.
struct ApproxRatFit {
  bool conclusive = false;
  bool pass = false;
  std::vector<double> num, den;
  double fitResidual = 0;      // sigma_min / sigma_max of the design matrix
  double holdoutResidual = 0;  // worst relative residue
};

ApproxRatFit ratFitApprox(int n, int numDeg, int denDeg,
                          const std::vector<std::vector<double>>& fitPts,
                          const std::vector<double>& fitVals,
                          const std::vector<std::vector<double>>& holdPts,
                          const std::vector<double>& holdVals, double tol);

}  // namespace finsler
