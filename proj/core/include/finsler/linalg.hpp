#pragma once

#include <vector>

#include "finsler/errors.hpp"
#include "finsler/jet.hpp"
#include "finsler/rational.hpp"
#include "finsler/scalar_ops.hpp"

namespace finsler {

// Dense matrices over arbitrary scalars (doubles, rationals, field extensions,
// jets). Dimensions here are tiny (n <= 4), so simplicity beats blocking.

template <class S>
using Mat = std::vector<std::vector<S>>;

template <class S>
Mat<S> matZero(int r, int c, const S& zero) {
  return Mat<S>(static_cast<size_t>(r), std::vector<S>(static_cast<size_t>(c), zero));
}

template <class S>
double pivotWeight(const S& v) {
  return scalarWeight(v);
}

template <class T>
double pivotWeight(const Jet<T>& j) {
  return scalarWeight(j.value());
}

template <class S>
S linRecip(const S& v) {
  return scalarRecip(v);
}

template <class T>
Jet<T> linRecip(const Jet<T>& j) {
  return applySmooth(SmoothFn::Recip, j);
}

// Gauss-Jordan with partial pivoting by pivotWeight. Works for any scalar with
// +, -, *, linRecip; exact scalars report singularity exactly.
template <class S>
Mat<S> matInverse(Mat<S> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) fail(ErrorKind::Argument, "cannot invert an empty matrix");
  for (auto& row : m)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::Argument, "matrix must be square");

  Mat<S> inv = m;  // shape and scalar metadata; entries overwritten below
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = i == j ? likeOne(m[i][j]) : likeZero(m[i][j]);

  for (int col = 0; col < n; ++col) {
    int best = col;
    double bw = pivotWeight(m[col][col]);
    for (int r = col + 1; r < n; ++r) {
      double w = pivotWeight(m[r][col]);
      if (w > bw) {
        bw = w;
        best = r;
      }
    }
    if (bw == 0.0) fail(ErrorKind::Definiteness, "matrix is singular");
    std::swap(m[col], m[best]);
    std::swap(inv[col], inv[best]);
    S piv = linRecip(m[col][col]);
    for (int j = 0; j < n; ++j) {
      m[col][j] = m[col][j] * piv;
      inv[col][j] = inv[col][j] * piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      S factor = m[r][col];
      if (pivotWeight(factor) == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        m[r][j] = m[r][j] - factor * m[col][j];
        inv[r][j] = inv[r][j] - factor * inv[col][j];
      }
    }
  }
  return inv;
}

template <class S>
Mat<S> matMul(const Mat<S>& a, const Mat<S>& b) {
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int mcols = static_cast<int>(b[0].size());
  Mat<S> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<S> row;
    row.reserve(static_cast<size_t>(mcols));
    for (int j = 0; j < mcols; ++j) {
      S acc = a[i][0] * b[0][j];
      for (int l = 1; l < k; ++l) acc = acc + a[i][l] * b[l][j];
      row.push_back(acc);
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Positive-definiteness for any ordered scalar: symmetric Gaussian
// elimination, all pivots strictly positive by scalarSignApprox.
template <class S>
bool isPDApprox(Mat<S> m) {
  const int n = static_cast<int>(m.size());
  for (int k = 0; k < n; ++k) {
    if (scalarSignApprox(m[k][k]) <= 0) return false;
    S inv = linRecip(m[k][k]);
    for (int i = k + 1; i < n; ++i) {
      S factor = m[i][k] * inv;
      for (int j = k; j < n; ++j) m[i][j] = m[i][j] - factor * m[k][j];
    }
  }
  return true;
}

// Exact positive-definiteness via leading principal minors (Sylvester).
bool isPDExact(const Mat<Rational>& a);

// Floating symmetric positive-definiteness: all pivots of the LDL^T
// factorization exceed pivotTol.
bool isSymmetricPD(const Mat<double>& a, double pivotTol);

// |lambda|_max / |lambda|_min of a symmetric matrix; infinity-like large
// value when the smallest eigenvalue vanishes.
double symmetricCondition(const Mat<double>& a);

// Inverse of a symmetric matrix with a condition bound; exceeding the bound
// raises a definiteness error carrying the estimate.
Mat<double> invertSymmetricChecked(const Mat<double>& a, double maxCondition);

}  // namespace finsler
