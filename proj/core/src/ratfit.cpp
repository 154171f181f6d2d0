#include "finsler/ratfit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

void enumerate(int n, int d, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == n - 1) {
    prefix.push_back(d);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = d; e >= 0; --e) {
    prefix.push_back(e);
    enumerate(n, d - e, prefix, out);
    prefix.pop_back();
  }
}

// Reduced row echelon form in place; returns the pivot column of each row in
// order (rows beyond the rank are zero).
std::vector<int> rref(std::vector<std::vector<Rational>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational factor = m[i][c];
      for (size_t k = c; k < cols; ++k) m[i][k] -= factor * m[r][k];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<int>> homogeneousExponents(int n, int d) {
  if (n < 1 || d < 0) fail(ErrorKind::Argument, "homogeneousExponents needs n >= 1, d >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  enumerate(n, d, prefix, out);
  return out;
}

ExactRatFit ratFitExact(int n, int numDeg, int denDeg,
                        const std::vector<std::vector<Rational>>& fitPts,
                        const std::vector<Rational>& fitVals,
                        const std::vector<std::vector<Rational>>& holdPts,
                        const std::vector<Rational>& holdVals) {
  if (fitPts.size() != fitVals.size() || holdPts.size() != holdVals.size())
    fail(ErrorKind::Argument, "sample point and value counts disagree");
  auto numExps = homogeneousExponents(n, numDeg);
  auto denExps = homogeneousExponents(n, denDeg);
  const size_t uN = numExps.size(), uD = denExps.size(), u = uN + uD;

  std::vector<std::vector<Rational>> m(fitPts.size(), std::vector<Rational>(u, Rational(0)));
  for (size_t k = 0; k < fitPts.size(); ++k) {
    for (size_t a = 0; a < uN; ++a) m[k][a] = monomialValue(fitPts[k], numExps[a]);
    for (size_t b = 0; b < uD; ++b)
      m[k][uN + b] = -fitVals[k] * monomialValue(fitPts[k], denExps[b]);
  }
  std::vector<int> pivots = rref(m);

  std::vector<bool> isPivot(u, false);
  for (int c : pivots) isPivot[static_cast<size_t>(c)] = true;
  std::vector<size_t> freeCols;
  // prefer denominator-block free columns: their basis vectors carry Q != 0
  for (size_t c = uN; c < u; ++c)
    if (!isPivot[c]) freeCols.push_back(c);
  for (size_t c = 0; c < uN; ++c)
    if (!isPivot[c]) freeCols.push_back(c);

  ExactRatFit best;
  for (size_t fc : freeCols) {
    std::vector<Rational> v(u, Rational(0));
    v[fc] = Rational(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = -m[r][fc];
    ExactRatFit cand;
    cand.num.assign(v.begin(), v.begin() + static_cast<long>(uN));
    cand.den.assign(v.begin() + static_cast<long>(uN), v.end());

    bool numIsZero = true;
    for (const Rational& c : cand.num)
      if (c != 0) { numIsZero = false; break; }

    Rational worst(0);
    bool allZero = true;
    size_t informative = 0;
    auto bump = [&](const Rational& res) {
      if (res != 0) {
        allZero = false;
        Rational mag = res < 0 ? Rational(-res) : res;
        if (mag > worst) worst = mag;
      }
    };
    if (numIsZero) {
      // the zero function: the denominator plays no role
      informative = holdPts.size();
      for (const Rational& t : holdVals) bump(t);
    } else {
      for (size_t k = 0; k < holdPts.size(); ++k) {
        Rational q = polyValue(cand.den, denExps, holdPts[k]);
        Rational p = polyValue(cand.num, numExps, holdPts[k]);
        if (q == 0) {
          if (p == 0) continue;  // 0/0: the point cannot adjudicate
          bump(p);               // pole against a finite target value
          ++informative;
          continue;
        }
        bump(p - holdVals[k] * q);
        ++informative;
      }
    }
    if (informative == 0) continue;
    cand.conclusive = true;
    cand.pass = allZero;
    cand.holdoutResidual = toDouble(worst);
    if (cand.pass) return cand;
    if (!best.conclusive || cand.holdoutResidual < best.holdoutResidual) best = cand;
  }
  return best;
}

ApproxRatFit ratFitApprox(int n, int numDeg, int denDeg,
                          const std::vector<std::vector<double>>& fitPts,
                          const std::vector<double>& fitVals,
                          const std::vector<std::vector<double>>& holdPts,
                          const std::vector<double>& holdVals, double tol) {
  if (fitPts.size() != fitVals.size() || holdPts.size() != holdVals.size())
    fail(ErrorKind::Argument, "sample point and value counts disagree");
  auto numExps = homogeneousExponents(n, numDeg);
  auto denExps = homogeneousExponents(n, denDeg);
  const size_t uN = numExps.size(), uD = denExps.size(), u = uN + uD;
  if (fitPts.size() < u)
    fail(ErrorKind::Argument, "need at least as many fit samples as unknown coefficients");

  Eigen::MatrixXd m(static_cast<long>(fitPts.size()), static_cast<long>(u));
  for (size_t k = 0; k < fitPts.size(); ++k) {
    for (size_t a = 0; a < uN; ++a)
      m(static_cast<long>(k), static_cast<long>(a)) = monomialValue(fitPts[k], numExps[a]);
    for (size_t b = 0; b < uD; ++b)
      m(static_cast<long>(k), static_cast<long>(uN + b)) =
          -fitVals[k] * monomialValue(fitPts[k], denExps[b]);
    double norm = m.row(static_cast<long>(k)).norm();
    if (norm > 0) m.row(static_cast<long>(k)) /= norm;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd v = svd.matrixV().col(static_cast<long>(u) - 1);

  ApproxRatFit out;
  out.fitResidual = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
  out.num.assign(v.data(), v.data() + uN);
  out.den.assign(v.data() + uN, v.data() + u);

  double denScale = 0;
  double worst = 0;
  for (size_t k = 0; k < holdPts.size(); ++k) {
    double q = polyValue(out.den, denExps, holdPts[k]);
    double p = polyValue(out.num, numExps, holdPts[k]);
    denScale = std::max(denScale, std::abs(q));
    double res = std::abs(p - holdVals[k] * q) /
                 std::max({1.0, std::abs(p), std::abs(holdVals[k] * q)});
    worst = std::max(worst, res);
  }
  // a numerically vanishing denominator certifies nothing
  out.conclusive = denScale > 1e-9;
  out.holdoutResidual = worst;
  out.pass = out.conclusive && worst < tol;
  return out;
}

}  // namespace finsler
