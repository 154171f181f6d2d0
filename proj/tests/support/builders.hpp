// Shared fixture builders and helpers for the test suites.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include <finsler/errors.hpp>
#include <finsler/expr.hpp>
#include <finsler/metric.hpp>

namespace finsler::testing {

inline std::string fixturePath(const std::string& name) {
  return std::string(FINSLER_FIXTURE_DIR) + "/" + name;
}

inline bool throwsKind(ErrorKind k, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

inline Expr cnum(const Rational& q, int n) { return Expr::fromAst(exprNum(q), n); }

inline RiemannSpec deltaMetric(int n) {
  RiemannSpec R;
  R.n = n;
  R.a.assign(n, std::vector<Expr>(n, cnum(Rational(0), n)));
  for (int i = 0; i < n; ++i) R.a[i][i] = cnum(Rational(1), n);
  return R;
}

inline RiemannSpec diagSpec(int n, const std::vector<std::string>& d) {
  RiemannSpec A;
  A.n = n;
  for (int i = 0; i < n; ++i) {
    std::vector<Expr> row;
    for (int j = 0; j < n; ++j) row.push_back(Expr::parse(i == j ? d[i] : "0", n));
    A.a.push_back(row);
  }
  return A;
}

inline OneFormSpec oneForm(int n, const std::vector<std::string>& b) {
  OneFormSpec B;
  for (int i = 0; i < n; ++i) B.b.push_back(Expr::parse(b[i], n));
  return B;
}

// F^3 = (p beta alpha^2 + q beta^3) with alpha = delta, beta = (3/10) y^1
inline CubicSpec minkCubic() {
  CubicSpec C;
  C.alpha = deltaMetric(3);
  C.beta.b = {cnum(ratFromLong(3, 10), 3), cnum(Rational(0), 3), cnum(Rational(0), 3)};
  C.p = Rational(1);
  C.q = Rational(0);
  return C;
}

// F^4 = (y1^2+y2^2+y3^2)^2 + (1/10) y1^4
inline MRootSpec quarticSpec() {
  MRootSpec M;
  M.n = 3;
  M.m = 4;
  auto e = [&](const Rational& q) { return cnum(q, 3); };
  M.tensor[{1, 1, 1, 1}] = e(ratFromLong(11, 10));
  M.tensor[{2, 2, 2, 2}] = e(Rational(1));
  M.tensor[{3, 3, 3, 3}] = e(Rational(1));
  M.tensor[{1, 1, 2, 2}] = e(ratFromLong(1, 3));
  M.tensor[{1, 1, 3, 3}] = e(ratFromLong(1, 3));
  M.tensor[{2, 2, 3, 3}] = e(ratFromLong(1, 3));
  return M;
}

}  // namespace finsler::testing
