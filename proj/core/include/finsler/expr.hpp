#pragma once

#include <memory>
#include <string>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/jet.hpp"
#include "finsler/rational.hpp"

namespace finsler {

// Analytic coefficient expressions in the base variables x1..xn.
// ASTs are immutable and shared; evaluation produces jets over any scalar.

enum class ExprKind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Sqrt, Cbrt };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind;
  Rational value;  // Num payload; Pow exponent
  int var = 0;     // Var payload, 1-based
  ExprPtr a;
  ExprPtr b;
  int pos = -1;  // byte offset in source text, -1 for programmatic ASTs
};

// Node builders. Constant subtrees fold eagerly (same rules as the parser),
// so ASTs built here and ASTs re-parsed from print() agree structurally.
ExprPtr exprNum(const Rational& q);
ExprPtr exprVar(int index1Based);
ExprPtr exprNeg(const ExprPtr& a);
ExprPtr exprBinary(ExprKind kind, const ExprPtr& a, const ExprPtr& b);
ExprPtr exprPow(const ExprPtr& base, const Rational& exponent);
ExprPtr exprCall(ExprKind fn, const ExprPtr& a);

// Structural equality; source positions are ignored.
bool exprEqual(const ExprPtr& a, const ExprPtr& b);

class Expr {
 public:
  Expr() = default;

  // Grammar: ^ above unary minus above *,/ above +,-; ^ right-associative,
  // the other binaries left-associative; no implicit multiplication.
  static Expr parse(const std::string& text, int dimension);

  // Wrap a programmatic AST, checking every variable index against dimension.
  static Expr fromAst(ExprPtr root, int dimension);

  // Canonical text form; parse(print()) reproduces the AST structurally.
  std::string print() const;

  int dimension() const { return dim_; }
  const ExprPtr& ast() const { return root_; }

  // Jet of the expression at x, the x-block occupying variables 0..n-1 of a
  // jet space with `vars` variables (default 2n, leaving room for a y-block).
  template <class T>
  Jet<T> evalJet(const std::vector<T>& x, int order, int vars = -1) const;

 private:
  Expr(ExprPtr root, int dim) : root_(std::move(root)), dim_(dim) {}
  ExprPtr root_;
  int dim_ = 0;
};

namespace detail {

[[noreturn]] inline void rethrowAt(const Error& e, int pos) {
  if (pos >= 0)
    fail(e.kind(), std::string(e.what()) + " (at position " + std::to_string(pos) + ")");
  throw e;
}

template <class T>
Jet<T> evalNode(const ExprNode& nd, const std::vector<T>& x, int order, int vars) {
  switch (nd.kind) {
    case ExprKind::Num:
      return Jet<T>::constant(scalarFromRational<T>(nd.value), vars, order);
    case ExprKind::Var:
      return Jet<T>::coordinate(x[static_cast<size_t>(nd.var - 1)], nd.var - 1, vars, order);
    case ExprKind::Neg:
      return -evalNode(*nd.a, x, order, vars);
    case ExprKind::Add:
      return evalNode(*nd.a, x, order, vars) + evalNode(*nd.b, x, order, vars);
    case ExprKind::Sub:
      return evalNode(*nd.a, x, order, vars) - evalNode(*nd.b, x, order, vars);
    case ExprKind::Mul:
      return evalNode(*nd.a, x, order, vars) * evalNode(*nd.b, x, order, vars);
    case ExprKind::Div: {
      Jet<T> den = evalNode(*nd.b, x, order, vars);
      if (scalarIsZero(den.value())) {
        Error e(ErrorKind::Domain, "division by zero");
        rethrowAt(e, nd.pos);
      }
      return evalNode(*nd.a, x, order, vars) * applySmooth(SmoothFn::Recip, den);
    }
    case ExprKind::Pow: {
      Jet<T> base = evalNode(*nd.a, x, order, vars);
      try {
        return applyPow(base, nd.value);
      } catch (const Error& e) {
        rethrowAt(e, nd.pos);
      }
    }
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Exp:
    case ExprKind::Sqrt:
    case ExprKind::Cbrt: {
      Jet<T> arg = evalNode(*nd.a, x, order, vars);
      SmoothFn fn = SmoothFn::Exp;
      if (nd.kind == ExprKind::Sin) fn = SmoothFn::Sin;
      if (nd.kind == ExprKind::Cos) fn = SmoothFn::Cos;
      if (nd.kind == ExprKind::Sqrt) fn = SmoothFn::Sqrt;
      if (nd.kind == ExprKind::Cbrt) fn = SmoothFn::Cbrt;
      try {
        return applySmooth(fn, arg);
      } catch (const Error& e) {
        rethrowAt(e, nd.pos);
      }
    }
  }
  fail(ErrorKind::Argument, "corrupt expression node");
}

}  // namespace detail

template <class T>
Jet<T> Expr::evalJet(const std::vector<T>& x, int order, int vars) const {
  if (!root_) fail(ErrorKind::Argument, "empty expression");
  if (static_cast<int>(x.size()) != dim_)
    fail(ErrorKind::Argument, "point length " + std::to_string(x.size()) +
                                  " does not match dimension " + std::to_string(dim_));
  if (vars < 0) vars = 2 * dim_;
  if (vars < dim_) fail(ErrorKind::Argument, "jet variable count smaller than dimension");
  return detail::evalNode<T>(*root_, x, order, vars);
}

}  // namespace finsler
