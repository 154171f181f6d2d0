#include "finsler/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace finsler {

namespace {

ExprPtr node(ExprKind k, Rational v, int var, ExprPtr a, ExprPtr b, int pos) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  v.canonicalize();  // callers may pass mpq_class(n,d), which is not reduced
  n->value = std::move(v);
  n->var = var;
  n->a = std::move(a);
  n->b = std::move(b);
  n->pos = pos;
  return n;
}

bool isNum(const ExprPtr& e) { return e && e->kind == ExprKind::Num; }

bool isIntegerExponent(const Rational& r) { return r.get_den() == 1; }

ExprPtr buildNeg(const ExprPtr& a, int pos) {
  if (isNum(a)) return node(ExprKind::Num, Rational(-a->value), 0, nullptr, nullptr, pos);
  return node(ExprKind::Neg, Rational(0), 0, a, nullptr, pos);
}

ExprPtr buildBinary(ExprKind k, const ExprPtr& a, const ExprPtr& b, int pos) {
  if (isNum(a) && isNum(b)) {
    switch (k) {
      case ExprKind::Add:
        return node(ExprKind::Num, Rational(a->value + b->value), 0, nullptr, nullptr, pos);
      case ExprKind::Sub:
        return node(ExprKind::Num, Rational(a->value - b->value), 0, nullptr, nullptr, pos);
      case ExprKind::Mul:
        return node(ExprKind::Num, Rational(a->value * b->value), 0, nullptr, nullptr, pos);
      case ExprKind::Div:
        // division by a zero literal stays a node; it is a runtime domain
        // error, matching division by an expression that vanishes at a point
        if (sgn(b->value) != 0)
          return node(ExprKind::Num, Rational(a->value / b->value), 0, nullptr, nullptr, pos);
        break;
      default:
        break;
    }
  }
  return node(k, Rational(0), 0, a, b, pos);
}

ExprPtr buildPow(const ExprPtr& base, Rational e, int pos) {
  e.canonicalize();
  if (isNum(base) && isIntegerExponent(e) && (sgn(base->value) != 0 || sgn(e) >= 0)) {
    long ei = static_cast<long>(e.get_num().get_si());
    return node(ExprKind::Num, ratPow(base->value, ei), 0, nullptr, nullptr, pos);
  }
  return node(ExprKind::Pow, e, 0, base, nullptr, pos);
}

// ---- lexer ----

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    int start = static_cast<int>(i_);
    if (i_ >= s_.size()) return {Tok::End, "", start};
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j < s_.size() && s_[j] == '.') {
        ++j;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      }
      if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
        size_t k = j + 1;
        if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
        if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
          while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
          j = k;
        }
      }
      Token t{Tok::Num, s_.substr(i_, j - i_), start};
      i_ = j;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j]))) ++j;
      Token t{Tok::Ident, s_.substr(i_, j - i_), start};
      i_ = j;
      return t;
    }
    ++i_;
    switch (c) {
      case '+':
        return {Tok::Plus, "+", start};
      case '-':
        return {Tok::Minus, "-", start};
      case '*':
        return {Tok::Star, "*", start};
      case '/':
        return {Tok::Slash, "/", start};
      case '^':
        return {Tok::Caret, "^", start};
      case '(':
        return {Tok::LParen, "(", start};
      case ')':
        return {Tok::RParen, ")", start};
      default:
        fail(ErrorKind::Syntax,
             std::string("unexpected character '") + c + "' at position " + std::to_string(start));
    }
  }

 private:
  const std::string& s_;
  size_t i_ = 0;
};

// ---- parser ----

class Parser {
 public:
  Parser(const std::string& text, int dim) : lex_(text), dim_(dim) { advance(); }

  ExprPtr parseAll() {
    ExprPtr e = parseSum();
    if (cur_.kind != Tok::End)
      fail(ErrorKind::Syntax,
           "unexpected token '" + cur_.text + "' at position " + std::to_string(cur_.pos));
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  bool accept(Tok k) {
    if (cur_.kind != k) return false;
    advance();
    return true;
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k)
      fail(ErrorKind::Syntax, std::string("expected ") + what + " at position " +
                                  std::to_string(cur_.pos) + (cur_.kind == Tok::End
                                                                  ? " (end of input)"
                                                                  : " near '" + cur_.text + "'"));
    advance();
  }

  ExprPtr parseSum() {
    ExprPtr e = parseTerm();
    for (;;) {
      int pos = cur_.pos;
      if (accept(Tok::Plus))
        e = buildBinary(ExprKind::Add, e, parseTerm(), pos);
      else if (accept(Tok::Minus))
        e = buildBinary(ExprKind::Sub, e, parseTerm(), pos);
      else
        return e;
    }
  }

  ExprPtr parseTerm() {
    ExprPtr e = parseFactor();
    for (;;) {
      int pos = cur_.pos;
      if (accept(Tok::Star))
        e = buildBinary(ExprKind::Mul, e, parseFactor(), pos);
      else if (accept(Tok::Slash))
        e = buildBinary(ExprKind::Div, e, parseFactor(), pos);
      else
        return e;
    }
  }

  ExprPtr parseFactor() {
    int pos = cur_.pos;
    if (accept(Tok::Minus)) return buildNeg(parseFactor(), pos);
    return parsePower();
  }

  ExprPtr parsePower() {
    ExprPtr base = parseAtom();
    int pos = cur_.pos;
    if (!accept(Tok::Caret)) return base;
    ExprPtr e = parseFactor();  // right-associative; allows a leading minus
    if (!isNum(e))
      fail(ErrorKind::Syntax,
           "exponent must be a rational constant at position " + std::to_string(pos));
    return buildPow(base, e->value, pos);
  }

  ExprPtr parseAtom() {
    int pos = cur_.pos;
    if (cur_.kind == Tok::Num) {
      auto parsed = parseRational(cur_.text);
      if (!parsed)
        fail(ErrorKind::Syntax, "bad numeric literal at position " + std::to_string(pos));
      advance();
      return node(ExprKind::Num, *parsed, 0, nullptr, nullptr, pos);
    }
    if (cur_.kind == Tok::Ident) {
      std::string id = cur_.text;
      advance();
      if (id.size() > 1 && id[0] == 'x' &&
          id.find_first_not_of("0123456789", 1) == std::string::npos) {
        long idx = 0;
        try {
          idx = std::stol(id.substr(1));
        } catch (const std::out_of_range&) {
          fail(ErrorKind::Syntax,
               "variable index exceeds dimension at position " + std::to_string(pos));
        }
        if (idx < 1)
          fail(ErrorKind::Syntax, "variable index must be at least 1 at position " +
                                      std::to_string(pos));
        if (idx > dim_)
          fail(ErrorKind::Syntax,
               "variable index exceeds dimension at position " + std::to_string(pos));
        return node(ExprKind::Var, Rational(0), static_cast<int>(idx), nullptr, nullptr, pos);
      }
      ExprKind fn;
      if (id == "sin")
        fn = ExprKind::Sin;
      else if (id == "cos")
        fn = ExprKind::Cos;
      else if (id == "exp")
        fn = ExprKind::Exp;
      else if (id == "sqrt")
        fn = ExprKind::Sqrt;
      else if (id == "cbrt")
        fn = ExprKind::Cbrt;
      else
        fail(ErrorKind::Syntax,
             "unknown identifier '" + id + "' at position " + std::to_string(pos));
      expect(Tok::LParen, "'('");
      ExprPtr arg = parseSum();
      expect(Tok::RParen, "')'");
      return node(fn, Rational(0), 0, arg, nullptr, pos);
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = parseSum();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail(ErrorKind::Syntax, cur_.kind == Tok::End
                                ? "unexpected end of input"
                                : "unexpected token '" + cur_.text + "' at position " +
                                      std::to_string(pos));
  }

  Lexer lex_;
  Token cur_{Tok::End, "", 0};
  int dim_;
};

// ---- printer ----

// precedence levels: 1 add/sub, 2 mul/div, 3 unary minus, 4 pow, 5 atom
int level(const ExprNode& n) {
  switch (n.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Neg:
      return 3;
    case ExprKind::Pow:
      return 4;
    case ExprKind::Num:
      // a literal re-parses as the expression it prints as: a fraction is a
      // division (its '/' can be captured by an enclosing term), a negative
      // integer a unary minus, so each gets that form's precedence
      if (n.value.get_den() != 1) return 2;
      if (sgn(n.value) < 0) return 3;
      return 5;
    default:
      return 5;
  }
}

void printNode(const ExprNode& n, std::ostream& os);

void printChild(const ExprNode& child, int parentLevel, bool needParenAtEqual, std::ostream& os) {
  int l = level(child);
  bool paren = l < parentLevel || (l == parentLevel && needParenAtEqual);
  if (paren) os << '(';
  printNode(child, os);
  if (paren) os << ')';
}

void printNode(const ExprNode& n, std::ostream& os) {
  switch (n.kind) {
    case ExprKind::Num:
      os << toString(n.value);
      return;
    case ExprKind::Var:
      os << 'x' << n.var;
      return;
    case ExprKind::Neg:
      os << '-';
      printChild(*n.a, 3, true, os);
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
      printChild(*n.a, 1, false, os);
      os << (n.kind == ExprKind::Add ? '+' : '-');
      printChild(*n.b, 1, true, os);
      return;
    case ExprKind::Mul:
    case ExprKind::Div:
      printChild(*n.a, 2, false, os);
      os << (n.kind == ExprKind::Mul ? '*' : '/');
      printChild(*n.b, 2, true, os);
      return;
    case ExprKind::Pow: {
      printChild(*n.a, 4, true, os);  // left side of right-assoc ^ needs parens at equal level
      os << '^';
      bool paren = sgn(n.value) < 0 || n.value.get_den() != 1;
      if (paren) os << '(';
      os << toString(n.value);
      if (paren) os << ')';
      return;
    }
    case ExprKind::Sin:
      os << "sin(";
      break;
    case ExprKind::Cos:
      os << "cos(";
      break;
    case ExprKind::Exp:
      os << "exp(";
      break;
    case ExprKind::Sqrt:
      os << "sqrt(";
      break;
    case ExprKind::Cbrt:
      os << "cbrt(";
      break;
  }
  printNode(*n.a, os);
  os << ')';
}

int maxVar(const ExprNode& n) {
  int m = n.kind == ExprKind::Var ? n.var : 0;
  if (n.a) m = std::max(m, maxVar(*n.a));
  if (n.b) m = std::max(m, maxVar(*n.b));
  return m;
}

}  // namespace

ExprPtr exprNum(const Rational& q) { return node(ExprKind::Num, q, 0, nullptr, nullptr, -1); }

ExprPtr exprVar(int index1Based) {
  if (index1Based < 1) fail(ErrorKind::Argument, "variable index must be at least 1");
  return node(ExprKind::Var, Rational(0), index1Based, nullptr, nullptr, -1);
}

ExprPtr exprNeg(const ExprPtr& a) { return buildNeg(a, -1); }

ExprPtr exprBinary(ExprKind kind, const ExprPtr& a, const ExprPtr& b) {
  if (kind != ExprKind::Add && kind != ExprKind::Sub && kind != ExprKind::Mul &&
      kind != ExprKind::Div)
    fail(ErrorKind::Argument, "exprBinary expects +, -, * or /");
  return buildBinary(kind, a, b, -1);
}

ExprPtr exprPow(const ExprPtr& base, const Rational& exponent) {
  return buildPow(base, exponent, -1);
}

ExprPtr exprCall(ExprKind fn, const ExprPtr& a) {
  if (fn != ExprKind::Sin && fn != ExprKind::Cos && fn != ExprKind::Exp &&
      fn != ExprKind::Sqrt && fn != ExprKind::Cbrt)
    fail(ErrorKind::Argument, "exprCall expects a function kind");
  return node(fn, Rational(0), 0, a, nullptr, -1);
}

bool exprEqual(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Num:
      return a->value == b->value;
    case ExprKind::Var:
      return a->var == b->var;
    case ExprKind::Pow:
      return a->value == b->value && exprEqual(a->a, b->a);
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div:
      return exprEqual(a->a, b->a) && exprEqual(a->b, b->b);
    default:
      return exprEqual(a->a, b->a);
  }
}

Expr Expr::parse(const std::string& text, int dimension) {
  if (dimension < 1) fail(ErrorKind::Argument, "dimension must be positive");
  bool blank = true;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  if (blank) fail(ErrorKind::Syntax, "empty input");
  Parser p(text, dimension);
  return Expr(p.parseAll(), dimension);
}

Expr Expr::fromAst(ExprPtr root, int dimension) {
  if (!root) fail(ErrorKind::Argument, "empty expression");
  if (dimension < 1) fail(ErrorKind::Argument, "dimension must be positive");
  if (maxVar(*root) > dimension)
    fail(ErrorKind::Argument, "variable index exceeds dimension");
  return Expr(std::move(root), dimension);
}

std::string Expr::print() const {
  if (!root_) return "";
  std::ostringstream os;
  printNode(*root_, os);
  return os.str();
}

}  // namespace finsler
