#include "orbmorse/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "orbmorse/group.hpp"

namespace orbmorse {
namespace detail {

enum class Func { Sin, Cos, Exp, Sqrt };

struct ExprNode {
  enum class Kind { Number, Pi, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  double number = 0.0;  // Number
  int var = 0;          // Var, 0-based
  int exponent = 0;     // Pow
  Func func = Func::Sin;
  std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;
using Kind = ExprNode::Kind;

// ---------------------------------------------------------------------------
// scalar types for the forward-mode sweeps

struct Dual1 {
  double v;
  Eigen::VectorXd g;
};

struct Dual2 {
  double v;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;
};

template <class T>
T make_const(double c, int n);
template <>
double make_const<double>(double c, int) {
  return c;
}
template <>
Dual1 make_const<Dual1>(double c, int n) {
  return {c, Eigen::VectorXd::Zero(n)};
}
template <>
Dual2 make_const<Dual2>(double c, int n) {
  return {c, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
}

template <class T>
T make_var(double x, int i, int n);
template <>
double make_var<double>(double x, int, int) {
  return x;
}
template <>
Dual1 make_var<Dual1>(double x, int i, int n) {
  Dual1 d{x, Eigen::VectorXd::Zero(n)};
  d.g[i] = 1.0;
  return d;
}
template <>
Dual2 make_var<Dual2>(double x, int i, int n) {
  Dual2 d{x, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
  d.g[i] = 1.0;
  return d;
}

inline Dual1 operator-(const Dual1& a) { return {-a.v, -a.g}; }
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.g, -a.h}; }

inline Dual1 operator+(const Dual1& a, const Dual1& b) { return {a.v + b.v, a.g + b.g}; }
inline Dual2 operator+(const Dual2& a, const Dual2& b) {
  return {a.v + b.v, a.g + b.g, a.h + b.h};
}
inline Dual1 operator-(const Dual1& a, const Dual1& b) { return {a.v - b.v, a.g - b.g}; }
inline Dual2 operator-(const Dual2& a, const Dual2& b) {
  return {a.v - b.v, a.g - b.g, a.h - b.h};
}

inline Dual1 operator*(const Dual1& a, const Dual1& b) {
  return {a.v * b.v, a.v * b.g + b.v * a.g};
}
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
  Eigen::MatrixXd cross = a.g * b.g.transpose();
  return {a.v * b.v, a.v * b.g + b.v * a.g,
          a.v * b.h + b.v * a.h + cross + cross.transpose()};
}

// u(f) with chain rule: d(u.f) = u' df, d2(u.f) = u' d2f + u'' df df^T.
inline Dual1 chain(const Dual1& f, double u, double du, double) { return {u, du * f.g}; }
inline Dual2 chain(const Dual2& f, double u, double du, double ddu) {
  return {u, du * f.g, du * f.h + ddu * (f.g * f.g.transpose())};
}

inline void require_nonzero(double v, const char* what) {
  if (v == 0.0) throw DomainError(what);
}

inline double fdiv(double a, double b) {
  require_nonzero(b, "division by zero");
  return a / b;
}
template <class D>
inline D fdiv(const D& a, const D& b) {
  require_nonzero(b.v, "division by zero");
  D r = chain(b, 1.0 / b.v, -1.0 / (b.v * b.v), 2.0 / (b.v * b.v * b.v));
  return a * r;
}

inline double fsin(double a) { return std::sin(a); }
inline double fcos(double a) { return std::cos(a); }
inline double fexp(double a) { return std::exp(a); }
inline double fsqrt(double a) {
  if (a < 0.0) throw DomainError("sqrt of negative value");
  return std::sqrt(a);
}
template <class D>
inline D fsin(const D& a) {
  return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}
template <class D>
inline D fcos(const D& a) {
  return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}
template <class D>
inline D fexp(const D& a) {
  double e = std::exp(a.v);
  return chain(a, e, e, e);
}
template <class D>
inline D fsqrt(const D& a) {
  if (a.v <= 0.0) throw DomainError("sqrt of non-positive value in derivative");
  double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline double fpow(double a, int k) {
  if (k < 0) require_nonzero(a, "zero raised to a negative power");
  return std::pow(a, k);
}
template <class D>
inline D fpow(const D& a, int k) {
  if (k == 0) return make_const<D>(1.0, static_cast<int>(a.g.size()));
  if (k < 0) require_nonzero(a.v, "zero raised to a negative power");
  double u = std::pow(a.v, k);
  double du = k * std::pow(a.v, k - 1);
  double ddu = (k == 1) ? 0.0 : static_cast<double>(k) * (k - 1) * std::pow(a.v, k - 2);
  return chain(a, u, du, ddu);
}

constexpr double kPi = 3.14159265358979323846;

template <class T>
T eval_node(const ExprNode& node, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  switch (node.kind) {
    case Kind::Number:
      return make_const<T>(node.number, n);
    case Kind::Pi:
      return make_const<T>(kPi, n);
    case Kind::Var:
      return make_var<T>(x[node.var], node.var, n);
    case Kind::Neg:
      return -eval_node<T>(*node.a, x);
    case Kind::Add:
      return eval_node<T>(*node.a, x) + eval_node<T>(*node.b, x);
    case Kind::Sub:
      return eval_node<T>(*node.a, x) - eval_node<T>(*node.b, x);
    case Kind::Mul:
      return eval_node<T>(*node.a, x) * eval_node<T>(*node.b, x);
    case Kind::Div:
      return fdiv(eval_node<T>(*node.a, x), eval_node<T>(*node.b, x));
    case Kind::Pow:
      return fpow(eval_node<T>(*node.a, x), node.exponent);
    case Kind::Call: {
      T a = eval_node<T>(*node.a, x);
      switch (node.func) {
        case Func::Sin:
          return fsin(a);
        case Func::Cos:
          return fcos(a);
        case Func::Exp:
          return fexp(a);
        case Func::Sqrt:
          return fsqrt(a);
      }
    }
  }
  throw DomainError("corrupt expression tree");
}

// ---------------------------------------------------------------------------
// tokenizer / parser

struct Token {
  enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type;
  std::size_t pos;
  double number = 0.0;
  std::string ident;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text.c_str() + i;
      char* end = nullptr;
      t.number = std::strtod(begin, &end);
      if (end == begin) throw SyntaxError("invalid number", i);
      t.type = Token::Type::Number;
      i += static_cast<std::size_t>(end - begin);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      t.type = Token::Type::Ident;
      t.ident = text.substr(i, j - i);
      i = j;
    } else {
      switch (c) {
        case '+': t.type = Token::Type::Plus; break;
        case '-': t.type = Token::Type::Minus; break;
        case '*': t.type = Token::Type::Star; break;
        case '/': t.type = Token::Type::Slash; break;
        case '^': t.type = Token::Type::Caret; break;
        case '(': t.type = Token::Type::LParen; break;
        case ')': t.type = Token::Type::RParen; break;
        default:
          throw SyntaxError(std::string("unexpected character '") + c + "'", i);
      }
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.type = Token::Type::End;
  end.pos = text.size();
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, int dim) : tokens_(std::move(tokens)), dim_(dim) {}

  NodePtr parse() {
    NodePtr e = parse_sum();
    if (peek().type != Token::Type::End) throw SyntaxError("trailing input", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Token::Type t) {
    if (peek().type == t) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Token::Type t, const char* what) {
    if (!accept(t)) throw SyntaxError(std::string("expected ") + what, peek().pos);
  }

  static NodePtr make(Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr parse_sum() {
    NodePtr e = parse_product();
    for (;;) {
      if (accept(Token::Type::Plus))
        e = make(Kind::Add, e, parse_product());
      else if (accept(Token::Type::Minus))
        e = make(Kind::Sub, e, parse_product());
      else
        return e;
    }
  }

  NodePtr parse_product() {
    NodePtr e = parse_unary();
    for (;;) {
      if (accept(Token::Type::Star))
        e = make(Kind::Mul, e, parse_unary());
      else if (accept(Token::Type::Slash))
        e = make(Kind::Div, e, parse_unary());
      else
        return e;
    }
  }

  NodePtr parse_unary() {
    if (accept(Token::Type::Minus)) return make(Kind::Neg, parse_unary());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr e = parse_atom();
    while (accept(Token::Type::Caret)) {
      auto n = std::make_shared<ExprNode>();
      n->kind = Kind::Pow;
      n->a = e;
      n->exponent = parse_integer_exponent();
      e = n;
    }
    return e;
  }

  int parse_integer_exponent() {
    bool paren = accept(Token::Type::LParen);
    int sign = accept(Token::Type::Minus) ? -1 : 1;
    const Token& t = peek();
    if (t.type != Token::Type::Number || t.number != std::floor(t.number))
      throw SyntaxError("exponent must be an integer literal", t.pos);
    advance();
    if (paren) expect(Token::Type::RParen, "')'");
    return sign * static_cast<int>(t.number);
  }

  NodePtr parse_atom() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Type::Number: {
        advance();
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::Number;
        n->number = t.number;
        return n;
      }
      case Token::Type::LParen: {
        advance();
        NodePtr e = parse_sum();
        expect(Token::Type::RParen, "')'");
        return e;
      }
      case Token::Type::Ident:
        advance();
        return parse_identifier(t);
      default:
        throw SyntaxError("expected a value", t.pos);
    }
  }

  NodePtr parse_identifier(const Token& t) {
    const std::string& name = t.ident;
    if (name == "pi") return make(Kind::Pi);
    if (name == "sin" || name == "cos" || name == "exp" || name == "sqrt") {
      expect(Token::Type::LParen, "'(' after function name");
      NodePtr arg = parse_sum();
      expect(Token::Type::RParen, "')'");
      auto n = make(Kind::Call, arg);
      auto* m = const_cast<ExprNode*>(n.get());
      m->func = name == "sin"   ? Func::Sin
                : name == "cos" ? Func::Cos
                : name == "exp" ? Func::Exp
                                : Func::Sqrt;
      return n;
    }
    if (name.size() >= 2 && name[0] == 'x') {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits) {
        int idx = std::atoi(name.c_str() + 1);
        if (idx < 1 || idx > dim_) throw VariableOutOfRange(idx, dim_, t.pos);
        auto n = make(Kind::Var);
        const_cast<ExprNode*>(n.get())->var = idx - 1;
        return n;
      }
    }
    throw UnknownIdentifier(name, t.pos);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int dim_;
};

// ---------------------------------------------------------------------------
// printer

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Sub:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Neg:
      return 3;
    case Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int min_prec, std::string& out) {
  bool paren = precedence(child) < min_prec;
  if (paren) out += '(';
  print_node(child, out);
  if (paren) out += ')';
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case Kind::Pi:
      out += "pi";
      return;
    case Kind::Var:
      out += "x" + std::to_string(n.var + 1);
      return;
    case Kind::Neg:
      out += '-';
      print_child(*n.a, precedence(n) + 1, out);
      return;
    case Kind::Add:
    case Kind::Sub:
      print_child(*n.a, 1, out);
      out += n.kind == Kind::Add ? " + " : " - ";
      print_child(*n.b, 2, out);
      return;
    case Kind::Mul:
    case Kind::Div:
      print_child(*n.a, 2, out);
      out += n.kind == Kind::Mul ? "*" : "/";
      print_child(*n.b, 3, out);
      return;
    case Kind::Pow:
      print_child(*n.a, 5, out);
      out += '^';
      if (n.exponent < 0)
        out += "(" + std::to_string(n.exponent) + ")";
      else
        out += std::to_string(n.exponent);
      return;
    case Kind::Call:
      switch (n.func) {
        case Func::Sin: out += "sin("; break;
        case Func::Cos: out += "cos("; break;
        case Func::Exp: out += "exp("; break;
        case Func::Sqrt: out += "sqrt("; break;
      }
      print_node(*n.a, out);
      out += ')';
      return;
  }
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Number:
      return a.number == b.number;
    case Kind::Pi:
      return true;
    case Kind::Var:
      return a.var == b.var;
    case Kind::Pow:
      return a.exponent == b.exponent && nodes_equal(*a.a, *b.a);
    case Kind::Call:
      return a.func == b.func && nodes_equal(*a.a, *b.a);
    case Kind::Neg:
      return nodes_equal(*a.a, *b.a);
    default:
      return nodes_equal(*a.a, *b.a) && nodes_equal(*a.b, *b.b);
  }
}

// Weyl sequence on [0,1)^n; deterministic and roughly equidistributed.
Eigen::VectorXd quasi_point(int k, int n) {
  static const double primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                  41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  Eigen::VectorXd x(n);
  for (int j = 0; j < n; ++j) {
    double alpha = std::sqrt(primes[j % 24]) + (j / 24);
    double v = 0.5 + (k + 1) * alpha;
    x[j] = v - std::floor(v);
  }
  return x;
}

}  // namespace
}  // namespace detail

using detail::ExprNode;

Expression Expression::parse(const std::string& text, int dim) {
  if (dim < 1) throw FileFormatError("chart dimension must be positive");
  detail::Parser parser(detail::tokenize(text), dim);
  return Expression(parser.parse(), dim);
}

std::string Expression::str() const {
  std::string out;
  detail::print_node(*root_, out);
  return out;
}

bool Expression::equal_ast(const Expression& other) const {
  return dim_ == other.dim_ && detail::nodes_equal(*root_, *other.root_);
}

double Expression::eval(const Eigen::VectorXd& x) const {
  return detail::eval_node<double>(*root_, x);
}

Eigen::VectorXd Expression::gradient(const Eigen::VectorXd& x) const {
  return detail::eval_node<detail::Dual1>(*root_, x).g;
}

Eigen::MatrixXd Expression::hessian(const Eigen::VectorXd& x) const {
  return detail::eval_node<detail::Dual2>(*root_, x).h;
}

void Expression::derivatives(const Eigen::VectorXd& x, double& value, Eigen::VectorXd& grad,
                             Eigen::MatrixXd& hess) const {
  detail::Dual2 d = detail::eval_node<detail::Dual2>(*root_, x);
  value = d.v;
  grad = std::move(d.g);
  hess = std::move(d.h);
}

namespace {

Eigen::VectorXd sample_point(int k, int n, bool lattice) {
  Eigen::VectorXd u = orbmorse::detail::quasi_point(k, n);
  if (lattice) return u;
  return 4.0 * u - Eigen::VectorXd::Constant(n, 2.0);
}

}  // namespace

InvarianceReport check_invariance(const Expression& f, const FiniteActionGroup& G, int samples,
                                  double tol) {
  InvarianceReport report;
  report.worst_point = Eigen::VectorXd::Zero(G.dim());
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd x = sample_point(k, G.dim(), G.lattice());
    double fx = f.eval(x);
    for (std::size_t gi = 0; gi < G.generator_indices().size(); ++gi) {
      const AffineIsometry& g = G.element(G.generator_indices()[gi]);
      double d = std::abs(f.eval(g.apply(x)) - fx);
      if (d > report.worst) {
        report.worst = d;
        report.worst_point = x;
        report.worst_generator = static_cast<int>(gi);
      }
    }
  }
  report.invariant = report.worst <= tol;
  return report;
}

InvarianceReport check_lattice_invariance(const Expression& f, int samples, double tol) {
  const int n = f.dim();
  InvarianceReport report;
  report.worst_point = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd x = sample_point(k, n, true);
    double fx = f.eval(x);
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd y = x;
      y[j] += 1.0;
      double d = std::abs(f.eval(y) - fx);
      if (d > report.worst) {
        report.worst = d;
        report.worst_point = x;
        report.worst_generator = j;
      }
    }
  }
  report.invariant = report.worst <= tol;
  return report;
}

}  // namespace orbmorse
