#include "willmore/dsl.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace willmore {

bool ExprNode::operator==(const ExprNode& o) const {
  return kind == o.kind && number == o.number && var == o.var && ipow == o.ipow && fn == o.fn &&
         args == o.args;
}

namespace {

const char* kFunctions[] = {"sin", "cos", "sinh", "cosh", "exp", "log", "sqrt", "atan"};

bool is_function(const std::string& s) {
  for (const char* f : kFunctions)
    if (s == f) return true;
  return false;
}

struct Parser {
  const std::string& src;
  std::size_t pos = 0;

  explicit Parser(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ConfigError("DSL syntax error at position " + std::to_string(at) + ": " + msg);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'", pos);
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  ExprNode parse_scalar() {
    ExprNode lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        ExprNode n;
        n.kind = ExprNode::Kind::Add;
        n.args = {std::move(lhs), parse_term()};
        lhs = std::move(n);
      } else if (accept('-')) {
        ExprNode n;
        n.kind = ExprNode::Kind::Sub;
        n.args = {std::move(lhs), parse_term()};
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  ExprNode parse_term() {
    ExprNode lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        ExprNode n;
        n.kind = ExprNode::Kind::Mul;
        n.args = {std::move(lhs), parse_factor()};
        lhs = std::move(n);
      } else if (accept('/')) {
        ExprNode n;
        n.kind = ExprNode::Kind::Div;
        n.args = {std::move(lhs), parse_factor()};
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  ExprNode parse_factor() {
    if (accept('-')) {
      ExprNode n;
      n.kind = ExprNode::Kind::Neg;
      n.args = {parse_factor()};
      return n;
    }
    return parse_power();
  }

  ExprNode parse_power() {
    ExprNode base = parse_atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos;
      bool neg = false;
      if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) {
        neg = src[pos] == '-';
        ++pos;
      }
      if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
        fail("expected integer exponent", at);
      int e = 0;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        e = e * 10 + (src[pos] - '0');
        ++pos;
      }
      ExprNode n;
      n.kind = ExprNode::Kind::Pow;
      n.ipow = neg ? -e : e;
      n.args = {std::move(base)};
      return n;
    }
    return base;
  }

  ExprNode parse_atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input", pos);
    const char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos;
      ExprNode inner = parse_scalar();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(std::string("unexpected character '") + c + "'", pos);
  }

  ExprNode parse_number() {
    const std::size_t at = pos;
    char* end = nullptr;
    const double v = std::strtod(src.c_str() + pos, &end);
    if (end == src.c_str() + pos) fail("malformed number", at);
    pos = static_cast<std::size_t>(end - src.c_str());
    ExprNode n;
    n.kind = ExprNode::Kind::Number;
    n.number = v;
    return n;
  }

  ExprNode parse_identifier() {
    const std::size_t at = pos;
    std::string id;
    while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      id += src[pos++];
    if (is_function(id)) {
      expect('(');
      ExprNode n;
      n.kind = ExprNode::Kind::Call;
      n.fn = id;
      n.args = {parse_scalar()};
      expect(')');
      return n;
    }
    if (id == "t" || id == "x") {
      ExprNode n;
      n.kind = ExprNode::Kind::Var;
      n.var = 0;
      return n;
    }
    if (id == "p" || id == "y") {
      ExprNode n;
      n.kind = ExprNode::Kind::Var;
      n.var = 1;
      return n;
    }
    throw ConfigError("DSL unbound variable '" + id + "' at position " + std::to_string(at));
  }
};

struct DslImmersion final : ImmersionFormula<DslImmersion> {
  ImmersionExpr ast;
  explicit DslImmersion(ImmersionExpr a) : ast(std::move(a)) {}
  template <class Real>
  Vec3J<Real> eval(Real u, Real v, int k) const {
    const Jet2<Real> t = Jet2<Real>::variable(u, 0, k);
    const Jet2<Real> p = Jet2<Real>::variable(v, 1, k);
    return {eval_expr(ast.comp[0], t, p), eval_expr(ast.comp[1], t, p),
            eval_expr(ast.comp[2], t, p)};
  }
};

}  // namespace

ImmersionExpr parse_immersion(const std::string& src) {
  Parser p(src);
  p.skip_ws();
  if (!p.accept('(')) throw ConfigError("DSL expression must be a 3-vector \"(s, s, s)\"");
  std::vector<ExprNode> comps;
  comps.push_back(p.parse_scalar());
  while (p.accept(',')) comps.push_back(p.parse_scalar());
  p.expect(')');
  if (!p.at_end()) p.fail("trailing input", p.pos);
  if (comps.size() != 3)
    throw ConfigError("DSL arity mismatch: immersion needs 3 components, got " +
                      std::to_string(comps.size()));
  ImmersionExpr e;
  e.comp = {std::move(comps[0]), std::move(comps[1]), std::move(comps[2])};
  return e;
}

std::string print_expr(const ExprNode& e) {
  std::ostringstream os;
  switch (e.kind) {
    case ExprNode::Kind::Number: {
      os.precision(17);
      os << e.number;
      break;
    }
    case ExprNode::Kind::Var:
      os << (e.var == 0 ? "t" : "p");
      break;
    case ExprNode::Kind::Neg:
      os << "(-" << print_expr(e.args[0]) << ")";
      break;
    case ExprNode::Kind::Add:
      os << "(" << print_expr(e.args[0]) << " + " << print_expr(e.args[1]) << ")";
      break;
    case ExprNode::Kind::Sub:
      os << "(" << print_expr(e.args[0]) << " - " << print_expr(e.args[1]) << ")";
      break;
    case ExprNode::Kind::Mul:
      os << "(" << print_expr(e.args[0]) << " * " << print_expr(e.args[1]) << ")";
      break;
    case ExprNode::Kind::Div:
      os << "(" << print_expr(e.args[0]) << " / " << print_expr(e.args[1]) << ")";
      break;
    case ExprNode::Kind::Pow:
      os << "(" << print_expr(e.args[0]) << ")^" << e.ipow;
      break;
    case ExprNode::Kind::Call:
      os << e.fn << "(" << print_expr(e.args[0]) << ")";
      break;
  }
  return os.str();
}

std::string print_immersion(const ImmersionExpr& e) {
  return "(" + print_expr(e.comp[0]) + ", " + print_expr(e.comp[1]) + ", " +
         print_expr(e.comp[2]) + ")";
}

template <class Real>
Jet2<Real> eval_expr(const ExprNode& e, const Jet2<Real>& t, const Jet2<Real>& p) {
  switch (e.kind) {
    case ExprNode::Kind::Number:
      return Jet2<Real>(t.order, Real(e.number));
    case ExprNode::Kind::Var:
      return e.var == 0 ? t : p;
    case ExprNode::Kind::Neg:
      return jet_neg(eval_expr(e.args[0], t, p));
    case ExprNode::Kind::Add:
      return eval_expr(e.args[0], t, p) + eval_expr(e.args[1], t, p);
    case ExprNode::Kind::Sub:
      return eval_expr(e.args[0], t, p) - eval_expr(e.args[1], t, p);
    case ExprNode::Kind::Mul:
      return eval_expr(e.args[0], t, p) * eval_expr(e.args[1], t, p);
    case ExprNode::Kind::Div:
      return eval_expr(e.args[0], t, p) * jet_recip(eval_expr(e.args[1], t, p));
    case ExprNode::Kind::Pow:
      return jet_ipow(eval_expr(e.args[0], t, p), e.ipow);
    case ExprNode::Kind::Call: {
      const Jet2<Real> a = eval_expr(e.args[0], t, p);
      if (e.fn == "sin") return jet_sin(a);
      if (e.fn == "cos") return jet_cos(a);
      if (e.fn == "sinh") return jet_sinh(a);
      if (e.fn == "cosh") return jet_cosh(a);
      if (e.fn == "exp") return jet_exp(a);
      if (e.fn == "log") return jet_log(a);
      if (e.fn == "sqrt") return jet_sqrt(a);
      if (e.fn == "atan") return jet_atan(a);
      throw ConfigError("DSL unknown function: " + e.fn);
    }
  }
  throw std::logic_error("unreachable");
}

template Jet2<double> eval_expr(const ExprNode&, const Jet2<double>&, const Jet2<double>&);
template Jet2<long double> eval_expr(const ExprNode&, const Jet2<long double>&,
                                     const Jet2<long double>&);

ImmersionChart chart_from_dsl(const std::string& src, const Domain2& domain,
                              const std::string& label) {
  ImmersionChart ch;
  ch.domain = domain;
  ch.f = std::make_shared<DslImmersion>(parse_immersion(src));
  ch.label = label;
  return ch;
}

}  // namespace willmore
