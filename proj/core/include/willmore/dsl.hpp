#pragma once

// Tiny expression DSL for user-defined immersions.
//
// Grammar (whitespace-insensitive):
//   expr   := vec3 | scalar
//   vec3   := "(" scalar "," scalar "," scalar ")"
//   scalar := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-"? power
//   power  := atom ("^" integer)?
//   atom   := number | var | fn "(" scalar ")" | "(" scalar ")"
//   var    := t | p | x | y        (x, y alias t, p)
//   fn     := sin cos sinh cosh exp log sqrt atan

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "willmore/surface.hpp"

namespace willmore {

struct ExprNode {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Number;
  double number = 0.0;
  int var = 0;      // 0 = t, 1 = p
  int ipow = 1;     // for Pow
  std::string fn;   // for Call
  std::vector<ExprNode> args;

  bool operator==(const ExprNode& o) const;
};

// A parsed 3-vector expression over (t, p).
struct ImmersionExpr {
  std::array<ExprNode, 3> comp;
  bool operator==(const ImmersionExpr& o) const { return comp == o.comp; }
};

// Parse errors carry the source position; unbound variables and arity
// mismatches are reported as such.
ImmersionExpr parse_immersion(const std::string& src);

std::string print_expr(const ExprNode& e);
std::string print_immersion(const ImmersionExpr& e);

template <class Real>
Jet2<Real> eval_expr(const ExprNode& e, const Jet2<Real>& t, const Jet2<Real>& p);

// Chart backed by a DSL expression; domain defaults to the rectangle
// [-1,1] x [-1,1] unless overridden by the caller.
ImmersionChart chart_from_dsl(const std::string& src,
                              const Domain2& domain = Domain2::rectangle(-1, 1, -1, 1),
                              const std::string& label = "dsl");

}  // namespace willmore
