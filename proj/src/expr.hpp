#pragma once

#include <memory>
#include <string>
#include <vector>

#include "jet.hpp"

namespace cgl {

// Raised on malformed expression or metric-file input; `offset` is the byte
// position in the source text where the problem was detected.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, size_t offset)
      : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

enum class Func { Exp, Log, Sin, Cos, Tan, Sqrt, Abs };

const char* func_name(Func f);

// Immutable expression tree over real literals, coordinate variables,
// named parameters, +, -, *, /, ^, unary minus and the elementary functions.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Literal, Var, Param, Add, Sub, Mul, Div, Pow, Neg, Call };

  Kind kind;
  double lit = 0.0;        // Literal
  int var = -1;            // Var: coordinate index
  std::string param;       // Param: name
  Func func = Func::Exp;   // Call
  ExprPtr a, b;            // children (Neg/Call use `a` only)
};

ExprPtr mk_lit(double v);
ExprPtr mk_var(int index);
ExprPtr mk_param(const std::string& name);
ExprPtr mk_add(ExprPtr a, ExprPtr b);
ExprPtr mk_sub(ExprPtr a, ExprPtr b);
ExprPtr mk_mul(ExprPtr a, ExprPtr b);
ExprPtr mk_div(ExprPtr a, ExprPtr b);
ExprPtr mk_pow(ExprPtr a, ExprPtr b);
ExprPtr mk_neg(ExprPtr a);
ExprPtr mk_call(Func f, ExprPtr a);

// Parses `src` into an expression tree.  Identifiers are resolved against
// `coords` (coordinate names, giving Var nodes) first and `params` second
// (giving Param nodes); anything else is an error.  Whitespace-insensitive.
// Precedence: ^  >  unary -  >  * /  >  + -, with ^ right-associative and the
// other binary operators left-associative.
ExprPtr parse_expr(const std::string& src, const std::vector<std::string>& coords,
                   const std::vector<std::string>& params);

// Minimal-parentheses rendering; parse(pretty_print(e)) reproduces e.
// Variables print with the supplied coordinate names (default x1, x2, ...).
std::string pretty_print(const ExprPtr& e);
std::string pretty_print_with_names(const ExprPtr& e, const std::vector<std::string>& coords);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Replaces every Param node by a literal looked up in `values`
// (name -> value); unresolved parameters raise parse_error at offset 0.
ExprPtr resolve_params(const ExprPtr& e,
                       const std::vector<std::pair<std::string, double>>& values);

// Renumbers Var indices by `index -> index + shift` (used to embed an
// expression in a larger coordinate system).
ExprPtr shift_vars(const ExprPtr& e, int shift);

// Evaluates the expression as a jet at the base point.  `point` supplies the
// coordinate values; the jet has layout (point.size(), order).  Param nodes
// must have been resolved first.  `^` with a constant integer exponent is
// evaluated by repeated multiplication (negative bases allowed); any other
// exponent goes through exp(b log a) and requires a positive base.
Jet eval_jet(const ExprPtr& e, const std::vector<double>& point, int order);

// Convenience: plain evaluation (order-0 jet).
double eval_value(const ExprPtr& e, const std::vector<double>& point);

}  // namespace cgl
