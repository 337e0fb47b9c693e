#include "expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace cgl {

const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Sqrt: return "sqrt";
    case Func::Abs: return "abs";
  }
  return "?";
}

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool lookup_func(const std::string& name, Func* out) {
  static const std::pair<const char*, Func> table[] = {
      {"exp", Func::Exp}, {"log", Func::Log},   {"sin", Func::Sin}, {"cos", Func::Cos},
      {"tan", Func::Tan}, {"sqrt", Func::Sqrt}, {"abs", Func::Abs}};
  for (const auto& [n, f] : table) {
    if (name == n) {
      *out = f;
      return true;
    }
  }
  return false;
}

}  // namespace

ExprPtr mk_lit(double v) {
  Expr e;
  e.kind = Expr::Kind::Literal;
  e.lit = v;
  return node(std::move(e));
}

ExprPtr mk_var(int index) {
  Expr e;
  e.kind = Expr::Kind::Var;
  e.var = index;
  return node(std::move(e));
}

ExprPtr mk_param(const std::string& name) {
  Expr e;
  e.kind = Expr::Kind::Param;
  e.param = name;
  return node(std::move(e));
}

namespace {
ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = k;
  e.a = std::move(a);
  e.b = std::move(b);
  return node(std::move(e));
}
}  // namespace

ExprPtr mk_add(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Add, std::move(a), std::move(b)); }
ExprPtr mk_sub(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Sub, std::move(a), std::move(b)); }
ExprPtr mk_mul(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Mul, std::move(a), std::move(b)); }
ExprPtr mk_div(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Div, std::move(a), std::move(b)); }
ExprPtr mk_pow(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Pow, std::move(a), std::move(b)); }

ExprPtr mk_neg(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Neg;
  e.a = std::move(a);
  return node(std::move(e));
}

ExprPtr mk_call(Func f, ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Call;
  e.func = f;
  e.a = std::move(a);
  return node(std::move(e));
}

// ---------------------------------------------------------------------------
// Parser: plain recursive descent over a byte cursor.
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& src, const std::vector<std::string>& coords,
         const std::vector<std::string>& params)
      : src_(src), coords_(coords), params_(params) {}

  ExprPtr run() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  // sum := product (('+'|'-') product)*
  ExprPtr parse_sum() {
    ExprPtr e = parse_product();
    for (;;) {
      if (eat('+')) {
        e = mk_add(e, parse_product());
      } else if (eat('-')) {
        e = mk_sub(e, parse_product());
      } else {
        return e;
      }
    }
  }

  // product := unary (('*'|'/') unary)*
  ExprPtr parse_product() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (eat('*')) {
        e = mk_mul(e, parse_unary());
      } else if (eat('/')) {
        e = mk_div(e, parse_unary());
      } else {
        return e;
      }
    }
  }

  // A minus applied to a bare literal becomes a negative literal, so that
  // printed negative constants re-parse to the same tree.
  static ExprPtr negated(ExprPtr e) {
    if (e->kind == Expr::Kind::Literal) return mk_lit(-e->lit);
    return mk_neg(std::move(e));
  }

  // unary := '-' unary | power       (so -x^2 parses as -(x^2))
  ExprPtr parse_unary() {
    if (eat('-')) return negated(parse_unary());
    return parse_power();
  }

  // power := atom ('^' power)?       (right-associative, binds above unary -)
  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (eat('^')) {
      // The exponent may itself carry a sign: x^-2 is x^(-2).
      ExprPtr ex = eat('-') ? negated(parse_power()) : parse_power();
      return mk_pow(base, ex);
    }
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expected an operand");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<size_t>(end - begin);
    return mk_lit(v);
  }

  ExprPtr parse_identifier() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    Func f;
    if (lookup_func(name, &f)) {
      if (!eat('(')) {
        pos_ = start;
        fail("function '" + name + "' needs parenthesized argument");
      }
      ExprPtr arg = parse_sum();
      if (!eat(')')) fail("expected ')' closing call to '" + name + "'");
      return mk_call(f, arg);
    }
    for (size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == name) return mk_var(static_cast<int>(i));
    for (const auto& p : params_)
      if (p == name) return mk_param(name);
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  const std::string& src_;
  const std::vector<std::string>& coords_;
  const std::vector<std::string>& params_;
  size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& src, const std::vector<std::string>& coords,
                   const std::vector<std::string>& params) {
  return Parser(src, coords, params).run();
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Precedence levels for printing; larger binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

// Shortest decimal string that parses back to exactly `v`.
std::string print_literal(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print_rec(const ExprPtr& e, std::ostream& os, int parent_prec, bool right_side);

void print_child(const ExprPtr& child, std::ostream& os, int my_prec, bool right_side) {
  print_rec(child, os, my_prec, right_side);
}

void print_rec(const ExprPtr& e, std::ostream& os, int parent_prec, bool right_side) {
  int prec = precedence(*e);
  bool need_paren = prec < parent_prec;
  // Equal precedence on the "wrong" side of a non-associative operator also
  // needs parentheses: a-(b+c), a/(b*c), (a^b)^c.
  if (prec == parent_prec && right_side && (parent_prec == 1 || parent_prec == 2))
    need_paren = true;
  if (prec == parent_prec && !right_side && parent_prec == 4) need_paren = true;
  // A literal that would print with a leading '-' (negative) behaves like a
  // unary minus for grouping purposes.
  if (e->kind == Expr::Kind::Literal && e->lit < 0 && parent_prec >= 2) need_paren = true;

  if (need_paren) os << '(';
  switch (e->kind) {
    case Expr::Kind::Literal: os << print_literal(e->lit); break;
    case Expr::Kind::Var: os << "@" << e->var; break;  // replaced by caller
    case Expr::Kind::Param: os << e->param; break;
    case Expr::Kind::Add:
      print_child(e->a, os, prec, false);
      os << "+";
      print_child(e->b, os, prec, true);
      break;
    case Expr::Kind::Sub:
      print_child(e->a, os, prec, false);
      os << "-";
      print_child(e->b, os, prec, true);
      break;
    case Expr::Kind::Mul:
      print_child(e->a, os, prec, false);
      os << "*";
      print_child(e->b, os, prec, true);
      break;
    case Expr::Kind::Div:
      print_child(e->a, os, prec, false);
      os << "/";
      print_child(e->b, os, prec, true);
      break;
    case Expr::Kind::Pow:
      print_child(e->a, os, prec, false);
      os << "^";
      print_child(e->b, os, prec, true);
      break;
    case Expr::Kind::Neg:
      os << "-";
      print_child(e->a, os, prec, true);
      break;
    case Expr::Kind::Call:
      os << func_name(e->func) << "(";
      print_rec(e->a, os, 0, false);
      os << ")";
      break;
  }
  if (need_paren) os << ')';
}

}  // namespace

std::string pretty_print_with_names(const ExprPtr& e, const std::vector<std::string>& coords) {
  std::ostringstream os;
  print_rec(e, os, 0, false);
  std::string s = os.str();
  // Substitute "@<index>" placeholders with coordinate names.
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size();) {
    if (s[i] == '@') {
      size_t j = i + 1;
      int idx = 0;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        idx = idx * 10 + (s[j] - '0');
        ++j;
      }
      out += coords.at(static_cast<size_t>(idx));
      i = j;
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::string pretty_print(const ExprPtr& e) {
  // Default coordinate names x1, x2, ...: used when the caller has none.
  std::vector<std::string> names;
  for (int i = 0; i < 8; ++i) names.push_back("x" + std::to_string(i + 1));
  return pretty_print_with_names(e, names);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Literal: return a->lit == b->lit;
    case Expr::Kind::Var: return a->var == b->var;
    case Expr::Kind::Param: return a->param == b->param;
    case Expr::Kind::Call:
      return a->func == b->func && expr_equal(a->a, b->a);
    case Expr::Kind::Neg: return expr_equal(a->a, b->a);
    default: return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
}

ExprPtr resolve_params(const ExprPtr& e,
                       const std::vector<std::pair<std::string, double>>& values) {
  switch (e->kind) {
    case Expr::Kind::Literal:
    case Expr::Kind::Var: return e;
    case Expr::Kind::Param:
      for (const auto& [name, v] : values)
        if (name == e->param) return mk_lit(v);
      throw parse_error("parameter '" + e->param + "' has no value", 0);
    case Expr::Kind::Neg: return mk_neg(resolve_params(e->a, values));
    case Expr::Kind::Call: return mk_call(e->func, resolve_params(e->a, values));
    default: {
      Expr out;
      out.kind = e->kind;
      out.a = resolve_params(e->a, values);
      out.b = resolve_params(e->b, values);
      return std::make_shared<const Expr>(std::move(out));
    }
  }
}

ExprPtr shift_vars(const ExprPtr& e, int shift) {
  switch (e->kind) {
    case Expr::Kind::Literal:
    case Expr::Kind::Param: return e;
    case Expr::Kind::Var: return mk_var(e->var + shift);
    case Expr::Kind::Neg: return mk_neg(shift_vars(e->a, shift));
    case Expr::Kind::Call: return mk_call(e->func, shift_vars(e->a, shift));
    default: {
      Expr out;
      out.kind = e->kind;
      out.a = shift_vars(e->a, shift);
      out.b = shift_vars(e->b, shift);
      return std::make_shared<const Expr>(std::move(out));
    }
  }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

// True when the jet is a constant whose value is an exact small integer.
bool constant_integer(const Jet& j, long long* out) {
  for (int p = 1; p < j.size(); ++p)
    if (j.coeff_at(p) != 0.0) return false;
  double v = j.value();
  if (v != std::nearbyint(v) || std::fabs(v) > 1e9) return false;
  *out = static_cast<long long>(v);
  return true;
}

Jet eval_rec(const ExprPtr& e, const std::vector<double>& point,
             const std::shared_ptr<const JetLayout>& layout) {
  switch (e->kind) {
    case Expr::Kind::Literal: return Jet::constant(layout, e->lit);
    case Expr::Kind::Var:
      if (e->var < 0 || e->var >= static_cast<int>(point.size()))
        throw std::invalid_argument("expression refers to a coordinate outside the point");
      return Jet::variable(layout, e->var, point[static_cast<size_t>(e->var)]);
    case Expr::Kind::Param:
      throw std::invalid_argument("unresolved parameter '" + e->param + "' in evaluation");
    case Expr::Kind::Add: return eval_rec(e->a, point, layout) + eval_rec(e->b, point, layout);
    case Expr::Kind::Sub: return eval_rec(e->a, point, layout) - eval_rec(e->b, point, layout);
    case Expr::Kind::Mul: return eval_rec(e->a, point, layout) * eval_rec(e->b, point, layout);
    case Expr::Kind::Div: return eval_rec(e->a, point, layout) / eval_rec(e->b, point, layout);
    case Expr::Kind::Neg: return -eval_rec(e->a, point, layout);
    case Expr::Kind::Pow: {
      Jet base = eval_rec(e->a, point, layout);
      Jet ex = eval_rec(e->b, point, layout);
      long long ip = 0;
      if (constant_integer(ex, &ip)) return jet_pow_int(base, ip);
      if (base.value() <= 0.0)
        throw domain_error("pow with non-integer exponent needs a positive base");
      return jet_exp(jet_log(base) * ex);
    }
    case Expr::Kind::Call: {
      Jet arg = eval_rec(e->a, point, layout);
      switch (e->func) {
        case Func::Exp: return jet_exp(arg);
        case Func::Log: return jet_log(arg);
        case Func::Sin: return jet_sin(arg);
        case Func::Cos: return jet_cos(arg);
        case Func::Tan: return jet_tan(arg);
        case Func::Sqrt: return jet_sqrt(arg);
        case Func::Abs: return jet_abs(arg);
      }
      throw std::logic_error("unhandled function");
    }
  }
  throw std::logic_error("unhandled expression kind");
}

}  // namespace

Jet eval_jet(const ExprPtr& e, const std::vector<double>& point, int order) {
  auto layout = JetLayout::get(static_cast<int>(point.size()), order);
  return eval_rec(e, point, layout);
}

double eval_value(const ExprPtr& e, const std::vector<double>& point) {
  return eval_jet(e, point, 0).value();
}

}  // namespace cgl
