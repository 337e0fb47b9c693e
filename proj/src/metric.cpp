#include "metric.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cgl {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool is_zero_literal(const ExprPtr& e) {
  return e->kind == Expr::Kind::Literal && e->lit == 0.0;
}

}  // namespace

MetricField::MetricField(int dim, std::vector<std::string> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1 || dim_ > 8) throw std::invalid_argument("metric dimension must be 1..8");
  if (static_cast<int>(coords_.size()) != dim_)
    throw std::invalid_argument("coordinate name count must equal the dimension");
  for (const auto& c : coords_)
    if (!valid_identifier(c)) throw std::invalid_argument("bad coordinate name '" + c + "'");
  signature_.assign(static_cast<size_t>(dim_), +1);
  entries_.assign(static_cast<size_t>(dim_ * dim_), mk_lit(0.0));
}

void MetricField::set_signature(std::vector<int> s) {
  if (static_cast<int>(s.size()) != dim_)
    throw std::invalid_argument("signature length must equal the dimension");
  for (int v : s)
    if (v != 1 && v != -1) throw std::invalid_argument("signature entries must be +1 or -1");
  signature_ = std::move(s);
}

void MetricField::set_param(const std::string& name, double value) {
  if (!valid_identifier(name)) throw std::invalid_argument("bad parameter name '" + name + "'");
  for (auto& [n, v] : params_) {
    if (n == name) {
      v = value;
      return;
    }
  }
  params_.emplace_back(name, value);
}

void MetricField::set_entry(int i, int j, ExprPtr e) {
  if (i < 0 || i >= dim_ || j < 0 || j >= dim_)
    throw std::invalid_argument("metric component index out of range");
  entries_[static_cast<size_t>(i * dim_ + j)] = e;
  entries_[static_cast<size_t>(j * dim_ + i)] = std::move(e);
}

const ExprPtr& MetricField::entry(int i, int j) const {
  if (i < 0 || i >= dim_ || j < 0 || j >= dim_)
    throw std::invalid_argument("metric component index out of range");
  return entries_[static_cast<size_t>(i * dim_ + j)];
}

ExprPtr MetricField::entry_resolved(int i, int j) const {
  return resolve_params(entry(i, j), params_);
}

std::vector<Jet> MetricField::eval_matrix(const std::vector<double>& point, int order) const {
  if (static_cast<int>(point.size()) != dim_)
    throw std::invalid_argument("evaluation point has wrong dimension");
  std::vector<Jet> m(static_cast<size_t>(dim_ * dim_));
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      Jet v = eval_jet(entry_resolved(i, j), point, order);
      m[static_cast<size_t>(i * dim_ + j)] = v;
      m[static_cast<size_t>(j * dim_ + i)] = v;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

std::string MetricField::to_text() const {
  std::ostringstream os;
  os << "dim = " << dim_ << "\n";
  bool lorentzian = false;
  for (int v : signature_)
    if (v < 0) lorentzian = true;
  if (lorentzian) {
    os << "signature = ";
    for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << (signature_[(size_t)i] > 0 ? "+1" : "-1");
    os << "\n";
  }
  os << "coords = ";
  for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << coords_[(size_t)i];
  os << "\n";
  for (const auto& [name, value] : params_) {
    std::ostringstream pv;
    pv.precision(17);
    pv << value;
    os << "param " << name << " = " << pv.str() << "\n";
  }
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      const ExprPtr& e = entry(i, j);
      if (i != j && is_zero_literal(e)) continue;
      os << "g[" << (i + 1) << "][" << (j + 1)
         << "] = " << pretty_print_with_names(e, coords_) << "\n";
    }
  }
  return os.str();
}

void MetricField::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << to_text();
  if (!f.good()) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {

// Cursor over one logical line, carrying the absolute byte offset into the
// whole document so parse errors can point at the original text.
struct LineCursor {
  const std::string& text;
  size_t pos;   // absolute
  size_t end;   // absolute (exclusive)

  void skip_ws() {
    while (pos < end && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= end;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < end && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw parse_error(std::string("expected '") + c + "' " + what, pos);
  }
  std::string identifier() {
    skip_ws();
    size_t start = pos;
    while (pos < end && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) throw parse_error("expected an identifier", pos);
    return text.substr(start, pos - start);
  }
  long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < end && (text[pos] == '+' || text[pos] == '-')) ++pos;
    while (pos < end && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      throw parse_error("expected an integer", start);
    return std::strtol(text.c_str() + start, nullptr, 10);
  }
  double number() {
    skip_ws();
    const char* begin = text.c_str() + pos;
    char* endp = nullptr;
    double v = std::strtod(begin, &endp);
    if (endp == begin) throw parse_error("expected a number", pos);
    size_t stop = pos + static_cast<size_t>(endp - begin);
    if (stop > end) throw parse_error("number runs past end of line", pos);
    pos = stop;
    return v;
  }
  std::string rest() {
    skip_ws();
    return text.substr(pos, end - pos);
  }
};

}  // namespace

MetricField MetricField::from_text(const std::string& text) {
  int dim = -1;
  std::vector<std::string> coords;
  std::vector<int> signature;
  std::vector<std::pair<std::string, double>> params;
  struct RawEntry {
    int i, j;
    ExprPtr expr;
  };
  std::vector<RawEntry> raw;
  std::vector<char> seen;  // dim*dim once dim is known

  size_t line_start = 0;
  while (line_start <= text.size()) {
    size_t nl = text.find('\n', line_start);
    size_t line_end = (nl == std::string::npos) ? text.size() : nl;
    // Comments run to end of line.
    size_t hash = text.find('#', line_start);
    size_t content_end = (hash != std::string::npos && hash < line_end) ? hash : line_end;

    LineCursor cur{text, line_start, content_end};
    if (!cur.done()) {
      size_t key_pos = cur.pos;
      std::string key = cur.identifier();
      if (key == "dim") {
        if (dim != -1) throw parse_error("duplicate 'dim' declaration", key_pos);
        cur.expect('=', "after 'dim'");
        long d = cur.integer();
        if (d < 1 || d > 8) throw parse_error("dim must be 1..8", key_pos);
        dim = static_cast<int>(d);
        seen.assign(static_cast<size_t>(dim * dim), 0);
      } else if (key == "signature") {
        if (dim == -1) throw parse_error("'signature' must come after 'dim'", key_pos);
        if (!signature.empty()) throw parse_error("duplicate 'signature' declaration", key_pos);
        cur.expect('=', "after 'signature'");
        for (int k = 0; k < dim; ++k) {
          if (k) cur.expect(',', "between signature entries");
          long s = cur.integer();
          if (s != 1 && s != -1) throw parse_error("signature entries must be +1 or -1", cur.pos);
          signature.push_back(static_cast<int>(s));
        }
      } else if (key == "coords") {
        if (dim == -1) throw parse_error("'coords' must come after 'dim'", key_pos);
        if (!coords.empty()) throw parse_error("duplicate 'coords' declaration", key_pos);
        cur.expect('=', "after 'coords'");
        for (int k = 0; k < dim; ++k) {
          if (k) cur.expect(',', "between coordinate names");
          std::string name = cur.identifier();
          for (const auto& c : coords)
            if (c == name) throw parse_error("duplicate coordinate name '" + name + "'", cur.pos);
          coords.push_back(name);
        }
      } else if (key == "param") {
        std::string name = cur.identifier();
        for (const auto& c : coords)
          if (c == name)
            throw parse_error("parameter '" + name + "' collides with a coordinate", key_pos);
        for (const auto& [n, v] : params)
          if (n == name) throw parse_error("duplicate parameter '" + name + "'", key_pos);
        cur.expect('=', "after parameter name");
        double v = cur.number();
        params.emplace_back(name, v);
      } else if (key == "g") {
        if (dim == -1 || coords.empty())
          throw parse_error("metric components must come after 'dim' and 'coords'", key_pos);
        cur.expect('[', "after 'g'");
        long i = cur.integer();
        cur.expect(']', "after row index");
        cur.expect('[', "before column index");
        long j = cur.integer();
        cur.expect(']', "after column index");
        cur.expect('=', "after component indices");
        if (i < 1 || j < 1 || i > dim || j > dim)
          throw parse_error("component indices must be in 1.." + std::to_string(dim), key_pos);
        if (i > j) throw parse_error("give components with row <= column", key_pos);
        if (seen[static_cast<size_t>((i - 1) * dim + (j - 1))])
          throw parse_error("duplicate component g[" + std::to_string(i) + "][" +
                                std::to_string(j) + "]",
                            key_pos);
        cur.skip_ws();
        size_t expr_at = cur.pos;
        std::string src = cur.rest();
        cur.pos = cur.end;  // expression consumes the remainder of the line
        std::vector<std::string> param_names;
        for (const auto& [n, v] : params) param_names.push_back(n);
        ExprPtr e;
        try {
          e = parse_expr(src, coords, param_names);
        } catch (const parse_error& pe) {
          throw parse_error(std::string(pe.what()), expr_at + pe.offset());
        }
        raw.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), e});
        seen[static_cast<size_t>((i - 1) * dim + (j - 1))] = 1;
      } else {
        throw parse_error("unknown declaration '" + key + "'", key_pos);
      }
      if (!cur.done() && cur.pos < cur.end)
        throw parse_error("unexpected trailing input on line", cur.pos);
    }

    if (nl == std::string::npos) break;
    line_start = nl + 1;
  }

  if (dim == -1) throw parse_error("missing 'dim' declaration", 0);
  if (coords.empty()) throw parse_error("missing 'coords' declaration", 0);
  for (int k = 0; k < dim; ++k)
    if (!seen[static_cast<size_t>(k * dim + k)])
      throw parse_error("missing diagonal component g[" + std::to_string(k + 1) + "][" +
                            std::to_string(k + 1) + "]",
                        0);

  MetricField m(dim, coords);
  if (!signature.empty()) m.set_signature(signature);
  for (const auto& [n, v] : params) m.set_param(n, v);
  for (const auto& r : raw) m.set_entry(r.i, r.j, r.expr);
  return m;
}

MetricField MetricField::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open metric file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return from_text(buf.str());
}

}  // namespace cgl
