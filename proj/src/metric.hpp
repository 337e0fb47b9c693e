#pragma once

#include <string>
#include <utility>
#include <vector>

#include "expr.hpp"

namespace cgl {

// A coordinate patch with a symmetric metric tensor whose components are
// closed-form expressions in the coordinates.  Components may reference named
// parameters; parameter values are part of the field and are substituted
// before any numerical evaluation.
//
// Text format (one declaration per line, '#' starts a comment):
//
//   dim = <n>
//   signature = +1,+1,...        # optional, defaults to all +1
//   coords = x1,x2,...           # exactly n names
//   param <name> = <value>       # zero or more
//   g[i][j] = <expression>       # 1-based, i <= j; diagonal required,
//                                # missing off-diagonal entries are 0
class MetricField {
 public:
  MetricField(int dim, std::vector<std::string> coords);

  int dim() const { return dim_; }
  const std::vector<std::string>& coords() const { return coords_; }

  // Diagonal signs, metadata only (the component expressions already carry
  // the signs); size dim, entries +1/-1.
  const std::vector<int>& signature() const { return signature_; }
  void set_signature(std::vector<int> s);

  const std::vector<std::pair<std::string, double>>& params() const { return params_; }
  void set_param(const std::string& name, double value);  // adds or overwrites

  // Sets g[i][j] and g[j][i]; 0-based indices.  Unset components are 0.
  void set_entry(int i, int j, ExprPtr e);
  const ExprPtr& entry(int i, int j) const;  // as written (may contain params)
  ExprPtr entry_resolved(int i, int j) const;

  // All dim*dim components evaluated as jets at `point`; row-major order.
  std::vector<Jet> eval_matrix(const std::vector<double>& point, int order) const;

  // Renders the field in the same text format `from_text` reads; the result
  // parses back to an equal field.
  std::string to_text() const;
  void save(const std::string& path) const;

  static MetricField from_text(const std::string& text);
  static MetricField from_file(const std::string& path);

 private:
  int dim_;
  std::vector<std::string> coords_;
  std::vector<int> signature_;
  std::vector<std::pair<std::string, double>> params_;
  std::vector<ExprPtr> entries_;  // dim*dim, kept symmetric
};

}  // namespace cgl
