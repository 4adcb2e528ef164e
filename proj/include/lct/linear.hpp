#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lct/matrix.hpp"
#include "lct/rational.hpp"

namespace lct {

/// Affine form Σ coeff·var + constant over named variables.
struct Affine {
  std::map<std::string, Rat> terms;
  Rat constant;

  bool is_constant() const { return terms.empty(); }

  Affine& operator+=(const Affine& o);
  Affine& operator-=(const Affine& o);
  Affine& operator*=(const Rat& k);
  friend Affine operator+(Affine a, const Affine& b) { return a += b; }
  friend Affine operator-(Affine a, const Affine& b) { return a -= b; }
  friend Affine operator*(Affine a, const Rat& k) { return a *= k; }
  friend bool operator==(const Affine&, const Affine&) = default;

  static Affine variable(const std::string& name);
  static Affine number(const Rat& value);
};

/// Parses "2*a1 - a2/3 + 4", "1 - mu/2", "(a + m)/2"; implicit products like
/// "2b" are accepted. Nonlinear terms raise ParseError.
Affine parse_affine(std::string_view text);

enum class Comparison { Ge, Gt, Le, Lt, Eq };

struct Constraint {
  Affine lhs;
  Comparison op;
  Affine rhs;
};

/// Parses "lhs OP rhs" with OP one of >=, >, <=, <, = (or the symbols ≥ ≤ ⩾ ⩽).
Constraint parse_constraint(std::string_view text);

enum class Relation { Geq, Gt };

const char* relation_symbol(Relation r);
Relation parse_relation(std::string_view s);

/// One row coeffs·x (≥ | >) rhs. `parents` lists (row index, multiplier)
/// pairs when the row was derived from rows of an earlier system.
struct Row {
  QVector coeffs;
  Rat rhs;
  Relation rel = Relation::Geq;
  std::string provenance;
  std::vector<std::pair<std::size_t, Rat>> parents;

  bool strict() const { return rel == Relation::Gt; }
  bool is_zero_row() const;
};

struct LinearSystem {
  std::vector<std::string> variables;
  std::vector<Row> rows;

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Appends `name` unless present; returns its index. Existing rows are
  /// padded with zero coefficients.
  std::size_t ensure_variable(const std::string& name);

  /// Adds the rows expressing `c` (an equality adds two rows). Unknown
  /// variables raise UnknownVariable.
  void add_constraint(const Constraint& c, const std::string& provenance);
  void add_constraint(std::string_view text, const std::string& provenance);
  void add_row(Row r);

  /// Renames into `vars` (a superset of `variables`), zero-padding rows.
  LinearSystem widened(const std::vector<std::string>& vars) const;

  bool satisfied_by(const QVector& point) const;
};

/// Rows for one affine comparison over the given variable order.
std::vector<Row> rows_from_constraint(const Constraint& c, const std::vector<std::string>& variables,
                                      const std::string& provenance);

/// Positive rescaling making coeffs and rhs coprime integers; used when
/// comparing row sets independently of how they were written.
Row canonical_row(const Row& r);

/// Sorted list of canonical rows with duplicates removed.
std::vector<Row> canonical_row_set(const std::vector<Row>& rows);
bool same_row(const Row& a, const Row& b);

/// Human-readable "2*a1 - a2 > 3".
std::string format_row(const Row& r, const std::vector<std::string>& variables);

}  // namespace lct
