#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lct/rational.hpp"
#include "lct/surface.hpp"

namespace lct {

/// Sparse polynomial with exact coefficients over a fixed variable list.
/// Zero coefficients are never stored.
class Poly {
 public:
  using Exponents = std::vector<int>;

  Poly() = default;
  explicit Poly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

  const std::vector<std::string>& variables() const { return vars_; }
  const std::map<Exponents, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t var_index(std::string_view name) const;  // throws UnknownVariable

  /// Adds c·monomial; drops the term if the sum vanishes. Throws
  /// DimensionMismatch on a wrong exponent count and ParseError on a
  /// negative exponent.
  void add_term(const Rat& c, const Exponents& e);

  Poly scaled(const Rat& c) const;
  /// Multiplies by var^power.
  Poly shifted(std::size_t var, int power) const;
  /// Smallest exponent of `var` over all terms (0 for the zero polynomial).
  int min_degree(std::size_t var) const;

  /// "x^3 + y^2*z + t^12*w^3", terms in descending exponent order.
  std::string str() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::vector<std::string> vars_;
  std::map<Exponents, Rat> terms_;
};

/// Each projective coordinate v ↦ t^{e_v}·v; the parameter is fixed.
struct SubstitutionMap {
  std::string parameter = "t";
  std::map<std::string, int> t_power;  // coordinates not listed map to themselves

  Poly apply(const Poly& p) const;
  std::string str(const std::vector<std::string>& variables) const;  // "(t^2*x, t^3*y, z, t^6*w)"
};

/// The k ≥ 0 with target∘map = t^k·source. Throws NoFactorization when no
/// such k exists and DimensionMismatch when the variable lists differ.
int substitute_and_factor(const Poly& target, const SubstitutionMap& map, const Poly& source);

enum class Biregularity { Biregular, Inconclusive };

const char* biregularity_name(Biregularity b);
Biregularity parse_biregularity(std::string_view text);  // throws ParseError

struct CriterionOutcome {
  Biregularity verdict = Biregularity::Inconclusive;
  /// 1: both log terminal and lct sum > 1; 2: X log terminal and lct(X) ≥ 1.
  int clause = 0;
};

/// Sufficient condition for the fiberwise map to be biregular.
CriterionOutcome biregularity_criterion(const Rat& lct_x, const Rat& lct_xbar, bool x_log_terminal,
                                        bool xbar_log_terminal);

/// Global lct of a cubic surface fiber: the table value for a singular
/// profile, 2/3 or 3/4 for a smooth one depending on Eckardt points.
Rat fiber_lct(const SingularityProfile& profile, bool eckardt);

struct FiberSpec {
  SingularityProfile profile;
  bool eckardt = false;
  bool log_terminal = true;
};

struct FiberwisePair {
  std::string name;
  std::string source;
  std::optional<Poly> source_poly;  // family V, special fiber X
  std::optional<Poly> target_poly;  // family V̄, special fiber X̄
  std::optional<SubstitutionMap> map;
  std::optional<int> expected_k;
  Rat lct_x;
  Rat lct_xbar;
  FiberSpec x;
  FiberSpec xbar;
  Biregularity expected_verdict = Biregularity::Inconclusive;
  std::vector<Assumption> assumptions;
  std::string cite;
};

FiberwisePair load_fiberwise(std::string_view text, const std::string& source = {});
FiberwisePair load_fiberwise_file(const std::string& path);

struct FiberwiseResult {
  std::string name;
  std::string source;
  std::optional<int> k;
  std::string map;
  CriterionOutcome outcome;
  std::vector<std::string> findings;
  bool verified = false;
};

/// Runs the substitution check (when polynomials are given), the lct
/// consistency check against the fiber profiles, and the criterion.
FiberwiseResult check_fiberwise(const FiberwisePair& pair);

}  // namespace lct
