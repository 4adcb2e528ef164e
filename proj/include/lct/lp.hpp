#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lct/linear.hpp"

namespace lct {

/// Nonnegative row multipliers whose combination has zero coefficients and
/// a contradictory constant.
struct InfeasibilityCertificate {
  QVector multipliers;
  Row derived;
};

struct Feasible {
  QVector point;
};

struct Infeasible {
  InfeasibilityCertificate certificate;
};

using FeasibilityResult = std::variant<Feasible, Infeasible>;

inline bool is_infeasible(const FeasibilityResult& r) { return std::holds_alternative<Infeasible>(r); }

/// Projects out `var`. Each new row's `parents` holds the indices of the two
/// input rows it combines and their multipliers; rows not mentioning `var`
/// keep a single parent with multiplier 1.
LinearSystem fourier_motzkin_eliminate(const LinearSystem& sys, const std::string& var);

struct FeasibilityOptions {
  /// Variables to eliminate first, in this order. Remaining variables are
  /// chosen greedily by the smallest number of generated rows.
  std::vector<std::string> order;
  /// Drop rows dominated by a single proportional row.
  bool prune = true;
};

FeasibilityResult check_feasibility(const LinearSystem& sys, const FeasibilityOptions& options = {});

/// Combination Σ multiplier_i · row_i over the rows of `sys`.
Row combine_rows(const LinearSystem& sys, const QVector& multipliers);

/// Recomputes the combination and checks the certificate conditions.
/// Throws DimensionMismatch when the multiplier count differs from the row count.
bool replay_certificate(const LinearSystem& sys, const InfeasibilityCertificate& cert);

}  // namespace lct
