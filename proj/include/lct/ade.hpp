#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lct/linear.hpp"
#include "lct/matrix.hpp"

namespace lct {

enum class Family { A, D, E };

/// A_n (n ≥ 1), D_n (n ≥ 4) or E_6. E_7 and E_8 do not occur on cubic
/// surfaces and are rejected.
struct AdeType {
  Family family = Family::A;
  int rank = 1;

  /// "A5", "D4", "E6" (case-insensitive, optional '_').
  static AdeType parse(std::string_view text);
  std::string name() const;

  friend auto operator<=>(const AdeType&, const AdeType&) = default;
};

/// Throws UnsupportedType for anything outside the list above.
void check_supported(const AdeType& t);

/// (−E_i·E_j) in canonical node order:
///   A_n  chain E1 - E2 - ... - En
///   D_n  (outer1, outer2, long arm from its far end toward the fork, fork)
///   E_6  chain E1 - ... - E5, then the branch node attached to E3
QMatrix cartan_matrix(const AdeType& t);

/// Exceptional curves of the minimal (crepant) resolution of one point.
class ResolutionLattice {
 public:
  explicit ResolutionLattice(AdeType t);

  const AdeType& type() const noexcept { return type_; }
  int rank() const noexcept { return type_.rank; }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const QMatrix& cartan() const noexcept { return cartan_; }
  bool adjacent(std::size_t i, std::size_t j) const { return i != j && cartan_(i, j) != Rat(0); }
  bool is_chain() const noexcept { return type_.family == Family::A; }

 private:
  AdeType type_;
  std::vector<std::string> nodes_;
  QMatrix cartan_;
};

/// α*(C) = C̄ + Σ c_i E_i for a curve whose strict transform meets E_i in
/// incidence_i points.
struct PullbackVector {
  std::string curve;
  QVector coefficients;
  std::vector<int> incidence;
};

PullbackVector pullback_coefficients(const ResolutionLattice& lattice, const std::vector<int>& incidence,
                                     const std::string& curve = {});

/// Forms (Cartan row j)·a, i.e. D̄·E_j for D̄ = α*(D) − Σ a_i E_i; each is
/// constrained ≥ 0 when D has no exceptional components.
std::vector<Affine> exceptional_nef_rows(const ResolutionLattice& lattice, const std::vector<std::string>& vars);

/// A point blown up on top of the resolution, named by the divisors through
/// it. `multiplicity` gives the multiplicity at the point of each strict
/// curve listed in `through` (default 1).
struct BlowupStep {
  std::string name;
  std::vector<std::string> through;
  std::map<std::string, Rat> multiplicity;

  friend bool operator==(const BlowupStep&, const BlowupStep&) = default;
};

/// a: log discrepancy offset (K_Y = f*K_S + Σ a_E E); ord: coefficient of E
/// in the pullback of the boundary.
struct DivisorData {
  Rat a;
  Rat ord;
  friend bool operator==(const DivisorData&, const DivisorData&) = default;
};

/// Runs the blowup recursion a_F = 1 + Σ_{E∋q} a_E, ord_F = Σ_C m_C·mult_q(C) +
/// Σ_{E∋q} ord_E. `exceptional` seeds the divisors already present (ADE
/// curves have a = 0); `boundary` maps strict curve ids to their coefficients.
/// Returns data for every exceptional divisor, seeds included.
std::map<std::string, DivisorData> tower_log_discrepancy(const std::vector<BlowupStep>& tower,
                                                         const std::map<std::string, DivisorData>& exceptional,
                                                         const std::map<std::string, Rat>& boundary);

}  // namespace lct
