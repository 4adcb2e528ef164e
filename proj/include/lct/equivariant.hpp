#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lct/engine.hpp"
#include "lct/surface.hpp"

namespace lct {

/// A finite group given by generators permuting a labeled set (lines and
/// singular points of one surface).
struct GroupAction {
  std::string group_name;
  std::vector<std::string> labels;  // sorted
  /// Each generator as an image table over `labels`.
  std::vector<std::vector<std::size_t>> generators;
  int declared_order = 1;
  bool faithful = true;

  /// Labels absent from a generator map are fixed. Throws NotAPermutation
  /// when a generator is not a bijection of `labels`.
  static GroupAction from_spec(const GroupSpec& spec, std::vector<std::string> labels);
  /// Same group name and labels, no generators.
  GroupAction trivial() const;

  std::size_t index(const std::string& label) const;  // throws DanglingReference
  const std::string& image(std::size_t generator, const std::string& label) const;
};

/// Order of the permutation group generated on all labels.
std::size_t generated_order(const GroupAction& action);
/// Order of the image of the group acting on `subset` (which must be
/// invariant; throws NotAPermutation otherwise).
std::size_t image_order(const GroupAction& action, const std::vector<std::string>& subset);

/// Orbits of the group on `set`, each sorted, ordered by least label.
/// Throws NotAPermutation if some generator moves an element out of `set`.
std::vector<std::vector<std::string>> orbit_partition(const GroupAction& action, const std::vector<std::string>& set);

bool is_invariant(const GroupAction& action, const BoundaryDivisor& divisor);

/// lct(S, G) ≤ lct(S, D) ≤ 1/max multiplicity for an invariant D ∼ −K_S.
/// Throws NoReducedComponent unless some component has multiplicity 1,
/// Inconsistent if D is not invariant or not anticanonical.
Rat invariant_upper_bound(const GroupAction& action, const SurfaceModel& model, const BoundaryDivisor& divisor);

struct LineConfiguration {
  std::vector<std::string> lines;
  /// Conic family → residual line in the same hyperplane section.
  std::vector<std::pair<std::string, std::string>> conic_residual_pairs;

  /// Lines are the degree-1 curves of the model; without an elimination
  /// block every line gets the family "conics residual to <line>".
  static LineConfiguration from_fixture(const CaseFixture& f);
};

struct EliminationTrace {
  std::vector<std::vector<std::string>> line_orbits;
  std::size_t smallest_line_orbit = 0;
  std::vector<std::string> steps;
};

/// Rules out invariant reduced curves of degree ≤ max_degree: unions of
/// lines by orbit sizes, irreducible conics by their residual lines. Throws
/// EliminationFails naming the surviving candidate.
EliminationTrace eliminate_invariant_curves(const GroupAction& action, const LineConfiguration& config,
                                            int max_degree = 2);

struct InvariantResult {
  std::string name;
  std::string source;
  std::string group;
  std::size_t order = 0;        // generated on all labels
  std::size_t line_order = 0;   // image on the lines
  bool order_ok = false;
  Rat upper;
  std::optional<EliminationTrace> trace;
  std::string survivor;         // set when the elimination fails
  std::optional<Rat> lct;       // set when both bounds meet
  std::optional<Rat> expected;
  KEVerdict ke = KEVerdict::Inconclusive;
  std::vector<Assumption> assumptions;
  std::vector<std::string> findings;
  bool verified = false;
};

/// Upper bound from the invariant divisor plus the elimination. Pass
/// `action` to override the fixture's group (e.g. with its trivial group).
InvariantResult invariant_threshold(const CaseFixture& fixture, const std::optional<GroupAction>& action = {});

/// The group of a fixture acting on its declared labels (default: all
/// curves and points).
GroupAction fixture_action(const CaseFixture& fixture);

}  // namespace lct
