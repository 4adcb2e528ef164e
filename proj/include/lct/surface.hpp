#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lct/ade.hpp"
#include "lct/rational.hpp"

namespace lct {

/// Multiset of ADE types, kept sorted (A before D before E, then by rank).
struct SingularityProfile {
  std::vector<AdeType> entries;

  /// Accepts "A1,A5", "A5+A1", "A5A1", "{A1, A5}"; "smooth" or "" gives the
  /// empty profile.
  static SingularityProfile parse(std::string_view text);
  static SingularityProfile of(std::vector<AdeType> types);

  std::string str() const;  // "A1,A5"; "smooth" when empty
  std::size_t count(const AdeType& t) const;
  bool contains(const AdeType& t) const { return count(t) > 0; }
  /// Sub-multiset test.
  bool contains(const SingularityProfile& other) const;

  friend bool operator==(const SingularityProfile&, const SingularityProfile&) = default;
  friend auto operator<=>(const SingularityProfile&, const SingularityProfile&) = default;
};

enum class CurveKind { Line, Conic, Cubic };

const char* curve_kind_name(CurveKind k);
int curve_kind_degree(CurveKind k);
/// Arithmetic genus of a plane curve of that kind (the cubic is singular).
int curve_kind_genus(CurveKind k);

struct NamedCurve {
  std::string id;
  CurveKind kind = CurveKind::Line;
  int degree = 1;
  /// Incidence with the exceptional curves over each singular point it
  /// passes through, in canonical node order.
  std::map<std::string, std::vector<int>> incidence;
  std::string cite;

  std::vector<int> incidence_at(const std::string& point, int rank) const;

  friend bool operator==(const NamedCurve&, const NamedCurve&) = default;
};

struct SingularPoint {
  std::string id;
  AdeType type;
  /// Incidence lists of an A_n point were written right-to-left in the file.
  bool reversed = false;

  ResolutionLattice lattice() const { return ResolutionLattice(type); }

  friend bool operator==(const SingularPoint&, const SingularPoint&) = default;
};

struct Term {
  Rat multiplicity;
  std::string curve;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Formal combination Σ m_j C_j.
struct BoundaryDivisor {
  std::vector<Term> terms;

  /// "2*L1 + L2", "1/3*L1 + 1/3*L2"; multiplicities must be ≥ 0.
  static BoundaryDivisor parse(std::string_view text);
  std::string str() const;
  Rat multiplicity(const std::string& curve) const;
  /// Terms merged per curve and sorted by id.
  BoundaryDivisor normalized() const;

  friend bool operator==(const BoundaryDivisor&, const BoundaryDivisor&) = default;
};

struct Equivalence {
  BoundaryDivisor divisor;  // declared ∼ −K_S
  std::string cite;

  friend bool operator==(const Equivalence&, const Equivalence&) = default;
};

struct SurfaceModel {
  SingularityProfile profile;
  int anticanonical_degree = 3;
  std::vector<SingularPoint> points;
  std::vector<NamedCurve> curves;
  std::vector<Equivalence> equivalences;
  /// Intersection numbers of strict transforms on the resolution for pairs
  /// of distinct curves, keyed by the ordered pair of ids. Missing pairs are 0.
  std::map<std::pair<std::string, std::string>, Rat> pairwise;

  const SingularPoint* find_point(std::string_view id) const;
  const NamedCurve* find_curve(std::string_view id) const;
  const SingularPoint& point(std::string_view id) const;  // throws DanglingReference
  const NamedCurve& curve(std::string_view id) const;     // throws DanglingReference

  Rat resolution_pairwise(const std::string& a, const std::string& b) const;
  void set_pairwise(const std::string& a, const std::string& b, const Rat& value);

  /// Pullback coefficients of `curve` at `point` (zero vector when the curve
  /// misses the point).
  PullbackVector pullback(const std::string& curve, const std::string& point) const;
  /// C_a · C_b on the singular surface.
  Rat intersection(const std::string& a, const std::string& b) const;

  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;
};

struct WitnessSpec {
  BoundaryDivisor divisor;
  std::vector<BlowupStep> tower;
  /// Points where the total transform is not SNC without the tower.
  std::vector<std::string> non_snc;
  std::string cite;

  friend bool operator==(const WitnessSpec&, const WitnessSpec&) = default;
};

struct AuxWitness {
  std::string name;
  WitnessSpec witness;
  Rat expected;

  friend bool operator==(const AuxWitness&, const AuxWitness&) = default;
};

enum class ScriptMode { Generated, Transcribed };

enum class RowRule { Expr, Nef, Curve, Class };

/// One declared row of a proof script. Rule rows expand against the script
/// point: `nef` gives the Cartan rows, `curve`/`class` give
/// deg − Σ inc_i·a_i ≥ 0.
struct ScriptRow {
  RowRule rule = RowRule::Expr;
  std::string expr;
  std::string curve;
  int degree = 0;
  std::vector<int> incidence;
  std::string cite;
  bool redundant = false;
  /// For `nef`: 1-based nodes whose rows are marked redundant.
  std::vector<int> redundant_nodes;

  friend bool operator==(const ScriptRow&, const ScriptRow&) = default;
};

struct CaseNode {
  std::string label;
  std::vector<ScriptRow> rows;
  std::vector<CaseNode> cases;
  /// Attach the generated chain branches of the script point here.
  bool chain_cases = false;

  friend bool operator==(const CaseNode&, const CaseNode&) = default;
};

struct Assumption {
  std::string tag;  // connectedness | degree-bound | mult-bound | convexity-choice
  std::string cite;
  std::string text;

  friend bool operator==(const Assumption&, const Assumption&) = default;
};

struct ProofScript {
  ScriptMode mode = ScriptMode::Transcribed;
  std::string point;  // singular point whose variables a1..ak are in scope
  Rat tau_floor;
  bool tau_strict = false;
  std::vector<std::string> variables;  // extra variables besides a_i and tau
  std::vector<Assumption> assumptions;
  CaseNode tree;
  /// Literal case list as displayed in the source, one row set per line
  /// (used to compare against generated trees).
  std::vector<std::vector<std::string>> displayed_cases;

  friend bool operator==(const ProofScript&, const ProofScript&) = default;
};

struct GroupSpec {
  std::string name;
  int order = 1;
  std::vector<std::map<std::string, std::string>> generators;
  std::vector<std::string> labels;  // the permuted set; defaults to curves + points
  /// When false the action on `labels` may have a kernel, so the generated
  /// order only has to divide `order`.
  bool faithful = true;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct EliminationSpec {
  /// (conic class, line) with conic + line a hyperplane section. An
  /// invariant irreducible conic forces its residual line to be invariant.
  std::vector<std::pair<std::string, std::string>> conic_residual_pairs;

  friend bool operator==(const EliminationSpec&, const EliminationSpec&) = default;
};

struct CaseFixture {
  std::string name;
  std::string source;  // file path when loaded from disk
  SurfaceModel model;
  std::optional<Rat> expected_omega;
  std::optional<WitnessSpec> witness;
  std::vector<AuxWitness> aux_witnesses;
  std::optional<ProofScript> script;
  std::optional<GroupSpec> group;
  std::optional<BoundaryDivisor> invariant_divisor;
  std::optional<EliminationSpec> elimination;
  std::vector<Assumption> assumptions;  // fixture-level (used by group fixtures)
};

/// Parses a YAML fixture. Throws ParseError (with line/field) or
/// DanglingReference.
CaseFixture load_fixture(std::string_view text, const std::string& source = {});
CaseFixture load_fixture_file(const std::string& path);

/// Emits YAML that load_fixture reads back to an equal fixture.
std::string serialize_fixture(const CaseFixture& f);

/// Empty iff the fixture is internally consistent.
std::vector<std::string> validate_fixture(const CaseFixture& f);

/// Equality ignoring `source`.
bool fixtures_equal(const CaseFixture& a, const CaseFixture& b);

}  // namespace lct
