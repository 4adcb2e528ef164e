#pragma once

#include <string>
#include <vector>

#include "lct/lp.hpp"
#include "lct/surface.hpp"

namespace lct {

// ---------------------------------------------------------------------------
// Upper bounds from witness divisors

struct WitnessEntry {
  std::string divisor;  // curve id, "O.E3", or a tower step name
  bool strict_component = false;
  Rat discrepancy;  // a_E (0 for curves and ADE exceptionals)
  Rat order;        // multiplicity m for curves, ord_E for exceptionals
  Rat bound;        // 1/m or (1 + a_E)/ord_E
};

struct WitnessBound {
  Rat value;
  std::vector<std::string> attaining;  // every divisor reaching the minimum
  std::vector<WitnessEntry> entries;
};

/// min(1/m_j, (1 + a_E)/ord_E) over the total transform. Throws NotSNC when
/// the witness declares non-SNC points but no tower.
WitnessBound witness_lct_upper(const SurfaceModel& model, const WitnessSpec& witness);

// ---------------------------------------------------------------------------
// Lower-bound scripts

/// Branches "Q on the interior of E_j" (Cartan_j·a > τ) and "Q = E_j ∩ E_{j+1}"
/// (Cartan_j·a > τ − a_{j+1}, Cartan_{j+1}·a > τ − a_j), in chain order.
/// Throws UnsupportedProfile unless the lattice is an A_n chain.
std::vector<CaseNode> chain_case_branches(const ResolutionLattice& lattice);

/// Script whose root carries `base` and whose cases are the chain branches.
ProofScript generate_case_tree(const ResolutionLattice& lattice, std::vector<ScriptRow> base, const Rat& tau_floor);

/// A script row as it ends up in the leaf systems.
struct RowOrigin {
  std::string key;  // stable path such as "tree.cases[1].rows[0]" or "tree.rows[2]/E3"
  std::string cite;
  bool redundant = false;
  bool generated = false;  // chain branch rows are produced by the generator
};

struct Leaf {
  std::string label;
  LinearSystem system;
  std::vector<std::size_t> origins;  // index into ExpandedScript::origins, per row
};

struct ExpandedScript {
  std::vector<std::string> variables;
  std::vector<RowOrigin> origins;
  std::vector<Leaf> leaves;
};

/// Flattens the tree: each leaf system is the conjunction of rows on its
/// root path plus the τ floor.
ExpandedScript expand_script(const SurfaceModel& model, const ProofScript& script);

/// Same, with the rows whose origin key is in `dropped` removed.
ExpandedScript expand_script_without(const SurfaceModel& model, const ProofScript& script,
                                     const std::vector<std::string>& dropped);

struct LeafResult {
  std::string label;
  LinearSystem system;
  FeasibilityResult outcome;
};

struct LowerBoundResult {
  std::vector<LeafResult> leaves;
  std::vector<Assumption> assumptions;
  bool verified = false;
};

LowerBoundResult verify_expanded(const ExpandedScript& expanded, const std::vector<Assumption>& assumptions);
LowerBoundResult verify_lower_bound_script(const SurfaceModel& model, const ProofScript& script);

/// Rows of each displayed case after substituting τ = `tau`, canonicalized
/// and sorted; used to compare generated trees with transcribed lists.
std::vector<std::vector<Row>> canonical_case_list(const std::vector<std::vector<std::string>>& cases,
                                                  const std::vector<std::string>& variables, const Rat& tau);
std::vector<std::vector<Row>> canonical_case_list(const std::vector<CaseNode>& cases,
                                                  const std::vector<std::string>& variables, const Rat& tau);

// ---------------------------------------------------------------------------
// Whole cases and the table

struct AuxResult {
  std::string name;
  WitnessBound bound;
  Rat expected;
  bool matches = false;
};

struct CaseResult {
  std::string name;
  std::string source;
  SingularityProfile profile;
  Rat expected;
  WitnessBound upper;
  std::vector<AuxResult> aux;
  LowerBoundResult lower;
  std::vector<std::string> findings;  // validation findings, if any
  bool verified = false;
};

CaseResult compute_case_threshold(const CaseFixture& fixture);

struct TableClause {
  std::string label;
  Rat omega;
};

/// The clauses in the order they are applied.
const std::vector<TableClause>& table_clauses();
/// Index of the first clause matching `profile`. Throws UnsupportedProfile
/// for the smooth (empty) profile.
std::size_t classify_profile(const SingularityProfile& profile);
Rat table_value(const SingularityProfile& profile);

struct TableRow {
  TableClause clause;
  std::vector<const CaseResult*> cases;
  bool all_verified = false;
  /// The clause also covers profiles without a shipped fixture.
  bool asserted_without_fixture = false;
};

/// Throws Inconsistent when a verified case disagrees with its clause.
std::vector<TableRow> assemble_table(const std::vector<CaseResult>& results);

enum class KEVerdict { KECertified, Inconclusive };

const char* ke_verdict_name(KEVerdict v);
/// Sufficient criterion: lct > dim/(dim + 1).
KEVerdict ke_criterion(const Rat& lct_value, int dimension);

}  // namespace lct
