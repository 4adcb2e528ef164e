#include "lct/engine.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lct/errors.hpp"

namespace lct {

// ---------------------------------------------------------------------------
// Witness bounds

WitnessBound witness_lct_upper(const SurfaceModel& model, const WitnessSpec& witness) {
  if (!witness.non_snc.empty() && witness.tower.empty())
    throw NotSNC("witness " + witness.divisor.str() + " is not SNC at " + witness.non_snc.front() +
                 " and no blowup tower is given");
  const BoundaryDivisor d = witness.divisor.normalized();
  WitnessBound out;

  for (const auto& t : d.terms) {
    model.curve(t.curve);
    out.entries.push_back({t.curve, true, Rat(0), t.multiplicity, t.multiplicity.reciprocal()});
  }

  std::map<std::string, DivisorData> seeds;
  for (const auto& p : model.points) {
    QVector ord(static_cast<std::size_t>(p.type.rank));
    for (const auto& t : d.terms) {
      const QVector c = model.pullback(t.curve, p.id).coefficients;
      for (std::size_t i = 0; i < ord.size(); ++i) ord[i] += t.multiplicity * c[i];
    }
    for (std::size_t i = 0; i < ord.size(); ++i) {
      const std::string name = p.id + ".E" + std::to_string(i + 1);
      seeds[name] = {Rat(0), ord[i]};
      if (ord[i].sign() > 0) out.entries.push_back({name, false, Rat(0), ord[i], ord[i].reciprocal()});
    }
  }

  if (!witness.tower.empty()) {
    std::map<std::string, Rat> boundary;
    for (const auto& c : model.curves) boundary[c.id] = d.multiplicity(c.id);
    const auto data = tower_log_discrepancy(witness.tower, seeds, boundary);
    for (const auto& step : witness.tower) {
      const DivisorData& f = data.at(step.name);
      if (f.ord.sign() > 0) out.entries.push_back({step.name, false, f.a, f.ord, (Rat(1) + f.a) / f.ord});
    }
  }

  if (out.entries.empty()) throw Inconsistent("witness divisor has no components");
  out.value = out.entries.front().bound;
  for (const auto& e : out.entries) out.value = min(out.value, e.bound);
  for (const auto& e : out.entries)
    if (e.bound == out.value) out.attaining.push_back(e.divisor);
  return out;
}

// ---------------------------------------------------------------------------
// Script expansion

namespace {

std::string format_affine(const Affine& a) {
  std::string out;
  for (const auto& [name, k] : a.terms) {
    const Rat mag = k.abs();
    if (out.empty()) out += k.sign() < 0 ? "-" : "";
    else out += k.sign() < 0 ? " - " : " + ";
    if (mag != Rat(1)) out += mag.str() + "*";
    out += name;
  }
  if (!a.constant.is_zero() || out.empty()) {
    const Rat mag = a.constant.abs();
    if (out.empty()) out = a.constant.str();
    else out += (a.constant.sign() < 0 ? " - " : " + ") + mag.str();
  }
  return out;
}

std::vector<std::string> chain_variables(int rank) {
  std::vector<std::string> v;
  for (int i = 1; i <= rank; ++i) v.push_back("a" + std::to_string(i));
  return v;
}

}  // namespace

std::vector<CaseNode> chain_case_branches(const ResolutionLattice& lattice) {
  if (!lattice.is_chain())
    throw UnsupportedProfile("chain case analysis needs an A_n point, got " + lattice.type().name());
  const int n = lattice.rank();
  const auto vars = chain_variables(n);
  const auto forms = exceptional_nef_rows(lattice, vars);
  std::vector<CaseNode> out;
  for (int j = 1; j <= n; ++j) {
    const std::string e = "E" + std::to_string(j);
    CaseNode seg;
    seg.label = "Q on " + e + " away from other exceptional curves";
    seg.rows.push_back({RowRule::Expr, format_affine(forms[j - 1]) + " > tau", {}, 0, {}, "C.Omega > 1 on " + e, false, {}});
    out.push_back(std::move(seg));
    if (j == n) break;
    const std::string f = "E" + std::to_string(j + 1);
    CaseNode node;
    node.label = "Q = " + e + " ∩ " + f;
    node.rows.push_back({RowRule::Expr, format_affine(forms[j - 1]) + " > tau - a" + std::to_string(j + 1), {}, 0, {},
                         "adjunction along " + e, false, {}});
    node.rows.push_back({RowRule::Expr, format_affine(forms[j]) + " > tau - a" + std::to_string(j), {}, 0, {},
                         "adjunction along " + f, false, {}});
    out.push_back(std::move(node));
  }
  return out;
}

ProofScript generate_case_tree(const ResolutionLattice& lattice, std::vector<ScriptRow> base, const Rat& tau_floor) {
  ProofScript s;
  s.mode = ScriptMode::Generated;
  s.tau_floor = tau_floor;
  s.tree.rows = std::move(base);
  s.tree.cases = chain_case_branches(lattice);
  return s;
}

namespace {

class Expander {
 public:
  Expander(const SurfaceModel& model, const ProofScript& script, const std::vector<std::string>& dropped)
      : model_(model), script_(script), dropped_(dropped.begin(), dropped.end()) {
    if (!script.point.empty()) {
      point_ = &model.point(script.point);
      lattice_.emplace(point_->type);
      out_.variables = chain_variables(point_->type.rank);
    }
    out_.variables.push_back("tau");
    for (const auto& v : script.variables) out_.variables.push_back(v);
  }

  ExpandedScript run() {
    Pending root;
    Row floor;
    floor.coeffs.assign(out_.variables.size(), Rat());
    floor.coeffs[tau_index()] = 1;
    floor.rhs = script_.tau_floor;
    floor.rel = script_.tau_strict ? Relation::Gt : Relation::Geq;
    floor.provenance = std::string("tau ") + (script_.tau_strict ? ">" : ">=") + " 1/omega";
    add(root, "tau-floor", floor.provenance, false, false, {floor});
    walk(script_.tree, "tree", root, {});
    return std::move(out_);
  }

 private:
  struct Pending {
    std::vector<Row> rows;
    std::vector<std::size_t> origins;
  };

  std::size_t tau_index() const { return static_cast<std::size_t>(point_ ? point_->type.rank : 0); }

  void add(Pending& into, const std::string& key, const std::string& cite, bool redundant, bool generated,
           std::vector<Row> rows) {
    if (dropped_.contains(key)) return;
    const std::size_t idx = out_.origins.size();
    out_.origins.push_back({key, cite, redundant, generated});
    for (auto& r : rows) {
      if (r.provenance.empty()) r.provenance = cite.empty() ? key : cite;
      into.rows.push_back(std::move(r));
      into.origins.push_back(idx);
    }
  }

  Row degree_row(int degree, const std::vector<int>& incidence, const std::string& provenance) const {
    if (!point_) throw Inconsistent("curve rows need a script point");
    if (incidence.size() != static_cast<std::size_t>(point_->type.rank))
      throw DimensionMismatch("incidence length differs from the rank at " + point_->id);
    Row r;
    r.coeffs.assign(out_.variables.size(), Rat());
    for (std::size_t i = 0; i < incidence.size(); ++i) r.coeffs[i] = Rat(-incidence[i]);
    r.rhs = Rat(-degree);
    r.provenance = provenance;
    return r;
  }

  void expand_row(const ScriptRow& r, const std::string& key, Pending& into) {
    switch (r.rule) {
      case RowRule::Expr:
        add(into, key, r.cite.empty() ? r.expr : r.cite, r.redundant, false,
            rows_from_constraint(parse_constraint(r.expr), out_.variables, r.cite.empty() ? r.expr : r.expr + "  [" + r.cite + "]"));
        break;
      case RowRule::Nef: {
        if (!lattice_) throw Inconsistent("nef rows need a script point");
        const auto forms = exceptional_nef_rows(*lattice_, chain_variables(lattice_->rank()));
        for (std::size_t j = 0; j < forms.size(); ++j) {
          const int node = static_cast<int>(j + 1);
          const bool redundant = r.redundant || std::find(r.redundant_nodes.begin(), r.redundant_nodes.end(), node) !=
                                                    r.redundant_nodes.end();
          Constraint c{forms[j], Comparison::Ge, Affine::number(0)};
          const std::string prov = "E" + std::to_string(node) + ".D >= 0";
          add(into, key + "/E" + std::to_string(node), prov, redundant, false,
              rows_from_constraint(c, out_.variables, prov));
        }
        break;
      }
      case RowRule::Curve: {
        const NamedCurve& c = model_.curve(r.curve);
        const std::string prov = r.curve + ".D >= 0";
        add(into, key, prov, r.redundant, false,
            {degree_row(c.degree, c.incidence_at(point_ ? point_->id : std::string(), point_ ? point_->type.rank : 0),
                        prov)});
        break;
      }
      case RowRule::Class: {
        const std::string prov = "H.D >= 0 (degree " + std::to_string(r.degree) + " class)";
        add(into, key, prov, r.redundant, false, {degree_row(r.degree, r.incidence, prov)});
        break;
      }
    }
  }

  void walk(const CaseNode& node, const std::string& path, Pending acc, const std::string& label) {
    for (std::size_t i = 0; i < node.rows.size(); ++i)
      expand_row(node.rows[i], path + ".rows[" + std::to_string(i) + "]", acc);
    const std::string here = node.label.empty() ? label : (label.empty() ? node.label : label + " / " + node.label);

    const bool attach_chain = node.chain_cases || (script_.mode == ScriptMode::Generated && node.cases.empty());
    if (attach_chain) {
      if (!lattice_) throw UnsupportedProfile("chain cases need a script point");
      const auto branches = chain_case_branches(*lattice_);
      for (std::size_t b = 0; b < branches.size(); ++b) {
        Pending leaf = acc;
        const std::string bpath = path + ".chain[" + std::to_string(b) + "]";
        for (std::size_t i = 0; i < branches[b].rows.size(); ++i) {
          const ScriptRow& r = branches[b].rows[i];
          add(leaf, bpath + ".rows[" + std::to_string(i) + "]", r.cite, false, true,
              rows_from_constraint(parse_constraint(r.expr), out_.variables, r.expr));
        }
        emit(leaf, here.empty() ? branches[b].label : here + " / " + branches[b].label);
      }
      return;
    }
    if (node.cases.empty()) {
      emit(acc, here.empty() ? "root" : here);
      return;
    }
    for (std::size_t c = 0; c < node.cases.size(); ++c)
      walk(node.cases[c], path + ".cases[" + std::to_string(c) + "]", acc, here);
  }

  void emit(Pending& p, const std::string& label) {
    Leaf leaf;
    leaf.label = label;
    leaf.system.variables = out_.variables;
    leaf.system.rows = std::move(p.rows);
    leaf.origins = std::move(p.origins);
    out_.leaves.push_back(std::move(leaf));
  }

  const SurfaceModel& model_;
  const ProofScript& script_;
  std::set<std::string> dropped_;
  const SingularPoint* point_ = nullptr;
  std::optional<ResolutionLattice> lattice_;
  ExpandedScript out_;
};

}  // namespace

ExpandedScript expand_script(const SurfaceModel& model, const ProofScript& script) {
  return Expander(model, script, {}).run();
}

ExpandedScript expand_script_without(const SurfaceModel& model, const ProofScript& script,
                                     const std::vector<std::string>& dropped) {
  return Expander(model, script, dropped).run();
}

LowerBoundResult verify_expanded(const ExpandedScript& expanded, const std::vector<Assumption>& assumptions) {
  LowerBoundResult out;
  out.assumptions = assumptions;
  out.verified = !expanded.leaves.empty();
  for (const auto& leaf : expanded.leaves) {
    FeasibilityResult r = check_feasibility(leaf.system);
    if (!is_infeasible(r)) out.verified = false;
    out.leaves.push_back({leaf.label, leaf.system, std::move(r)});
  }
  return out;
}

LowerBoundResult verify_lower_bound_script(const SurfaceModel& model, const ProofScript& script) {
  return verify_expanded(expand_script(model, script), script.assumptions);
}

namespace {

bool row_less(const Row& a, const Row& b) {
  if (a.coeffs != b.coeffs)
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
  if (a.rhs != b.rhs) return a.rhs < b.rhs;
  return a.rel < b.rel;
}

bool case_less(const std::vector<Row>& a, const std::vector<Row>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), row_less);
}

std::vector<Row> substitute_tau(std::vector<Row> rows, const std::vector<std::string>& variables, const Rat& tau) {
  const auto it = std::find(variables.begin(), variables.end(), "tau");
  if (it == variables.end()) return rows;
  const auto t = static_cast<std::size_t>(it - variables.begin());
  for (auto& r : rows) {
    r.rhs -= r.coeffs[t] * tau;
    r.coeffs[t] = 0;
  }
  return rows;
}

std::vector<std::vector<Row>> sorted_cases(std::vector<std::vector<Row>> cases) {
  for (auto& c : cases) c = canonical_row_set(c);
  std::sort(cases.begin(), cases.end(), case_less);
  return cases;
}

}  // namespace

std::vector<std::vector<Row>> canonical_case_list(const std::vector<std::vector<std::string>>& cases,
                                                  const std::vector<std::string>& variables, const Rat& tau) {
  std::vector<std::vector<Row>> out;
  for (const auto& line : cases) {
    std::vector<Row> rows;
    for (const auto& text : line)
      for (auto& r : rows_from_constraint(parse_constraint(text), variables, text)) rows.push_back(std::move(r));
    out.push_back(substitute_tau(std::move(rows), variables, tau));
  }
  return sorted_cases(std::move(out));
}

std::vector<std::vector<Row>> canonical_case_list(const std::vector<CaseNode>& cases,
                                                  const std::vector<std::string>& variables, const Rat& tau) {
  std::vector<std::vector<std::string>> lines;
  for (const auto& c : cases) {
    std::vector<std::string> line;
    for (const auto& r : c.rows) {
      if (r.rule != RowRule::Expr) throw UnsupportedProfile("case lists compare expression rows only");
      line.push_back(r.expr);
    }
    lines.push_back(std::move(line));
  }
  return canonical_case_list(lines, variables, tau);
}

// ---------------------------------------------------------------------------
// Cases

CaseResult compute_case_threshold(const CaseFixture& fixture) {
  CaseResult out;
  out.name = fixture.name;
  out.source = fixture.source;
  out.profile = fixture.model.profile;
  if (!fixture.expected_omega) throw Inconsistent(fixture.name + ": fixture has no expected_omega");
  if (!fixture.witness) throw Inconsistent(fixture.name + ": fixture has no witness");
  if (!fixture.script) throw Inconsistent(fixture.name + ": fixture has no proof script");
  out.expected = *fixture.expected_omega;
  out.findings = validate_fixture(fixture);

  out.upper = witness_lct_upper(fixture.model, *fixture.witness);
  bool aux_ok = true;
  for (const auto& a : fixture.aux_witnesses) {
    AuxResult r{a.name, witness_lct_upper(fixture.model, a.witness), a.expected, false};
    r.matches = r.bound.value == a.expected;
    aux_ok = aux_ok && r.matches;
    out.aux.push_back(std::move(r));
  }
  out.lower = verify_lower_bound_script(fixture.model, *fixture.script);
  out.verified = out.findings.empty() && out.upper.value == out.expected && aux_ok && out.lower.verified;
  return out;
}

namespace {

struct ClauseRule {
  TableClause clause;
  std::function<bool(const SingularityProfile&)> matches;
};

const std::vector<ClauseRule>& clause_rules() {
  static const std::vector<ClauseRule> rules = [] {
    auto P = [](const char* s) { return SingularityProfile::parse(s); };
    std::vector<ClauseRule> r;
    r.push_back({{"Sigma = {A1}", Rat(2, 3)}, [P](const SingularityProfile& s) { return s == P("A1"); }});
    r.push_back({{"Sigma contains A4", Rat(1, 3)}, [P](const SingularityProfile& s) { return s.contains(P("A4")); }});
    r.push_back({{"Sigma = {D4}", Rat(1, 3)}, [P](const SingularityProfile& s) { return s == P("D4"); }});
    r.push_back(
        {{"Sigma contains {A2, A2}", Rat(1, 3)}, [P](const SingularityProfile& s) { return s.contains(P("A2,A2")); }});
    r.push_back({{"Sigma contains A5", Rat(1, 4)}, [P](const SingularityProfile& s) { return s.contains(P("A5")); }});
    r.push_back({{"Sigma = {D5}", Rat(1, 4)}, [P](const SingularityProfile& s) { return s == P("D5"); }});
    r.push_back({{"Sigma = {E6}", Rat(1, 6)}, [P](const SingularityProfile& s) { return s == P("E6"); }});
    r.push_back({{"other cases", Rat(1, 2)}, [](const SingularityProfile&) { return true; }});
    return r;
  }();
  return rules;
}

// Du Val profiles occurring on normal cubic surfaces (Bruce–Wall list).
const std::vector<SingularityProfile>& admissible_profiles() {
  static const std::vector<SingularityProfile> list = [] {
    std::vector<SingularityProfile> v;
    for (const char* s : {"A1", "2A1", "A2", "3A1", "A2,A1", "A3", "4A1", "A2,2A1", "A3,A1", "2A2", "A4", "D4",
                          "A3,2A1", "2A2,A1", "A4,A1", "A5", "D5", "3A2", "A5,A1", "E6"})
      v.push_back(SingularityProfile::parse(s));
    return v;
  }();
  return list;
}

}  // namespace

const std::vector<TableClause>& table_clauses() {
  static const std::vector<TableClause> clauses = [] {
    std::vector<TableClause> v;
    for (const auto& r : clause_rules()) v.push_back(r.clause);
    return v;
  }();
  return clauses;
}

std::size_t classify_profile(const SingularityProfile& profile) {
  if (profile.entries.empty()) throw UnsupportedProfile("the table covers singular cubic surfaces only");
  const auto& rules = clause_rules();
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rules[i].matches(profile)) return i;
  return rules.size() - 1;
}

Rat table_value(const SingularityProfile& profile) { return table_clauses()[classify_profile(profile)].omega; }

std::vector<TableRow> assemble_table(const std::vector<CaseResult>& results) {
  std::vector<TableRow> rows;
  for (const auto& c : table_clauses()) rows.push_back({c, {}, true, false});
  for (const auto& r : results) {
    const std::size_t i = classify_profile(r.profile);
    if (r.verified && (r.expected != rows[i].clause.omega || r.upper.value != rows[i].clause.omega))
      throw Inconsistent("case " + r.name + " (" + r.profile.str() + ") verified at " + r.upper.value.str() +
                         " but the clause '" + rows[i].clause.label + "' gives " + rows[i].clause.omega.str());
    rows[i].cases.push_back(&r);
    rows[i].all_verified = rows[i].all_verified && r.verified;
  }
  for (const auto& p : admissible_profiles()) {
    const std::size_t i = classify_profile(p);
    const bool covered = std::any_of(rows[i].cases.begin(), rows[i].cases.end(),
                                     [&](const CaseResult* r) { return r->profile == p; });
    if (!covered) rows[i].asserted_without_fixture = true;
  }
  for (auto& row : rows) {
    std::sort(row.cases.begin(), row.cases.end(),
              [](const CaseResult* a, const CaseResult* b) { return a->profile < b->profile; });
    if (row.cases.empty()) row.all_verified = false;
  }
  return rows;
}

const char* ke_verdict_name(KEVerdict v) { return v == KEVerdict::KECertified ? "KECertified" : "Inconclusive"; }

KEVerdict ke_criterion(const Rat& lct_value, int dimension) {
  if (dimension <= 0) throw DimensionMismatch("dimension must be positive");
  return lct_value > Rat(dimension, dimension + 1) ? KEVerdict::KECertified : KEVerdict::Inconclusive;
}

}  // namespace lct
