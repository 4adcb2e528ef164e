#include "lct/surface.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "lct/errors.hpp"
#include "yaml_fields.hpp"

namespace lct {

// ---------------------------------------------------------------------------
// Profiles, curves, divisors

SingularityProfile SingularityProfile::of(std::vector<AdeType> types) {
  std::sort(types.begin(), types.end());
  return {std::move(types)};
}

SingularityProfile SingularityProfile::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty() || s == "smooth" || s == "{}") return {};
  std::vector<AdeType> types;
  std::size_t i = 0;
  auto fail = [&] { return UnsupportedType("cannot read singularity profile '" + std::string(text) + "'"); };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ',' || c == '+' || c == '{' || c == '}' || c == '[' || c == ']') {
      ++i;
      continue;
    }
    int count = 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      count = std::stoi(s.substr(i, j - i));
      i = j;
    }
    if (i >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i]))) throw fail();
    std::size_t j = i + 1;
    if (j < s.size() && s[j] == '_') ++j;
    const std::size_t digits = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == digits) throw fail();
    const AdeType t = AdeType::parse(s.substr(i, j - i));
    for (int k = 0; k < count; ++k) types.push_back(t);
    i = j;
  }
  return of(std::move(types));
}

std::string SingularityProfile::str() const {
  if (entries.empty()) return "smooth";
  std::string out;
  for (const auto& t : entries) {
    if (!out.empty()) out += ',';
    out += t.name();
  }
  return out;
}

std::size_t SingularityProfile::count(const AdeType& t) const {
  return static_cast<std::size_t>(std::count(entries.begin(), entries.end(), t));
}

bool SingularityProfile::contains(const SingularityProfile& other) const {
  for (const auto& t : other.entries)
    if (count(t) < other.count(t)) return false;
  return true;
}

const char* curve_kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::Line: return "line";
    case CurveKind::Conic: return "conic";
    case CurveKind::Cubic: return "cubic";
  }
  return "?";
}

int curve_kind_degree(CurveKind k) {
  switch (k) {
    case CurveKind::Line: return 1;
    case CurveKind::Conic: return 2;
    case CurveKind::Cubic: return 3;
  }
  return 0;
}

int curve_kind_genus(CurveKind k) { return k == CurveKind::Cubic ? 1 : 0; }

std::vector<int> NamedCurve::incidence_at(const std::string& point, int rank) const {
  auto it = incidence.find(point);
  if (it == incidence.end()) return std::vector<int>(static_cast<std::size_t>(rank), 0);
  return it->second;
}

BoundaryDivisor BoundaryDivisor::parse(std::string_view text) {
  const Affine a = parse_affine(text);
  if (!a.constant.is_zero()) throw ParseError("", "divisor '" + std::string(text) + "' has a constant term");
  BoundaryDivisor d;
  for (const auto& [curve, m] : a.terms) {
    if (m.sign() < 0) throw ParseError("", "divisor '" + std::string(text) + "' has a negative multiplicity");
    d.terms.push_back({m, curve});
  }
  return d;
}

std::string BoundaryDivisor::str() const {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    if (t.multiplicity != Rat(1)) out += t.multiplicity.str() + "*";
    out += t.curve;
  }
  return out.empty() ? "0" : out;
}

Rat BoundaryDivisor::multiplicity(const std::string& curve) const {
  Rat m;
  for (const auto& t : terms)
    if (t.curve == curve) m += t.multiplicity;
  return m;
}

BoundaryDivisor BoundaryDivisor::normalized() const {
  std::map<std::string, Rat> merged;
  for (const auto& t : terms) merged[t.curve] += t.multiplicity;
  BoundaryDivisor d;
  for (const auto& [curve, m] : merged)
    if (!m.is_zero()) d.terms.push_back({m, curve});
  return d;
}

// ---------------------------------------------------------------------------
// SurfaceModel

const SingularPoint* SurfaceModel::find_point(std::string_view id) const {
  for (const auto& p : points)
    if (p.id == id) return &p;
  return nullptr;
}

const NamedCurve* SurfaceModel::find_curve(std::string_view id) const {
  for (const auto& c : curves)
    if (c.id == id) return &c;
  return nullptr;
}

const SingularPoint& SurfaceModel::point(std::string_view id) const {
  if (const auto* p = find_point(id)) return *p;
  throw DanglingReference("unknown singular point '" + std::string(id) + "'");
}

const NamedCurve& SurfaceModel::curve(std::string_view id) const {
  if (const auto* c = find_curve(id)) return *c;
  throw DanglingReference("unknown curve '" + std::string(id) + "'");
}

namespace {
std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}
}  // namespace

Rat SurfaceModel::resolution_pairwise(const std::string& a, const std::string& b) const {
  auto it = pairwise.find(ordered(a, b));
  return it == pairwise.end() ? Rat(0) : it->second;
}

void SurfaceModel::set_pairwise(const std::string& a, const std::string& b, const Rat& value) {
  if (value.is_zero()) pairwise.erase(ordered(a, b));
  else pairwise[ordered(a, b)] = value;
}

PullbackVector SurfaceModel::pullback(const std::string& curve_id, const std::string& point_id) const {
  const SingularPoint& p = point(point_id);
  const NamedCurve& c = curve(curve_id);
  return pullback_coefficients(p.lattice(), c.incidence_at(p.id, p.type.rank), c.id);
}

Rat SurfaceModel::intersection(const std::string& a, const std::string& b) const {
  const NamedCurve& ca = curve(a);
  const NamedCurve& cb = curve(b);
  Rat value = a == b ? Rat(2 * curve_kind_genus(ca.kind) - 2 + ca.degree) : resolution_pairwise(a, b);
  for (const auto& p : points) {
    const auto inc_a = ca.incidence.find(p.id);
    const auto inc_b = cb.incidence.find(p.id);
    if (inc_a == ca.incidence.end() || inc_b == cb.incidence.end()) continue;
    const QVector c = pullback_coefficients(p.lattice(), inc_a->second).coefficients;
    for (std::size_t i = 0; i < c.size(); ++i) value += c[i] * Rat(inc_b->second[i]);
  }
  return value;
}

// ---------------------------------------------------------------------------
// YAML loading

namespace {

using namespace yamlf;

WitnessSpec witness(const YAML::Node& n, const std::string& field) {
  expect_map(n, field);
  allow_keys(n, field, {"divisor", "tower", "non_snc", "cite", "name", "expected"});
  WitnessSpec w;
  w.divisor = divisor(need(n, "divisor", field), field + ".divisor");
  w.cite = text_or(n, "cite", field);
  if (const YAML::Node t = n["tower"]) {
    expect_seq(t, field + ".tower");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string f = field + ".tower[" + std::to_string(i) + "]";
      expect_map(t[i], f);
      allow_keys(t[i], f, {"name", "through", "multiplicity"});
      BlowupStep step;
      step.name = text(need(t[i], "name", f), f + ".name");
      if (t[i]["through"]) step.through = string_list(t[i]["through"], f + ".through");
      if (const YAML::Node m = t[i]["multiplicity"]) {
        expect_map(m, f + ".multiplicity");
        for (const auto& kv : m) step.multiplicity[kv.first.as<std::string>()] = rational(kv.second, f + ".multiplicity");
      }
      w.tower.push_back(std::move(step));
    }
  }
  if (n["non_snc"]) w.non_snc = string_list(n["non_snc"], field + ".non_snc");
  return w;
}

ScriptRow script_row(const YAML::Node& n, const std::string& field) {
  ScriptRow r;
  if (n.IsScalar()) {
    r.expr = n.Scalar();
    return r;
  }
  expect_map(n, field);
  allow_keys(n, field, {"expr", "rule", "curve", "degree", "incidence", "cite", "redundant", "redundant_nodes"});
  r.cite = text_or(n, "cite", field);
  if (n["redundant"]) r.redundant = boolean(n["redundant"], field + ".redundant");
  if (n["redundant_nodes"]) r.redundant_nodes = int_list(n["redundant_nodes"], field + ".redundant_nodes");
  const std::string rule = text_or(n, "rule", field, "expr");
  if (rule == "expr") {
    r.rule = RowRule::Expr;
    r.expr = text(need(n, "expr", field), field + ".expr");
  } else if (rule == "nef") {
    r.rule = RowRule::Nef;
  } else if (rule == "curve") {
    r.rule = RowRule::Curve;
    r.curve = text(need(n, "curve", field), field + ".curve");
  } else if (rule == "class") {
    r.rule = RowRule::Class;
    r.degree = integer(need(n, "degree", field), field + ".degree");
    r.incidence = int_list(need(n, "incidence", field), field + ".incidence");
  } else {
    throw ParseError(where(n, field), "unknown row rule '" + rule + "'");
  }
  return r;
}

CaseNode case_node(const YAML::Node& n, const std::string& field) {
  expect_map(n, field);
  allow_keys(n, field, {"label", "rows", "cases", "chain_cases"});
  CaseNode node;
  node.label = text_or(n, "label", field);
  if (const YAML::Node rows = n["rows"]) {
    expect_seq(rows, field + ".rows");
    for (std::size_t i = 0; i < rows.size(); ++i)
      node.rows.push_back(script_row(rows[i], field + ".rows[" + std::to_string(i) + "]"));
  }
  if (const YAML::Node cases = n["cases"]) {
    expect_seq(cases, field + ".cases");
    for (std::size_t i = 0; i < cases.size(); ++i)
      node.cases.push_back(case_node(cases[i], field + ".cases[" + std::to_string(i) + "]"));
  }
  if (n["chain_cases"]) node.chain_cases = boolean(n["chain_cases"], field + ".chain_cases");
  if (node.chain_cases && !node.cases.empty())
    throw ParseError(where(n, field), "a node with chain_cases cannot also list cases");
  return node;
}

ProofScript script(const YAML::Node& n, const std::string& field) {
  expect_map(n, field);
  allow_keys(n, field, {"mode", "point", "tau", "variables", "assumptions", "tree", "displayed_cases"});
  ProofScript s;
  const std::string mode = text(need(n, "mode", field), field + ".mode");
  if (mode == "generated") s.mode = ScriptMode::Generated;
  else if (mode == "transcribed") s.mode = ScriptMode::Transcribed;
  else throw ParseError(where(n, field + ".mode"), "mode must be generated or transcribed");
  s.point = text_or(n, "point", field);
  const YAML::Node tau = need(n, "tau", field);
  expect_map(tau, field + ".tau");
  allow_keys(tau, field + ".tau", {"floor", "strict"});
  s.tau_floor = rational(need(tau, "floor", field + ".tau"), field + ".tau.floor");
  if (tau["strict"]) s.tau_strict = boolean(tau["strict"], field + ".tau.strict");
  if (n["variables"]) s.variables = string_list(n["variables"], field + ".variables");
  if (n["assumptions"]) s.assumptions = assumptions(n["assumptions"], field + ".assumptions");
  s.tree = case_node(need(n, "tree", field), field + ".tree");
  if (const YAML::Node d = n["displayed_cases"]) {
    expect_seq(d, field + ".displayed_cases");
    for (std::size_t i = 0; i < d.size(); ++i)
      s.displayed_cases.push_back(string_list(d[i], field + ".displayed_cases[" + std::to_string(i) + "]"));
  }
  return s;
}

GroupSpec group(const YAML::Node& n, const std::string& field) {
  expect_map(n, field);
  allow_keys(n, field, {"name", "order", "generators", "labels", "faithful"});
  GroupSpec g;
  g.name = text(need(n, "name", field), field + ".name");
  g.order = integer(need(n, "order", field), field + ".order");
  if (n["faithful"]) g.faithful = boolean(n["faithful"], field + ".faithful");
  if (n["labels"]) g.labels = string_list(n["labels"], field + ".labels");
  const YAML::Node gens = need(n, "generators", field);
  expect_seq(gens, field + ".generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string f = field + ".generators[" + std::to_string(i) + "]";
    expect_map(gens[i], f);
    std::map<std::string, std::string> perm;
    for (const auto& kv : gens[i]) perm[kv.first.as<std::string>()] = text(kv.second, f);
    g.generators.push_back(std::move(perm));
  }
  return g;
}

void check_divisor_refs(const SurfaceModel& m, const BoundaryDivisor& d, const std::string& field) {
  for (const auto& t : d.terms)
    if (!m.find_curve(t.curve)) throw DanglingReference(field + ": unknown curve '" + t.curve + "'");
}

void check_row_refs(const SurfaceModel& m, const CaseNode& node, const std::string& field) {
  for (const auto& r : node.rows)
    if (r.rule == RowRule::Curve && !m.find_curve(r.curve))
      throw DanglingReference(field + ": row refers to unknown curve '" + r.curve + "'");
  for (const auto& c : node.cases) check_row_refs(m, c, field);
}

}  // namespace

CaseFixture load_fixture(std::string_view yaml_text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ParseError("line " + std::to_string(e.mark.line + 1), e.msg);
  }
  if (!root || root.IsNull()) throw ParseError("document", "empty fixture");
  expect_map(root, "document");
  allow_keys(root, "document",
             {"name", "expected_omega", "profile", "points", "curves", "equivalences", "witness", "aux_witnesses",
              "script", "group", "invariant_divisor", "elimination", "assumptions", "anticanonical_degree"});

  CaseFixture f;
  f.source = source;
  try {
    f.name = text_or(root, "name", "name");
    if (root["expected_omega"]) f.expected_omega = rational(root["expected_omega"], "expected_omega");
    if (root["anticanonical_degree"])
      f.model.anticanonical_degree = integer(root["anticanonical_degree"], "anticanonical_degree");

    const YAML::Node profile = need(root, "profile", "document");
    try {
      if (profile.IsSequence()) {
        std::vector<AdeType> types;
        for (std::size_t i = 0; i < profile.size(); ++i) types.push_back(AdeType::parse(text(profile[i], "profile")));
        f.model.profile = SingularityProfile::of(std::move(types));
      } else {
        f.model.profile = SingularityProfile::parse(text(profile, "profile"));
      }
    } catch (const UnsupportedType& e) {
      throw ParseError(where(profile, "profile"), e.what());
    }

    if (const YAML::Node points = root["points"]) {
      expect_map(points, "points");
      for (const auto& kv : points) {
        const std::string id = kv.first.as<std::string>();
        const std::string field = "points." + id;
        SingularPoint p;
        p.id = id;
        std::string type_text;
        if (kv.second.IsScalar()) {
          type_text = kv.second.Scalar();
        } else {
          expect_map(kv.second, field);
          allow_keys(kv.second, field, {"type", "orientation"});
          type_text = text(need(kv.second, "type", field), field + ".type");
          const std::string orientation = text_or(kv.second, "orientation", field, "forward");
          if (orientation == "reversed") p.reversed = true;
          else if (orientation != "forward")
            throw ParseError(where(kv.second, field), "orientation must be forward or reversed");
        }
        try {
          p.type = AdeType::parse(type_text);
        } catch (const UnsupportedType& e) {
          throw ParseError(where(kv.second, field + ".type"), e.what());
        }
        if (p.reversed && p.type.family != Family::A)
          throw ParseError(where(kv.second, field), "only A_n chains can be reversed");
        if (f.model.find_point(id)) throw ParseError(where(kv.first, field), "duplicate point");
        f.model.points.push_back(p);
      }
    }

    const YAML::Node curves = need(root, "curves", "document");
    expect_seq(curves, "curves");
    std::vector<std::tuple<std::string, std::string, Rat, YAML::Node>> meets;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const YAML::Node c = curves[i];
      const std::string field = "curves[" + std::to_string(i) + "]";
      expect_map(c, field);
      allow_keys(c, field, {"id", "kind", "incidence", "meets", "cite", "degree"});
      NamedCurve nc;
      nc.id = text(need(c, "id", field), field + ".id");
      const std::string kind = text_or(c, "kind", field, "line");
      if (kind == "line") nc.kind = CurveKind::Line;
      else if (kind == "conic") nc.kind = CurveKind::Conic;
      else if (kind == "cubic") nc.kind = CurveKind::Cubic;
      else throw ParseError(where(c, field + ".kind"), "kind must be line, conic or cubic");
      nc.degree = c["degree"] ? integer(c["degree"], field + ".degree") : curve_kind_degree(nc.kind);
      nc.cite = text_or(c, "cite", field);
      if (const YAML::Node inc = c["incidence"]) {
        expect_map(inc, field + ".incidence");
        for (const auto& kv : inc) {
          const std::string pid = kv.first.as<std::string>();
          const SingularPoint* p = f.model.find_point(pid);
          if (!p) throw DanglingReference(field + ".incidence: unknown point '" + pid + "'");
          std::vector<int> v = int_list(kv.second, field + ".incidence." + pid);
          if (p->reversed) std::reverse(v.begin(), v.end());
          nc.incidence[pid] = std::move(v);
        }
      }
      if (const YAML::Node m = c["meets"]) {
        expect_map(m, field + ".meets");
        for (const auto& kv : m)
          meets.emplace_back(nc.id, kv.first.as<std::string>(), rational(kv.second, field + ".meets"), kv.second);
      }
      if (f.model.find_curve(nc.id)) throw ParseError(where(c, field + ".id"), "duplicate curve '" + nc.id + "'");
      f.model.curves.push_back(std::move(nc));
    }
    for (const auto& [a, b, value, node] : meets) {
      if (!f.model.find_curve(b)) throw DanglingReference("curve " + a + " meets unknown curve '" + b + "'");
      if (a == b) throw ParseError(where(node, "meets"), "a curve cannot list itself under meets");
      auto key = ordered(a, b);
      auto it = f.model.pairwise.find(key);
      if (it != f.model.pairwise.end() && it->second != value)
        throw ParseError(where(node, "meets"), "conflicting intersection numbers for " + a + " and " + b);
      f.model.set_pairwise(a, b, value);
    }

    if (const YAML::Node eqs = root["equivalences"]) {
      expect_seq(eqs, "equivalences");
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        const std::string field = "equivalences[" + std::to_string(i) + "]";
        Equivalence e;
        if (eqs[i].IsScalar()) {
          e.divisor = divisor(eqs[i], field);
        } else {
          expect_map(eqs[i], field);
          allow_keys(eqs[i], field, {"divisor", "cite"});
          e.divisor = divisor(need(eqs[i], "divisor", field), field + ".divisor");
          e.cite = text_or(eqs[i], "cite", field);
        }
        check_divisor_refs(f.model, e.divisor, field);
        f.model.equivalences.push_back(std::move(e));
      }
    }

    if (const YAML::Node w = root["witness"]) {
      f.witness = witness(w, "witness");
      check_divisor_refs(f.model, f.witness->divisor, "witness");
    }
    if (const YAML::Node aux = root["aux_witnesses"]) {
      expect_seq(aux, "aux_witnesses");
      for (std::size_t i = 0; i < aux.size(); ++i) {
        const std::string field = "aux_witnesses[" + std::to_string(i) + "]";
        AuxWitness a;
        a.witness = witness(aux[i], field);
        a.name = text_or(aux[i], "name", field);
        a.expected = rational(need(aux[i], "expected", field), field + ".expected");
        check_divisor_refs(f.model, a.witness.divisor, field);
        f.aux_witnesses.push_back(std::move(a));
      }
    }
    if (const YAML::Node s = root["script"]) {
      f.script = script(s, "script");
      if (!f.script->point.empty() && !f.model.find_point(f.script->point))
        throw DanglingReference("script: unknown point '" + f.script->point + "'");
      check_row_refs(f.model, f.script->tree, "script");
    }
    if (const YAML::Node g = root["group"]) {
      f.group = group(g, "group");
      std::set<std::string> known;
      for (const auto& c : f.model.curves) known.insert(c.id);
      for (const auto& p : f.model.points) known.insert(p.id);
      for (const auto& l : f.group->labels) known.insert(l);
      for (const auto& gen : f.group->generators)
        for (const auto& [from, to] : gen)
          if (!known.contains(from) || !known.contains(to))
            throw DanglingReference("group generator refers to unknown label '" + (known.contains(from) ? to : from) + "'");
    }
    if (const YAML::Node d = root["invariant_divisor"]) {
      f.invariant_divisor = divisor(d, "invariant_divisor");
      check_divisor_refs(f.model, *f.invariant_divisor, "invariant_divisor");
    }
    if (const YAML::Node e = root["elimination"]) {
      expect_map(e, "elimination");
      allow_keys(e, "elimination", {"conic_residual_pairs"});
      EliminationSpec spec;
      if (const YAML::Node pairs = e["conic_residual_pairs"]) {
        expect_seq(pairs, "elimination.conic_residual_pairs");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          const auto pr = string_list(pairs[i], "elimination.conic_residual_pairs");
          if (pr.size() != 2) throw ParseError(where(pairs[i], "elimination"), "expected [conic, line]");
          if (!f.model.find_curve(pr[1])) throw DanglingReference("elimination: unknown line '" + pr[1] + "'");
          spec.conic_residual_pairs.emplace_back(pr[0], pr[1]);
        }
      }
      f.elimination = std::move(spec);
    }
    if (const YAML::Node a = root["assumptions"]) f.assumptions = assumptions(a, "assumptions");
  } catch (const YAML::Exception& e) {
    throw ParseError("line " + std::to_string(e.mark.line + 1), e.msg);
  }
  return f;
}

CaseFixture load_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open fixture");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return load_fixture(buf.str(), path);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.location(), std::string(e.what()).substr(e.location().empty() ? 0 : e.location().size() + 2));
  }
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void emit_assumptions(YAML::Emitter& out, const std::vector<Assumption>& as) {
  out << YAML::BeginSeq;
  for (const auto& a : as) {
    out << YAML::BeginMap << YAML::Key << "tag" << YAML::Value << a.tag;
    if (!a.cite.empty()) out << YAML::Key << "cite" << YAML::Value << YAML::DoubleQuoted << a.cite;
    if (!a.text.empty()) out << YAML::Key << "text" << YAML::Value << YAML::DoubleQuoted << a.text;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
}

void emit_witness_body(YAML::Emitter& out, const WitnessSpec& w) {
  out << YAML::Key << "divisor" << YAML::Value << YAML::DoubleQuoted << w.divisor.str();
  if (!w.cite.empty()) out << YAML::Key << "cite" << YAML::Value << YAML::DoubleQuoted << w.cite;
  if (!w.tower.empty()) {
    out << YAML::Key << "tower" << YAML::Value << YAML::BeginSeq;
    for (const auto& step : w.tower) {
      out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << step.name;
      out << YAML::Key << "through" << YAML::Value << YAML::Flow << step.through;
      if (!step.multiplicity.empty()) {
        out << YAML::Key << "multiplicity" << YAML::Value << YAML::Flow << YAML::BeginMap;
        for (const auto& [c, m] : step.multiplicity) out << YAML::Key << c << YAML::Value << m.str();
        out << YAML::EndMap;
      }
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!w.non_snc.empty()) out << YAML::Key << "non_snc" << YAML::Value << YAML::Flow << w.non_snc;
}

void emit_row(YAML::Emitter& out, const ScriptRow& r) {
  out << YAML::BeginMap;
  switch (r.rule) {
    case RowRule::Expr: out << YAML::Key << "expr" << YAML::Value << YAML::DoubleQuoted << r.expr; break;
    case RowRule::Nef: out << YAML::Key << "rule" << YAML::Value << "nef"; break;
    case RowRule::Curve:
      out << YAML::Key << "rule" << YAML::Value << "curve" << YAML::Key << "curve" << YAML::Value << r.curve;
      break;
    case RowRule::Class:
      out << YAML::Key << "rule" << YAML::Value << "class" << YAML::Key << "degree" << YAML::Value << r.degree;
      out << YAML::Key << "incidence" << YAML::Value << YAML::Flow << r.incidence;
      break;
  }
  if (!r.cite.empty()) out << YAML::Key << "cite" << YAML::Value << YAML::DoubleQuoted << r.cite;
  if (r.redundant) out << YAML::Key << "redundant" << YAML::Value << true;
  if (!r.redundant_nodes.empty())
    out << YAML::Key << "redundant_nodes" << YAML::Value << YAML::Flow << r.redundant_nodes;
  out << YAML::EndMap;
}

void emit_node(YAML::Emitter& out, const CaseNode& n) {
  out << YAML::BeginMap;
  if (!n.label.empty()) out << YAML::Key << "label" << YAML::Value << YAML::DoubleQuoted << n.label;
  if (!n.rows.empty()) {
    out << YAML::Key << "rows" << YAML::Value << YAML::BeginSeq;
    for (const auto& r : n.rows) emit_row(out, r);
    out << YAML::EndSeq;
  }
  if (!n.cases.empty()) {
    out << YAML::Key << "cases" << YAML::Value << YAML::BeginSeq;
    for (const auto& c : n.cases) emit_node(out, c);
    out << YAML::EndSeq;
  }
  if (n.chain_cases) out << YAML::Key << "chain_cases" << YAML::Value << true;
  out << YAML::EndMap;
}

}  // namespace

std::string serialize_fixture(const CaseFixture& f) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  if (!f.name.empty()) out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << f.name;
  if (f.expected_omega) out << YAML::Key << "expected_omega" << YAML::Value << f.expected_omega->str();
  if (f.model.anticanonical_degree != 3)
    out << YAML::Key << "anticanonical_degree" << YAML::Value << f.model.anticanonical_degree;
  out << YAML::Key << "profile" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& t : f.model.profile.entries) out << t.name();
  out << YAML::EndSeq;

  if (!f.model.points.empty()) {
    out << YAML::Key << "points" << YAML::Value << YAML::BeginMap;
    for (const auto& p : f.model.points) {
      out << YAML::Key << p.id << YAML::Value << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "type" << YAML::Value << p.type.name();
      out << YAML::Key << "orientation" << YAML::Value << (p.reversed ? "reversed" : "forward");
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }

  out << YAML::Key << "curves" << YAML::Value << YAML::BeginSeq;
  for (const auto& c : f.model.curves) {
    out << YAML::BeginMap << YAML::Key << "id" << YAML::Value << c.id;
    out << YAML::Key << "kind" << YAML::Value << curve_kind_name(c.kind);
    if (c.degree != curve_kind_degree(c.kind)) out << YAML::Key << "degree" << YAML::Value << c.degree;
    if (!c.incidence.empty()) {
      out << YAML::Key << "incidence" << YAML::Value << YAML::BeginMap;
      for (const auto& [pid, v] : c.incidence) {
        std::vector<int> written = v;
        const SingularPoint* p = f.model.find_point(pid);
        if (p && p->reversed) std::reverse(written.begin(), written.end());
        out << YAML::Key << pid << YAML::Value << YAML::Flow << written;
      }
      out << YAML::EndMap;
    }
    std::vector<std::pair<std::string, Rat>> meets;
    for (const auto& [key, value] : f.model.pairwise)
      if (key.first == c.id) meets.emplace_back(key.second, value);
    if (!meets.empty()) {
      out << YAML::Key << "meets" << YAML::Value << YAML::Flow << YAML::BeginMap;
      for (const auto& [other, value] : meets) out << YAML::Key << other << YAML::Value << value.str();
      out << YAML::EndMap;
    }
    if (!c.cite.empty()) out << YAML::Key << "cite" << YAML::Value << YAML::DoubleQuoted << c.cite;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  if (!f.model.equivalences.empty()) {
    out << YAML::Key << "equivalences" << YAML::Value << YAML::BeginSeq;
    for (const auto& e : f.model.equivalences) {
      out << YAML::BeginMap << YAML::Key << "divisor" << YAML::Value << YAML::DoubleQuoted << e.divisor.str();
      if (!e.cite.empty()) out << YAML::Key << "cite" << YAML::Value << YAML::DoubleQuoted << e.cite;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }

  if (f.witness) {
    out << YAML::Key << "witness" << YAML::Value << YAML::BeginMap;
    emit_witness_body(out, *f.witness);
    out << YAML::EndMap;
  }
  if (!f.aux_witnesses.empty()) {
    out << YAML::Key << "aux_witnesses" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : f.aux_witnesses) {
      out << YAML::BeginMap;
      if (!a.name.empty()) out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << a.name;
      emit_witness_body(out, a.witness);
      out << YAML::Key << "expected" << YAML::Value << a.expected.str();
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }

  if (f.script) {
    const ProofScript& s = *f.script;
    out << YAML::Key << "script" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "mode" << YAML::Value << (s.mode == ScriptMode::Generated ? "generated" : "transcribed");
    if (!s.point.empty()) out << YAML::Key << "point" << YAML::Value << s.point;
    out << YAML::Key << "tau" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "floor" << YAML::Value << s.tau_floor.str();
    out << YAML::Key << "strict" << YAML::Value << s.tau_strict << YAML::EndMap;
    if (!s.variables.empty()) out << YAML::Key << "variables" << YAML::Value << YAML::Flow << s.variables;
    if (!s.assumptions.empty()) {
      out << YAML::Key << "assumptions" << YAML::Value;
      emit_assumptions(out, s.assumptions);
    }
    out << YAML::Key << "tree" << YAML::Value;
    emit_node(out, s.tree);
    if (!s.displayed_cases.empty()) {
      out << YAML::Key << "displayed_cases" << YAML::Value << YAML::BeginSeq;
      for (const auto& line : s.displayed_cases) {
        out << YAML::Flow << YAML::BeginSeq;
        for (const auto& r : line) out << YAML::DoubleQuoted << r;
        out << YAML::EndSeq;
      }
      out << YAML::EndSeq;
    }
    out << YAML::EndMap;
  }

  if (f.group) {
    out << YAML::Key << "group" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << f.group->name;
    out << YAML::Key << "order" << YAML::Value << f.group->order;
    if (!f.group->faithful) out << YAML::Key << "faithful" << YAML::Value << false;
    if (!f.group->labels.empty()) out << YAML::Key << "labels" << YAML::Value << YAML::Flow << f.group->labels;
    out << YAML::Key << "generators" << YAML::Value << YAML::BeginSeq;
    for (const auto& gen : f.group->generators) out << YAML::Flow << gen;
    out << YAML::EndSeq << YAML::EndMap;
  }
  if (f.invariant_divisor)
    out << YAML::Key << "invariant_divisor" << YAML::Value << YAML::DoubleQuoted << f.invariant_divisor->str();
  if (f.elimination) {
    out << YAML::Key << "elimination" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "conic_residual_pairs" << YAML::Value << YAML::BeginSeq;
    for (const auto& [conic, line] : f.elimination->conic_residual_pairs)
      out << YAML::Flow << YAML::BeginSeq << conic << line << YAML::EndSeq;
    out << YAML::EndSeq << YAML::EndMap;
  }
  if (!f.assumptions.empty()) {
    out << YAML::Key << "assumptions" << YAML::Value;
    emit_assumptions(out, f.assumptions);
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

bool fixtures_equal(const CaseFixture& a, const CaseFixture& b) {
  return a.name == b.name && a.model == b.model && a.expected_omega == b.expected_omega && a.witness == b.witness &&
         a.aux_witnesses == b.aux_witnesses && a.script == b.script && a.group == b.group &&
         a.invariant_divisor == b.invariant_divisor && a.elimination == b.elimination &&
         a.assumptions == b.assumptions;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void validate_divisor_class(const SurfaceModel& m, const BoundaryDivisor& d, const std::string& what,
                            std::vector<std::string>& findings) {
  Rat degree;
  for (const auto& t : d.terms) {
    const NamedCurve* c = m.find_curve(t.curve);
    if (!c) {
      findings.push_back(what + ": unknown curve " + t.curve);
      return;
    }
    degree += t.multiplicity * Rat(c->degree);
  }
  if (degree != Rat(m.anticanonical_degree))
    findings.push_back(what + ": degree mismatch (" + degree.str() + " instead of " +
                       std::to_string(m.anticanonical_degree) + ")");
}

bool matches_equivalence(const SurfaceModel& m, const BoundaryDivisor& d) {
  const BoundaryDivisor n = d.normalized();
  return std::any_of(m.equivalences.begin(), m.equivalences.end(),
                     [&](const Equivalence& e) { return e.divisor.normalized() == n; });
}

void validate_witness(const CaseFixture& f, const WitnessSpec& w, const std::string& what,
                      std::vector<std::string>& findings) {
  if (!matches_equivalence(f.model, w.divisor))
    findings.push_back(what + ": divisor " + w.divisor.str() + " is not a declared anticanonical equivalence");
  if (!w.non_snc.empty() && w.tower.empty())
    findings.push_back(what + ": non-SNC points declared without a blowup tower");
  if (!w.tower.empty()) {
    std::map<std::string, DivisorData> seeds;
    for (const auto& p : f.model.points)
      for (int i = 1; i <= p.type.rank; ++i) seeds[p.id + ".E" + std::to_string(i)] = {};
    std::map<std::string, Rat> boundary;
    for (const auto& c : f.model.curves) boundary[c.id] = w.divisor.multiplicity(c.id);
    try {
      tower_log_discrepancy(w.tower, seeds, boundary);
    } catch (const MalformedTower& e) {
      findings.push_back(what + ": " + e.what());
    }
  }
}

void collect_rows(const CaseNode& n, std::vector<const ScriptRow*>& out) {
  for (const auto& r : n.rows) out.push_back(&r);
  for (const auto& c : n.cases) collect_rows(c, out);
}

bool has_chain_cases(const CaseNode& n) {
  if (n.chain_cases) return true;
  return std::any_of(n.cases.begin(), n.cases.end(), has_chain_cases);
}

void validate_script(const CaseFixture& f, std::vector<std::string>& findings) {
  const ProofScript& s = *f.script;
  const SingularPoint* point = s.point.empty() ? nullptr : f.model.find_point(s.point);
  if (!s.point.empty() && !point) findings.push_back("script: unknown point " + s.point);
  if (f.expected_omega && s.tau_floor != f.expected_omega->reciprocal())
    findings.push_back("script: tau floor " + s.tau_floor.str() + " is not 1/omega");
  if ((s.mode == ScriptMode::Generated || has_chain_cases(s.tree)) && (!point || point->type.family != Family::A))
    findings.push_back("script: chain cases need an A_n script point");

  std::vector<std::string> vars;
  if (point)
    for (int i = 1; i <= point->type.rank; ++i) vars.push_back("a" + std::to_string(i));
  vars.push_back("tau");
  for (const auto& v : s.variables) {
    if (std::find(vars.begin(), vars.end(), v) != vars.end()) findings.push_back("script: duplicate variable " + v);
    vars.push_back(v);
  }

  std::vector<const ScriptRow*> rows;
  collect_rows(s.tree, rows);
  for (const ScriptRow* r : rows) {
    switch (r->rule) {
      case RowRule::Expr:
        try {
          rows_from_constraint(parse_constraint(r->expr), vars, "");
        } catch (const Error& e) {
          findings.push_back("script row '" + r->expr + "': " + e.what());
        }
        break;
      case RowRule::Nef:
        if (!point) findings.push_back("script: nef rule without a script point");
        for (int node : r->redundant_nodes)
          if (!point || node < 1 || node > point->type.rank)
            findings.push_back("script: nef redundant node " + std::to_string(node) + " out of range");
        break;
      case RowRule::Curve: {
        const NamedCurve* c = f.model.find_curve(r->curve);
        if (!c) findings.push_back("script: unknown curve " + r->curve);
        else if (point && !c->incidence.contains(point->id))
          findings.push_back("script: curve " + r->curve + " does not pass through " + point->id);
        break;
      }
      case RowRule::Class:
        if (!point || r->incidence.size() != static_cast<std::size_t>(point->type.rank))
          findings.push_back("script: class row incidence has the wrong length");
        break;
    }
  }
  for (const auto& line : s.displayed_cases)
    for (const auto& r : line) try {
        rows_from_constraint(parse_constraint(r), vars, "");
      } catch (const Error& e) {
        findings.push_back("displayed case '" + r + "': " + e.what());
      }
}

}  // namespace

std::vector<std::string> validate_fixture(const CaseFixture& f) {
  std::vector<std::string> findings;
  const SurfaceModel& m = f.model;

  if (m.anticanonical_degree != 3) findings.push_back("anticanonical degree must be 3 for a cubic surface");
  std::vector<AdeType> point_types;
  for (const auto& p : m.points) point_types.push_back(p.type);
  if (SingularityProfile::of(point_types) != m.profile)
    findings.push_back("profile " + m.profile.str() + " does not match the declared points");

  for (const auto& c : m.curves) {
    if (c.degree != curve_kind_degree(c.kind))
      findings.push_back("curve " + c.id + ": degree " + std::to_string(c.degree) + " does not match kind " +
                         curve_kind_name(c.kind));
    for (const auto& [pid, v] : c.incidence) {
      const SingularPoint* p = m.find_point(pid);
      if (!p) {
        findings.push_back("curve " + c.id + ": unknown point " + pid);
        continue;
      }
      if (v.size() != static_cast<std::size_t>(p->type.rank))
        findings.push_back("curve " + c.id + ": incidence at " + pid + " has length " + std::to_string(v.size()) +
                           ", expected " + std::to_string(p->type.rank));
      if (std::any_of(v.begin(), v.end(), [](int x) { return x < 0; }))
        findings.push_back("curve " + c.id + ": negative incidence at " + pid);
    }
  }
  for (const auto& [key, value] : m.pairwise) {
    if (!m.find_curve(key.first) || !m.find_curve(key.second))
      findings.push_back("intersection declared for unknown curve");
    if (value.sign() < 0 || !value.is_integer())
      findings.push_back("curves " + key.first + " and " + key.second +
                         ": strict transforms must meet in a nonnegative integer");
  }
  if (!findings.empty()) return findings;  // intersection numbers below need sane data

  for (std::size_t i = 0; i < m.equivalences.size(); ++i) {
    const auto& e = m.equivalences[i];
    const std::string what = "equivalence " + e.divisor.str();
    validate_divisor_class(m, e.divisor, what, findings);
    // D ≡ −K_S forces D·C = deg C for every curve C; with the declared
    // incidences this also checks that each line is a (−1)-curve upstairs.
    for (const auto& c : m.curves) {
      Rat dot;
      for (const auto& t : e.divisor.terms) dot += t.multiplicity * m.intersection(t.curve, c.id);
      if (dot != Rat(c.degree))
        findings.push_back(what + ": intersection with " + c.id + " is " + dot.str() + ", expected " +
                           std::to_string(c.degree));
    }
  }

  if (f.witness) validate_witness(f, *f.witness, "witness", findings);
  for (const auto& a : f.aux_witnesses) validate_witness(f, a.witness, "aux witness " + a.name, findings);
  if (f.script) validate_script(f, findings);
  if (f.invariant_divisor) validate_divisor_class(m, *f.invariant_divisor, "invariant divisor", findings);
  return findings;
}

}  // namespace lct
