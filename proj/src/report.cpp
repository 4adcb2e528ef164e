#include "lct/report.hpp"

#include <fstream>
#include <sstream>

#include "lct/errors.hpp"

namespace lct {

Json rat_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (!j.is_string()) throw ParseError(field, "expected a rational string");
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const ZeroDenominator& e) {
    throw ParseError(field, e.what());
  } catch (const ParseError& e) {
    throw ParseError(field, e.what());
  }
}

namespace {

Json vector_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

QVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected a list");
  QVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rat_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

const Json& member(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw ParseError(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(field, std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> formatted_rows(const LinearSystem& s) {
  std::vector<std::string> out;
  for (const auto& r : s.rows) out.push_back(format_row(r, s.variables));
  return out;
}

Json assumptions_json(const std::vector<Assumption>& as) {
  Json out = Json::array();
  for (const auto& a : as) out.push_back({{"tag", a.tag}, {"cite", a.cite}, {"text", a.text}});
  return out;
}

}  // namespace

Json row_json(const Row& r) {
  Json j{{"coeffs", vector_json(r.coeffs)}, {"relation", relation_symbol(r.rel)}, {"rhs", rat_json(r.rhs)}};
  if (!r.provenance.empty()) j["provenance"] = r.provenance;
  return j;
}

Row row_from_json(const Json& j, std::size_t width, const std::string& field) {
  Row r;
  r.coeffs = vector_from_json(member(j, "coeffs", field), field + ".coeffs");
  if (r.coeffs.size() != width)
    throw ParseError(field, "row has " + std::to_string(r.coeffs.size()) + " coefficients, expected " +
                                std::to_string(width));
  const Json& rel = member(j, "relation", field);
  if (!rel.is_string()) throw ParseError(field + ".relation", "expected a string");
  try {
    r.rel = parse_relation(rel.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(field + ".relation", e.what());
  }
  r.rhs = rat_from_json(member(j, "rhs", field), field + ".rhs");
  if (auto it = j.find("provenance"); it != j.end() && it->is_string()) r.provenance = it->get<std::string>();
  return r;
}

Json system_json(const LinearSystem& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) rows.push_back(row_json(r));
  return {{"variables", s.variables}, {"rows", rows}};
}

LinearSystem system_from_json(const Json& j) {
  LinearSystem s;
  const Json& vars = member(j, "variables", "system");
  if (!vars.is_array()) throw ParseError("system.variables", "expected a list");
  for (const auto& v : vars) {
    if (!v.is_string()) throw ParseError("system.variables", "expected variable names");
    const std::string name = v.get<std::string>();
    if (s.index_of(name)) throw ParseError("system.variables", "duplicate variable '" + name + "'");
    s.variables.push_back(name);
  }
  const Json& rows = member(j, "rows", "system");
  if (!rows.is_array()) throw ParseError("system.rows", "expected a list");
  for (std::size_t i = 0; i < rows.size(); ++i)
    s.rows.push_back(row_from_json(rows[i], s.variables.size(), "system.rows[" + std::to_string(i) + "]"));
  return s;
}

Json certificate_json(const InfeasibilityCertificate& c, const std::vector<std::string>& variables) {
  Json j{{"multipliers", vector_json(c.multipliers)}, {"derived", row_json(c.derived)}};
  j["derived"]["text"] = format_row(c.derived, variables);
  return j;
}

InfeasibilityCertificate certificate_from_json(const Json& j, std::size_t rows, std::size_t width) {
  InfeasibilityCertificate c;
  c.multipliers = vector_from_json(member(j, "multipliers", "certificate"), "certificate.multipliers");
  if (c.multipliers.size() != rows)
    throw ParseError("certificate.multipliers", "expected " + std::to_string(rows) + " multipliers, got " +
                                                    std::to_string(c.multipliers.size()));
  if (auto it = j.find("derived"); it != j.end()) c.derived = row_from_json(*it, width, "certificate.derived");
  return c;
}

Json feasibility_json(const FeasibilityResult& r, const std::vector<std::string>& variables) {
  if (const auto* inf = std::get_if<Infeasible>(&r))
    return {{"status", "infeasible"}, {"certificate", certificate_json(inf->certificate, variables)}};
  const auto& f = std::get<Feasible>(r);
  Json point = Json::object();
  for (std::size_t i = 0; i < variables.size() && i < f.point.size(); ++i) point[variables[i]] = rat_json(f.point[i]);
  return {{"status", "feasible"}, {"point", point}};
}

Json pullback_json(const PullbackVector& p, const std::string& point) {
  return {{"curve", p.curve}, {"point", point}, {"incidence", p.incidence}, {"coefficients", vector_json(p.coefficients)}};
}

Json witness_json(const WitnessBound& w) {
  Json entries = Json::array();
  for (const auto& e : w.entries)
    entries.push_back({{"divisor", e.divisor},
                       {"discrepancy", rat_json(e.discrepancy)},
                       {"order", rat_json(e.order)},
                       {"bound", rat_json(e.bound)}});
  return {{"value", rat_json(w.value)}, {"minima", w.attaining}, {"entries", entries}};
}

Json case_json(const CaseResult& c) {
  Json upper = witness_json(c.upper);
  Json aux = Json::array();
  for (const auto& a : c.aux)
    aux.push_back({{"name", a.name}, {"value", rat_json(a.bound.value)}, {"expected", rat_json(a.expected)}, {"matches", a.matches}});
  Json leaves = Json::array();
  std::size_t certificates = 0;
  for (const auto& l : c.lower.leaves) {
    Json leaf{{"label", l.label}, {"rows", formatted_rows(l.system)}, {"system", system_json(l.system)}};
    const Json outcome = feasibility_json(l.outcome, l.system.variables);
    leaf["status"] = outcome["status"];
    if (is_infeasible(l.outcome)) {
      leaf["certificate"] = outcome["certificate"];
      ++certificates;
    } else {
      leaf["point"] = outcome["point"];
    }
    leaves.push_back(std::move(leaf));
  }
  Json j{{"name", c.name}, {"source", c.source}, {"profile", c.profile.str()}, {"omega", rat_json(c.upper.value)},
         {"expected", rat_json(c.expected)}, {"upper", upper}};
  if (!aux.empty()) j["upper"]["aux"] = aux;
  j["lower"] = {{"leaves", leaves}, {"certificates", certificates}, {"assumptions", assumptions_json(c.lower.assumptions)},
                {"verified", c.lower.verified}};
  j["findings"] = c.findings;
  j["verified"] = c.verified;
  return j;
}

Json table_json(const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json cases = Json::array();
    for (const auto* c : r.cases) cases.push_back({{"name", c->name}, {"profile", c->profile.str()}, {"verified", c->verified}});
    out.push_back({{"clause", r.clause.label},
                   {"omega", rat_json(r.clause.omega)},
                   {"cases", cases},
                   {"all_verified", r.all_verified},
                   {"asserted_without_fixture", r.asserted_without_fixture}});
  }
  return out;
}

Json invariant_json(const InvariantResult& r) {
  Json j{{"name", r.name},   {"source", r.source},         {"group", r.group},
         {"order", r.order}, {"line_order", r.line_order}, {"order_ok", r.order_ok},
         {"upper", rat_json(r.upper)}};
  if (r.trace) {
    j["elimination"] = {{"line_orbits", r.trace->line_orbits}, {"steps", r.trace->steps}};
  } else {
    j["elimination"] = {{"survivor", r.survivor}};
  }
  j["lct"] = r.lct ? Json(rat_json(*r.lct)) : Json(nullptr);
  j["ke"] = ke_verdict_name(r.ke);
  j["assumptions"] = assumptions_json(r.assumptions);
  j["findings"] = r.findings;
  j["verified"] = r.verified;
  return j;
}

Json fiberwise_json(const FiberwiseResult& r) {
  Json j{{"name", r.name}, {"source", r.source}};
  j["k"] = r.k ? Json(*r.k) : Json(nullptr);
  if (!r.map.empty()) j["map"] = r.map;
  j["verdict"] = biregularity_name(r.outcome.verdict);
  j["clause"] = r.outcome.clause;
  j["findings"] = r.findings;
  j["verified"] = r.verified;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace lct
