#include "lct/fiberwise.hpp"

#include <fstream>
#include <sstream>

#include "lct/engine.hpp"
#include "lct/errors.hpp"
#include "yaml_fields.hpp"

namespace lct {

std::size_t Poly::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw UnknownVariable("unknown variable '" + std::string(name) + "'");
}

void Poly::add_term(const Rat& c, const Exponents& e) {
  if (e.size() != vars_.size())
    throw DimensionMismatch("monomial has " + std::to_string(e.size()) + " exponents, expected " +
                            std::to_string(vars_.size()));
  for (int x : e)
    if (x < 0) throw ParseError("", "negative exponent");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::scaled(const Rat& c) const {
  Poly out(vars_);
  if (c.is_zero()) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

Poly Poly::shifted(std::size_t var, int power) const {
  Poly out(vars_);
  for (const auto& [exps, v] : terms_) {
    Exponents e = exps;
    e.at(var) += power;
    out.add_term(v, e);
  }
  return out;
}

int Poly::min_degree(std::size_t var) const {
  if (terms_.empty()) return 0;
  int lo = terms_.begin()->first.at(var);
  for (const auto& [e, v] : terms_) lo = std::min(lo, e[var]);
  return lo;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, v] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const Rat mag = v.abs();
    std::string coef = mag == Rat(1) && !mono.empty() ? "" : mag.str();
    if (!coef.empty() && !mono.empty()) coef += "*";
    if (first)
      out += (v.sign() < 0 ? "-" : "") + coef + mono;
    else
      out += (v.sign() < 0 ? " - " : " + ") + coef + mono;
    first = false;
  }
  return out;
}

Poly SubstitutionMap::apply(const Poly& p) const {
  const std::size_t t = p.var_index(parameter);
  std::vector<int> shift(p.variables().size(), 0);
  for (const auto& [v, power] : t_power) {
    const std::size_t i = p.var_index(v);
    if (i == t) throw ParseError("", "the parameter " + parameter + " cannot be substituted");
    shift[i] = power;
  }
  Poly out(p.variables());
  for (const auto& [exps, c] : p.terms()) {
    Poly::Exponents e = exps;
    for (std::size_t i = 0; i < e.size(); ++i) e[t] += shift[i] * e[i];
    out.add_term(c, e);
  }
  return out;
}

std::string SubstitutionMap::str(const std::vector<std::string>& variables) const {
  std::string out = "(";
  bool first = true;
  for (const auto& v : variables) {
    if (v == parameter) continue;
    out += first ? "" : ", ";
    first = false;
    auto it = t_power.find(v);
    const int k = it == t_power.end() ? 0 : it->second;
    if (k == 1) out += parameter + "*";
    if (k > 1) out += parameter + "^" + std::to_string(k) + "*";
    out += v;
  }
  return out + ")";
}

int substitute_and_factor(const Poly& target, const SubstitutionMap& map, const Poly& source) {
  if (target.variables() != source.variables())
    throw DimensionMismatch("source and target use different variable lists");
  const Poly image = map.apply(target);
  if (image.is_zero() || source.is_zero()) throw NoFactorization("zero polynomial");
  const std::size_t t = image.var_index(map.parameter);
  const int k = image.min_degree(t) - source.min_degree(t);
  if (k < 0) throw NoFactorization("substituted target has lower t-order than the source");
  if (image != source.shifted(t, k))
    throw NoFactorization("substituted target " + image.str() + " is not " + map.parameter + "^" + std::to_string(k) +
                          " times " + source.str());
  return k;
}

const char* biregularity_name(Biregularity b) {
  return b == Biregularity::Biregular ? "Biregular" : "Inconclusive";
}

Biregularity parse_biregularity(std::string_view text) {
  if (text == "Biregular") return Biregularity::Biregular;
  if (text == "Inconclusive") return Biregularity::Inconclusive;
  throw ParseError("", "unknown verdict '" + std::string(text) + "'");
}

CriterionOutcome biregularity_criterion(const Rat& lct_x, const Rat& lct_xbar, bool x_log_terminal,
                                        bool xbar_log_terminal) {
  if (x_log_terminal && xbar_log_terminal && lct_x + lct_xbar > Rat(1)) return {Biregularity::Biregular, 1};
  if (x_log_terminal && lct_x >= Rat(1)) return {Biregularity::Biregular, 2};
  return {};
}

Rat fiber_lct(const SingularityProfile& profile, bool eckardt) {
  if (profile.entries.empty()) return eckardt ? Rat(2, 3) : Rat(3, 4);
  return table_value(profile);
}

// ---------------------------------------------------------------------------
// Loading

namespace {

using namespace yamlf;

Poly poly(const YAML::Node& n, const std::vector<std::string>& vars, const std::string& field) {
  expect_seq(n, field);
  Poly p(vars);
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    expect_seq(n[i], f);
    if (n[i].size() != 2) throw ParseError(where(n[i], f), "expected [coefficient, exponents]");
    const std::vector<int> e = int_list(n[i][1], f + "[1]");
    if (e.size() != vars.size())
      throw ParseError(where(n[i], f), "expected " + std::to_string(vars.size()) + " exponents");
    for (int x : e)
      if (x < 0) throw ParseError(where(n[i], f), "negative exponent");
    p.add_term(rational(n[i][0], f + "[0]"), e);
  }
  return p;
}

FiberSpec fiber(const YAML::Node& n, const std::string& field) {
  expect_map(n, field);
  allow_keys(n, field, {"profile", "eckardt", "log_terminal"});
  FiberSpec s;
  try {
    s.profile = SingularityProfile::parse(text(need(n, "profile", field), field + ".profile"));
  } catch (const ParseError& e) {
    if (!e.location().empty()) throw;
    throw ParseError(where(n, field), e.what());
  } catch (const UnsupportedType& e) {
    throw ParseError(where(n, field), e.what());
  }
  if (n["eckardt"]) s.eckardt = boolean(n["eckardt"], field + ".eckardt");
  if (n["log_terminal"]) s.log_terminal = boolean(n["log_terminal"], field + ".log_terminal");
  return s;
}

}  // namespace

FiberwisePair load_fiberwise(std::string_view yaml_text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ParseError("line " + std::to_string(e.mark.line + 1), e.msg);
  }
  expect_map(root, "fixture");
  allow_keys(root, "fixture",
             {"name", "variables", "parameter", "source_poly", "target_poly", "map", "expected_k", "lct_pair",
              "fibers", "expected_verdict", "assumptions", "cite"});
  FiberwisePair p;
  p.source = source;
  p.name = text(need(root, "name", "fixture"), "name");
  p.cite = text_or(root, "cite", "fixture");

  const bool has_polys = root["source_poly"] || root["target_poly"] || root["map"];
  if (has_polys) {
    const std::vector<std::string> vars = string_list(need(root, "variables", "fixture"), "variables");
    SubstitutionMap m;
    m.parameter = text_or(root, "parameter", "fixture", "t");
    if (std::find(vars.begin(), vars.end(), m.parameter) == vars.end())
      throw ParseError(where(root, "variables"), "parameter " + m.parameter + " is not a variable");
    p.source_poly = poly(need(root, "source_poly", "fixture"), vars, "source_poly");
    p.target_poly = poly(need(root, "target_poly", "fixture"), vars, "target_poly");
    const YAML::Node mn = need(root, "map", "fixture");
    expect_map(mn, "map");
    for (const auto& kv : mn) {
      const std::string v = kv.first.as<std::string>();
      if (v == m.parameter || std::find(vars.begin(), vars.end(), v) == vars.end())
        throw ParseError(where(kv.first, "map"), "map entry for unknown coordinate '" + v + "'");
      m.t_power[v] = integer(kv.second, "map." + v);
      if (m.t_power[v] < 0) throw ParseError(where(kv.second, "map." + v), "negative power");
    }
    p.map = std::move(m);
    if (root["expected_k"]) p.expected_k = integer(root["expected_k"], "expected_k");
  }

  const YAML::Node pair = need(root, "lct_pair", "fixture");
  expect_seq(pair, "lct_pair");
  if (pair.size() != 2) throw ParseError(where(pair, "lct_pair"), "expected [lct(X), lct(Xbar)]");
  p.lct_x = rational(pair[0], "lct_pair[0]");
  p.lct_xbar = rational(pair[1], "lct_pair[1]");
  if (p.lct_x.sign() <= 0 || p.lct_xbar.sign() <= 0) throw ParseError(where(pair, "lct_pair"), "lct values must be positive");

  const YAML::Node fibers = need(root, "fibers", "fixture");
  expect_seq(fibers, "fibers");
  if (fibers.size() != 2) throw ParseError(where(fibers, "fibers"), "expected [X, Xbar]");
  p.x = fiber(fibers[0], "fibers[0]");
  p.xbar = fiber(fibers[1], "fibers[1]");

  const YAML::Node v = need(root, "expected_verdict", "fixture");
  try {
    p.expected_verdict = parse_biregularity(text(v, "expected_verdict"));
  } catch (const ParseError& e) {
    throw ParseError(where(v, "expected_verdict"), e.what());
  }
  if (root["assumptions"]) p.assumptions = assumptions(root["assumptions"], "assumptions");
  return p;
}

FiberwisePair load_fiberwise_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return load_fiberwise(buf.str(), path);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.location(), e.what());
  }
}

FiberwiseResult check_fiberwise(const FiberwisePair& pair) {
  FiberwiseResult r;
  r.name = pair.name;
  r.source = pair.source;
  if (pair.source_poly && pair.target_poly && pair.map) {
    r.map = pair.map->str(pair.source_poly->variables());
    try {
      r.k = substitute_and_factor(*pair.target_poly, *pair.map, *pair.source_poly);
    } catch (const NoFactorization& e) {
      r.findings.push_back(std::string("substitution: ") + e.what());
    }
    if (r.k && pair.expected_k && *r.k != *pair.expected_k)
      r.findings.push_back("substitution gives k = " + std::to_string(*r.k) + ", expected " +
                           std::to_string(*pair.expected_k));
  }
  const Rat lx = fiber_lct(pair.x.profile, pair.x.eckardt);
  const Rat lxb = fiber_lct(pair.xbar.profile, pair.xbar.eckardt);
  if (lx != pair.lct_x)
    r.findings.push_back("lct(X) = " + pair.lct_x.str() + " but the profile " + pair.x.profile.str() + " gives " + lx.str());
  if (lxb != pair.lct_xbar)
    r.findings.push_back("lct(Xbar) = " + pair.lct_xbar.str() + " but the profile " + pair.xbar.profile.str() +
                         " gives " + lxb.str());
  r.outcome = biregularity_criterion(pair.lct_x, pair.lct_xbar, pair.x.log_terminal, pair.xbar.log_terminal);
  if (r.outcome.verdict != pair.expected_verdict)
    r.findings.push_back(std::string("criterion gives ") + biregularity_name(r.outcome.verdict) + ", expected " +
                         biregularity_name(pair.expected_verdict));
  r.verified = r.findings.empty();
  return r;
}

}  // namespace lct
