// lctverify: command-line front end for the verification toolkit.
//
// Exit codes: 0 everything verified, 1 a verification failed, 2 bad input.
// Fixtures are looked up as given, then under each directory of
// LCT_FIXTURE_PATH (colon separated; default: the bundled fixtures/).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lct/engine.hpp"
#include "lct/equivariant.hpp"
#include "lct/errors.hpp"
#include "lct/fiberwise.hpp"
#include "lct/report.hpp"

#ifndef LCT_FIXTURE_DIR
#define LCT_FIXTURE_DIR "fixtures"
#endif

namespace fs = std::filesystem;
using namespace lct;

namespace {

struct Options {
  bool json = false;
  bool parallel = false;
};

struct Outcome {
  int code = 0;
  Json json;
  std::string text;
};

std::vector<std::string> fixture_dirs() {
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("LCT_FIXTURE_PATH"); env && *env) {
    std::stringstream ss(env);
    std::string d;
    while (std::getline(ss, d, ':'))
      if (!d.empty()) dirs.push_back(d);
  }
  if (dirs.empty()) dirs.emplace_back(LCT_FIXTURE_DIR);
  return dirs;
}

std::optional<std::string> find_fixture(const std::string& arg, const std::string& subdir) {
  if (fs::is_regular_file(arg)) return arg;
  for (const auto& dir : fixture_dirs())
    for (const std::string& cand : {arg, subdir + "/" + arg, arg + ".yaml", subdir + "/" + arg + ".yaml"}) {
      const fs::path p = fs::path(dir) / cand;
      if (fs::is_regular_file(p)) return p.string();
    }
  return std::nullopt;
}

std::string resolve_fixture(const std::string& arg, const std::string& subdir) {
  if (auto p = find_fixture(arg, subdir)) return *p;
  throw ParseError(arg, "no such fixture (searched the working directory and LCT_FIXTURE_PATH)");
}

std::vector<std::string> lemma_files() {
  std::vector<std::string> files;
  for (const auto& dir : fixture_dirs()) {
    const fs::path d = fs::path(dir) / "lemmas";
    if (!fs::is_directory(d)) continue;
    for (const auto& e : fs::directory_iterator(d))
      if (e.is_regular_file() && e.path().extension() == ".yaml") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<CaseResult> run_cases(const std::vector<std::string>& files, bool parallel) {
  std::vector<CaseFixture> fixtures;
  for (const auto& f : files) fixtures.push_back(load_fixture_file(f));
  std::vector<CaseResult> results(fixtures.size());
  if (parallel) {
    std::vector<std::future<CaseResult>> jobs;
    for (const auto& f : fixtures) jobs.push_back(std::async(std::launch::async, [&f] { return compute_case_threshold(f); }));
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < fixtures.size(); ++i) results[i] = compute_case_threshold(fixtures[i]);
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const CaseResult& a, const CaseResult& b) { return a.profile < b.profile; });
  return results;
}

std::string names(const std::vector<const CaseResult*>& cases) {
  std::string out;
  for (const auto* c : cases) out += (out.empty() ? "" : ", ") + c->name + (c->verified ? "" : " (FAILED)");
  return out;
}

Outcome cmd_table(const Options& o) {
  const auto files = lemma_files();
  if (files.empty()) throw ParseError("", "no lemma fixtures found");
  const auto results = run_cases(files, o.parallel);
  const auto rows = assemble_table(results);
  Outcome out;
  bool ok = true;
  std::ostringstream t;
  for (const auto& r : rows) {
    ok = ok && (r.all_verified || r.cases.empty());
    t << r.clause.label << std::string(r.clause.label.size() < 26 ? 26 - r.clause.label.size() : 1, ' ')
      << r.clause.omega.str() << "   ";
    if (r.cases.empty())
      t << "asserted without fixture";
    else
      t << (r.all_verified ? "verified" : "FAILED") << " [" << names(r.cases) << "]"
        << (r.asserted_without_fixture ? " + profiles without a fixture (asserted)" : "");
    t << "\n";
  }
  std::size_t verified = 0;
  for (const auto& c : results) verified += c.verified ? 1 : 0;
  t << verified << "/" << results.size() << " lemma fixtures verified\n";
  out.text = t.str();
  out.json = {{"table", table_json(rows)}, {"verified_cases", verified}, {"cases", results.size()}};
  out.code = ok && verified == results.size() ? 0 : 1;
  return out;
}

std::string case_text(const CaseResult& c) {
  std::ostringstream t;
  t << "case " << c.name << " (" << c.source << ")\n";
  t << "profile: " << c.profile.str() << "\n";
  t << "omega: " << c.upper.value.str() << " (expected " << c.expected.str() << ")\n";
  t << "upper bound: " << c.upper.value.str() << ", attained by";
  for (const auto& a : c.upper.attaining) t << " " << a;
  t << "\n";
  for (const auto& a : c.aux)
    t << "auxiliary witness " << a.name << ": " << a.bound.value.str() << (a.matches ? "" : " (expected " + a.expected.str() + ")")
      << "\n";
  std::size_t infeasible = 0;
  for (const auto& l : c.lower.leaves) infeasible += is_infeasible(l.outcome) ? 1 : 0;
  t << "lower bound: " << c.lower.leaves.size() << " leaves, " << infeasible << " certified infeasible\n";
  for (const auto& l : c.lower.leaves) {
    t << "  [" << (is_infeasible(l.outcome) ? "infeasible" : "FEASIBLE") << "] " << l.label << "\n";
    for (const auto& r : l.system.rows) t << "      " << format_row(r, l.system.variables) << "\n";
    if (const auto* inf = std::get_if<Infeasible>(&l.outcome)) {
      t << "      multipliers:";
      for (const auto& m : inf->certificate.multipliers) t << " " << m.str();
      t << "\n      combination: " << format_row(inf->certificate.derived, l.system.variables) << "\n";
    } else {
      const auto& p = std::get<Feasible>(l.outcome).point;
      t << "      feasible point:";
      for (std::size_t i = 0; i < p.size(); ++i) t << " " << l.system.variables[i] << "=" << p[i].str();
      t << "\n";
    }
  }
  if (!c.lower.assumptions.empty()) t << "assumptions:\n";
  for (const auto& a : c.lower.assumptions) t << "  " << a.tag << ": " << a.text << " (\"" << a.cite << "\")\n";
  for (const auto& f : c.findings) t << "finding: " << f << "\n";
  t << "verified: " << (c.verified ? "yes" : "no") << "\n";
  return t.str();
}

std::string find_case_fixture(const std::string& arg) {
  if (auto p = find_fixture(arg, "lemmas")) return *p;
  if (arg.find('/') != std::string::npos || fs::path(arg).extension() == ".yaml")
    throw ParseError(arg, "no such fixture file");
  const SingularityProfile wanted = SingularityProfile::parse(arg);
  for (const auto& f : lemma_files())
    if (load_fixture_file(f).model.profile == wanted) return f;
  throw ParseError(arg, "no fixture for this profile or path");
}

Outcome cmd_case(const Options&, const std::string& arg) {
  const CaseResult c = compute_case_threshold(load_fixture_file(find_case_fixture(arg)));
  return {c.verified ? 0 : 1, case_json(c), case_text(c)};
}

Outcome cmd_pullback(const Options&, const std::string& fixture, const std::string& curve, const std::string& point) {
  const CaseFixture f = load_fixture_file(resolve_fixture(fixture, "lemmas"));
  const PullbackVector p = f.model.pullback(curve, point);
  std::ostringstream t;
  t << "pullback of " << curve << " at " << point << " (" << f.model.point(point).type.name() << "): (";
  for (std::size_t i = 0; i < p.coefficients.size(); ++i) t << (i ? ", " : "") << p.coefficients[i].str();
  t << ")\n";
  return {0, pullback_json(p, point), t.str()};
}

LinearSystem load_system(const std::string& path) { return system_from_json(read_json_file(path)); }

Outcome cmd_certify(const Options&, const std::string& path, const std::string& out_path) {
  const LinearSystem sys = load_system(path);
  const FeasibilityResult r = check_feasibility(sys);
  Outcome out;
  out.json = feasibility_json(r, sys.variables);
  std::ostringstream t;
  if (const auto* inf = std::get_if<Infeasible>(&r)) {
    const bool replayed = replay_certificate(sys, inf->certificate);
    out.json["replayed"] = replayed;
    t << "infeasible; certificate multipliers:";
    for (const auto& m : inf->certificate.multipliers) t << " " << m.str();
    t << "\ncombination: " << format_row(inf->certificate.derived, sys.variables) << "\n";
    t << "replay: " << (replayed ? "ok" : "FAILED") << "\n";
    out.code = replayed ? 0 : 1;
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw ParseError(out_path, "cannot write certificate");
      f << certificate_json(inf->certificate, sys.variables).dump(2) << "\n";
    }
  } else {
    const auto& p = std::get<Feasible>(r).point;
    t << "FEASIBLE at";
    for (std::size_t i = 0; i < p.size(); ++i) t << " " << sys.variables[i] << "=" << p[i].str();
    t << "\n";
    out.code = 1;
  }
  out.text = t.str();
  return out;
}

Outcome cmd_replay(const Options&, const std::string& sys_path, const std::string& cert_path) {
  const LinearSystem sys = load_system(sys_path);
  const InfeasibilityCertificate cert =
      certificate_from_json(read_json_file(cert_path), sys.rows.size(), sys.variables.size());
  const bool ok = replay_certificate(sys, cert);
  const Row combo = combine_rows(sys, cert.multipliers);
  Outcome out;
  out.code = ok ? 0 : 1;
  out.json = {{"replayed", ok}, {"combination", row_json(combo)}};
  out.json["combination"]["text"] = format_row(combo, sys.variables);
  out.text = std::string("replay: ") + (ok ? "ok" : "FAILED") + "\ncombination: " + format_row(combo, sys.variables) + "\n";
  return out;
}

Outcome cmd_equivariant(const Options&, const std::string& arg, bool trivial) {
  const CaseFixture f = load_fixture_file(resolve_fixture(arg, "equivariant"));
  std::optional<GroupAction> action;
  if (trivial) action = fixture_action(f).trivial();
  const InvariantResult r = invariant_threshold(f, action);
  std::ostringstream t;
  t << "surface " << r.name << " (" << r.source << ")\n";
  t << "group " << r.group << ": generated order " << r.order << ", on lines " << r.line_order
    << (r.order_ok ? "" : " (does not match the declared order)") << "\n";
  t << "invariant upper bound: " << r.upper.str() << "\n";
  if (r.trace) {
    t << "line orbits:";
    for (const auto& o : r.trace->line_orbits) {
      t << " {";
      for (std::size_t i = 0; i < o.size(); ++i) t << (i ? ", " : "") << o[i];
      t << "}";
    }
    t << "\n";
    for (const auto& s : r.trace->steps) t << "  " << s << "\n";
  } else {
    t << "elimination fails: " << r.survivor << " survives\n";
  }
  t << "lct(S, G) = " << (r.lct ? r.lct->str() : "not determined (upper bound only)") << "\n";
  t << "Kahler-Einstein criterion: " << ke_verdict_name(r.ke) << "\n";
  for (const auto& a : r.assumptions) t << "  " << a.tag << ": " << a.text << "\n";
  for (const auto& x : r.findings) t << "finding: " << x << "\n";
  t << "verified: " << (r.verified ? "yes" : "no") << "\n";
  return {r.verified ? 0 : 1, invariant_json(r), t.str()};
}

Outcome cmd_fiberwise(const Options&, const std::string& arg) {
  const FiberwisePair p = load_fiberwise_file(resolve_fixture(arg, "fiberwise"));
  const FiberwiseResult r = check_fiberwise(p);
  std::ostringstream t;
  t << "pair " << r.name << " (" << r.source << ")\n";
  if (r.k) t << "substitution " << r.map << ": target = t^" << *r.k << " * source\n";
  t << "lct(X) = " << p.lct_x.str() << ", lct(Xbar) = " << p.lct_xbar.str() << "\n";
  t << "criterion: " << biregularity_name(r.outcome.verdict);
  if (r.outcome.clause) t << " (clause " << r.outcome.clause << ")";
  t << "\n";
  for (const auto& x : r.findings) t << "finding: " << x << "\n";
  t << "verified: " << (r.verified ? "yes" : "no") << "\n";
  return {r.verified ? 0 : 1, fiberwise_json(r), t.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of global log canonical thresholds of singular cubic surfaces"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_flag("--parallel", opt.parallel, "Verify independent cases concurrently");

  std::string a1, a2, a3, out_path;
  bool trivial = false;
  auto* table = app.add_subcommand("table", "Threshold table with per-clause verification status");
  auto* kase = app.add_subcommand("case", "Verify one case given by profile or fixture path");
  kase->add_option("case", a1, "Profile (e.g. A5, A3+A1) or fixture path")->required();
  auto* pull = app.add_subcommand("pullback", "Pullback coefficients of a curve at a singular point");
  pull->add_option("fixture", a1)->required();
  pull->add_option("curve", a2)->required();
  pull->add_option("point", a3)->required();
  auto* certify = app.add_subcommand("certify", "Decide a linear system and emit an infeasibility certificate");
  certify->add_option("system", a1, "System JSON file")->required();
  certify->add_option("--out", out_path, "Write the certificate here");
  auto* replay = app.add_subcommand("replay", "Replay a certificate against a system");
  replay->add_option("system", a1)->required();
  replay->add_option("certificate", a2)->required();
  auto* equiv = app.add_subcommand("equivariant", "Invariant threshold of a surface with a group action");
  equiv->add_option("fixture", a1)->required();
  equiv->add_flag("--trivial", trivial, "Replace the group by the trivial group");
  auto* fiber = app.add_subcommand("fiberwise", "Substitution exponent and biregularity criterion");
  fiber->add_option("fixture", a1)->required();
  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (*table) out = cmd_table(opt);
    else if (*kase) out = cmd_case(opt, a1);
    else if (*pull) out = cmd_pullback(opt, a1, a2, a3);
    else if (*certify) out = cmd_certify(opt, a1, out_path);
    else if (*replay) out = cmd_replay(opt, a1, a2);
    else if (*equiv) out = cmd_equivariant(opt, a1, trivial);
    else if (*fiber) out = cmd_fiberwise(opt, a1);
  } catch (const lct::Error& e) {
    if (opt.json) {
      std::cout << Json{{"error", e.what()}, {"exit_code", 2}}.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (opt.json) {
    std::vector<std::string> command(argv + 1, argv + argc);
    Json report{{"command", command}, {"result", out.json}, {"exit_code", out.code}, {"elapsed_ms", ms}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << out.text;
  }
  return out.code;
}
