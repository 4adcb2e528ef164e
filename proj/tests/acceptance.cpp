// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "lct/ade.hpp"
#include "lct/engine.hpp"
#include "lct/equivariant.hpp"
#include "lct/fiberwise.hpp"
#include "support/lp_oracle.hpp"

using namespace lct;

namespace {

const std::string kFixtures = LCT_FIXTURE_DIR;

std::vector<std::string> yaml_files(const std::string& sub) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(kFixtures + "/" + sub))
    if (e.path().extension() == ".yaml") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

/// Collects the first few failure reasons for the summary line.
struct Check {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::vector<CaseResult> g_cases;

void ac1(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& path : yaml_files("lemmas")) g_cases.push_back(compute_case_threshold(load_fixture_file(path)));
  const auto rows = assemble_table(g_cases);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::vector<Rat> want{Rat(2, 3), Rat(1, 3), Rat(1, 3), Rat(1, 3), Rat(1, 4), Rat(1, 4), Rat(1, 6), Rat(1, 2)};
  c.expect(rows.size() == want.size(), "table has " + std::to_string(rows.size()) + " clauses");
  for (std::size_t i = 0; i < std::min(rows.size(), want.size()); ++i)
    c.expect(rows[i].clause.omega == want[i], "clause " + rows[i].clause.label + " = " + rows[i].clause.omega.str());
  c.expect(g_cases.size() == 17, std::to_string(g_cases.size()) + " lemma fixtures");
  for (const auto& r : g_cases) {
    c.expect(r.verified, r.name + " not verified");
    c.expect(r.upper.value == table_value(r.profile), r.name + " omega " + r.upper.value.str());
  }
  c.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");
}

void ac2(Check& c) {
  struct Listed {
    const char* type;
    std::vector<int> incidence;
    QVector want;
  };
  const std::vector<Listed> listed{
      {"A2", {1, 0}, {Rat(2, 3), Rat(1, 3)}},
      {"A2", {0, 1}, {Rat(1, 3), Rat(2, 3)}},
      {"A3", {1, 0, 0}, {Rat(3, 4), Rat(1, 2), Rat(1, 4)}},
      {"A3", {0, 1, 0}, {Rat(1, 2), Rat(1), Rat(1, 2)}},
      {"A4", {0, 0, 1, 0}, {Rat(2, 5), Rat(4, 5), Rat(6, 5), Rat(3, 5)}},
      {"A4", {0, 0, 0, 1}, {Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5)}},
      {"A5", {0, 0, 0, 1, 0}, {Rat(1, 3), Rat(2, 3), Rat(1), Rat(4, 3), Rat(2, 3)}},
  };
  for (const auto& l : listed) {
    const auto got = pullback_coefficients(ResolutionLattice(AdeType::parse(l.type)), l.incidence).coefficients;
    c.expect(got == l.want, std::string(l.type) + " vector mismatch");
  }
}

void ac3(Check& c) {
  std::size_t certs = 0;
  for (const auto& r : g_cases)
    for (const auto& leaf : r.lower.leaves)
      if (const auto* inf = std::get_if<Infeasible>(&leaf.outcome)) {
        ++certs;
        c.expect(replay_certificate(leaf.system, inf->certificate), r.name + "/" + leaf.label + " replay");
      }
  c.expect(certs > 0, "no certificates");

  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto p = lcttest::planted_system(rng, 5, 12);
    c.expect(!is_infeasible(check_feasibility(p.system)), "planted instance " + std::to_string(i) + " infeasible");
  }
  std::mt19937 rng2(20261015);
  for (int i = 0; i < 100; ++i) {
    const auto s = lcttest::random_system(rng2, 4, 10);
    c.expect(!is_infeasible(check_feasibility(s)) == lcttest::oracle_feasible(s),
             "oracle disagreement on instance " + std::to_string(i));
  }
}

void ac4(Check& c) {
  const std::vector<std::pair<std::string, Rat>> cases{{"A5", Rat(4)}, {"A2A2", Rat(3)}};
  for (const auto& [name, tau] : cases) {
    const auto f = load_fixture_file(kFixtures + "/lemmas/" + name + ".yaml");
    c.expect(f.script->tau_floor == tau, name + " tau");
    const auto& pt = f.model.point(f.script->point);
    std::vector<std::string> vars;
    for (int i = 1; i <= pt.type.rank; ++i) vars.push_back("a" + std::to_string(i));
    vars.push_back("tau");
    const ProofScript generated = generate_case_tree(pt.lattice(), {}, tau);
    const auto got = canonical_case_list(generated.tree.cases, vars, tau);
    const auto want = canonical_case_list(f.script->displayed_cases, vars, tau);
    bool same = !want.empty() && got.size() == want.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) {
      same = got[i].size() == want[i].size();
      for (std::size_t j = 0; same && j < got[i].size(); ++j) same = same_row(got[i][j], want[i][j]);
    }
    c.expect(same, name + " case list differs");
  }
}

void ac5(Check& c) {
  for (const auto& path : yaml_files("lemmas")) {
    const auto f = load_fixture_file(path);
    const auto expanded = expand_script(f.model, *f.script);
    for (const auto& o : expanded.origins) {
      if (o.generated) continue;
      const bool still = verify_expanded(expand_script_without(f.model, *f.script, {o.key}), {}).verified;
      c.expect(still == o.redundant, f.name + ": " + o.key);
    }
  }
}

void ac6(Check& c) {
  for (const auto& path : yaml_files("equivariant")) {
    const auto r = invariant_threshold(load_fixture_file(path));
    c.expect(r.lct && *r.lct == Rat(1), r.name + " lct");
    c.expect(r.ke == KEVerdict::KECertified, r.name + " KE");
  }
  c.expect(ke_criterion(Rat(1), 2) == KEVerdict::KECertified, "ke_criterion(1, 2)");
}

void ac7(Check& c) {
  const std::vector<std::pair<std::string, int>> pairs{{"e6-family", 6}, {"d5-family", 4}};
  for (const auto& [name, k] : pairs) {
    const auto r = check_fiberwise(load_fiberwise_file(kFixtures + "/fiberwise/" + name + ".yaml"));
    c.expect(r.k && *r.k == k, name + " k");
  }
  const auto v = [](Rat a, Rat b) { return biregularity_criterion(a, b, true, true).verdict; };
  c.expect(v(Rat(3, 4), Rat(3, 4)) == Biregularity::Biregular, "(3/4, 3/4)");
  c.expect(v(Rat(2, 3), Rat(1, 3)) == Biregularity::Inconclusive, "(2/3, 1/3)");
  c.expect(v(Rat(1, 6), Rat(2, 3)) == Biregularity::Inconclusive, "(1/6, 2/3)");
  c.expect(v(Rat(1, 4), Rat(2, 3)) == Biregularity::Inconclusive, "(1/4, 2/3)");
}

void ac8(Check& c) {
  const std::string cmd = std::string("\"") + LCT_PROPERTY_TEST + "\" --gtest_brief=1 > /dev/null 2>&1";
  c.expect(std::system(cmd.c_str()) == 0, "property suite failed");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"AC1 classification table and 17 lemma thresholds", ac1},
      {"AC2 listed pullback vectors", ac2},
      {"AC3 certificate soundness and oracle agreement", ac3},
      {"AC4 generated case lists match displayed lists", ac4},
      {"AC5 mutation robustness of every script", ac5},
      {"AC6 invariant thresholds and KE verdicts", ac6},
      {"AC7 fiberwise substitution and criterion", ac7},
      {"AC8 property suite", ac8},
  };
  int failed = 0;
  for (const auto& [label, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << (c.problems.empty() ? "[PASS] " : "[FAIL] ") << label;
    if (!c.problems.empty()) {
      ++failed;
      line << ": " << c.problems.front();
      if (c.problems.size() > 1) line << " (+" << c.problems.size() - 1 << " more)";
    }
    std::cout << line.str() << "\n";
  }
  return failed == 0 ? 0 : 1;
}
