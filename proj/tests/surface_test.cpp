#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>

#include "lct/errors.hpp"
#include "lct/surface.hpp"

using lct::CaseFixture;
using lct::Rat;
using lct::SingularityProfile;

namespace {

CaseFixture lemma(const std::string& name) {
  return lct::load_fixture_file(std::string(LCT_FIXTURE_DIR) + "/lemmas/" + name + ".yaml");
}

std::vector<std::string> all_fixture_files() {
  std::vector<std::string> out;
  for (const char* sub : {"lemmas", "equivariant"})
    for (const auto& e : std::filesystem::directory_iterator(std::string(LCT_FIXTURE_DIR) + "/" + sub))
      if (e.path().extension() == ".yaml") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

bool has_finding(const std::vector<std::string>& findings, const std::string& needle) {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const std::string& f) { return f.find(needle) != std::string::npos; });
}

const char* kMinimal = R"(
name: tiny
profile: [A1]
points:
  O: {type: A1}
curves:
  - {id: L1, kind: line, incidence: {O: [1]}}
  - {id: L2, kind: line}
equivalences:
  - {divisor: 3*L2}
)";

}  // namespace

TEST(Profile, ParseForms) {
  const auto p = SingularityProfile::parse("A5+A1");
  EXPECT_EQ(p, SingularityProfile::parse("{A1, A5}"));
  EXPECT_EQ(p, SingularityProfile::parse("A5A1"));
  EXPECT_EQ(p.str(), "A1,A5");
  EXPECT_EQ(SingularityProfile::parse("2A2,A1").count(lct::AdeType::parse("A2")), 2u);
  EXPECT_TRUE(SingularityProfile::parse("smooth").entries.empty());
  EXPECT_TRUE(SingularityProfile::parse("A2,A2,A1").contains(SingularityProfile::parse("A2,A2")));
  EXPECT_FALSE(SingularityProfile::parse("A2,A1").contains(SingularityProfile::parse("A2,A2")));
}

TEST(Divisor, ParseAndNormalize) {
  const auto d = lct::BoundaryDivisor::parse("L3 + 2*L1 + 1/2*L3");
  EXPECT_EQ(d.multiplicity("L3"), Rat(3, 2));
  EXPECT_EQ(d.normalized().str(), "2*L1 + 3/2*L3");
  EXPECT_THROW(lct::BoundaryDivisor::parse("-1*L1"), lct::ParseError);
  EXPECT_THROW(lct::BoundaryDivisor::parse("2*"), lct::ParseError);
}

TEST(Load, A5Fixture) {
  const CaseFixture f = lemma("A5");
  EXPECT_EQ(f.model.profile, SingularityProfile::parse("A5"));
  const auto lines = std::count_if(f.model.curves.begin(), f.model.curves.end(),
                                   [](const lct::NamedCurve& c) { return c.kind == lct::CurveKind::Line; });
  EXPECT_EQ(lines, 3);
  ASSERT_FALSE(f.model.equivalences.empty());
  EXPECT_EQ(f.model.equivalences[0].divisor.str(), "3*L3");
  ASSERT_TRUE(f.expected_omega);
  EXPECT_EQ(*f.expected_omega, Rat(1, 4));
}

TEST(Load, EmptyDocument) {
  EXPECT_THROW(lct::load_fixture(""), lct::ParseError);
  EXPECT_THROW(lct::load_fixture("[1, 2]"), lct::ParseError);
}

TEST(Load, DanglingCurve) {
  const std::string text = std::string(kMinimal) + "witness: {divisor: L9}\n";
  EXPECT_THROW(lct::load_fixture(text), lct::DanglingReference);
}

TEST(Load, ErrorsCarryLocation) {
  try {
    lct::load_fixture("name: x\nprofile: [A1]\npoints:\n  O: {type: A1}\ncurves:\n  - {id: L1, kind: plane}\n");
    FAIL() << "expected ParseError";
  } catch (const lct::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
  }
}

TEST(Validate, WrongIncidenceLength) {
  const std::string text = "name: x\nprofile: [A2]\npoints:\n  O: {type: A2}\ncurves:\n"
                           "  - {id: L1, kind: line, incidence: {O: [1]}}\n";
  EXPECT_TRUE(has_finding(lct::validate_fixture(lct::load_fixture(text)), "has length 1"));
}

TEST(Validate, A4Equivalence) {
  const CaseFixture f = lemma("A4");
  const auto it = std::find_if(f.model.equivalences.begin(), f.model.equivalences.end(),
                               [](const lct::Equivalence& e) { return e.divisor.str() == "2*L3 + L4"; });
  ASSERT_NE(it, f.model.equivalences.end());
  EXPECT_TRUE(lct::validate_fixture(f).empty());
}

TEST(Validate, DegreeMismatch) {
  CaseFixture f = lct::load_fixture(kMinimal);
  f.model.equivalences.push_back({lct::BoundaryDivisor::parse("L1 + L2"), ""});
  EXPECT_TRUE(has_finding(lct::validate_fixture(f), "degree"));
}

TEST(Validate, D4OuterNodes) {
  const CaseFixture f = lemma("D4");
  EXPECT_TRUE(lct::validate_fixture(f).empty());
  std::set<int> nodes;
  for (const auto& c : f.model.curves) {
    const auto inc = c.incidence_at("O", 4);
    for (int i = 0; i < 4; ++i)
      if (inc[static_cast<std::size_t>(i)]) nodes.insert(i);
  }
  EXPECT_EQ(nodes, (std::set<int>{0, 1, 2}));
}

TEST(Validate, WrongIncidenceBreaksNumerics) {
  // Moving L3 from E4 to E3 makes 3*L3 fail D.C = deg C.
  CaseFixture f = lemma("A5");
  for (auto& c : f.model.curves)
    if (c.id == "L3") c.incidence["O"] = {0, 0, 1, 0, 0};
  EXPECT_FALSE(lct::validate_fixture(f).empty());
}

TEST(Validate, LineSelfIntersection) {
  const CaseFixture f = lemma("A5");
  // L3 meets E4 once: L3^2 = -1 + 4/3.
  EXPECT_EQ(f.model.intersection("L3", "L3"), Rat(1, 3));
  EXPECT_EQ(f.model.intersection("L3", "L3") * Rat(3), Rat(1));
}

TEST(Validate, EveryShippedFixture) {
  for (const auto& path : all_fixture_files()) {
    const CaseFixture f = lct::load_fixture_file(path);
    const auto findings = lct::validate_fixture(f);
    EXPECT_TRUE(findings.empty()) << path << ": " << (findings.empty() ? "" : findings.front());
    for (const auto& e : f.model.equivalences) {
      Rat degree;
      for (const auto& t : e.divisor.terms) degree += t.multiplicity * Rat(f.model.curve(t.curve).degree);
      EXPECT_EQ(degree, Rat(3)) << path << ": " << e.divisor.str();
    }
  }
}

TEST(RoundTrip, EveryShippedFixture) {
  for (const auto& path : all_fixture_files()) {
    const CaseFixture f = lct::load_fixture_file(path);
    const CaseFixture g = lct::load_fixture(lct::serialize_fixture(f));
    EXPECT_TRUE(lct::fixtures_equal(f, g)) << path;
  }
}

TEST(Pullback, ChainReversalMarker) {
  const std::string forward = "name: x\nprofile: [A3]\npoints:\n  O: {type: A3}\ncurves:\n"
                              "  - {id: L1, kind: line, incidence: {O: [1, 0, 0]}}\n";
  std::string reversed = forward;
  reversed.replace(reversed.find("{type: A3}"), 10, "{type: A3, orientation: reversed}");
  reversed.replace(reversed.find("[1, 0, 0]"), 9, "[0, 0, 1]");
  const auto a = lct::load_fixture(forward).model.pullback("L1", "O").coefficients;
  const auto b = lct::load_fixture(reversed).model.pullback("L1", "O").coefficients;
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, (lct::QVector{Rat(3, 4), Rat(1, 2), Rat(1, 4)}));
}
