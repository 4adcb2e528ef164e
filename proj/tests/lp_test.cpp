#include <gtest/gtest.h>

#include "lct/errors.hpp"
#include "lct/linear.hpp"
#include "lct/lp.hpp"

using lct::LinearSystem;
using lct::QVector;
using lct::Rat;

namespace {

LinearSystem make(std::vector<std::string> vars, std::initializer_list<const char*> rows) {
  LinearSystem s;
  s.variables = std::move(vars);
  for (const char* r : rows) s.add_constraint(r, r);
  return s;
}

}  // namespace

TEST(Parse, AffineForms) {
  lct::Affine a = lct::parse_affine("2*a1 - a2/3 + 4");
  EXPECT_EQ(a.terms.at("a1"), Rat(2));
  EXPECT_EQ(a.terms.at("a2"), Rat(-1, 3));
  EXPECT_EQ(a.constant, Rat(4));

  lct::Affine b = lct::parse_affine("(a + m)/2 - 3/2mu + 2b");
  EXPECT_EQ(b.terms.at("a"), Rat(1, 2));
  EXPECT_EQ(b.terms.at("m"), Rat(1, 2));
  EXPECT_EQ(b.terms.at("mu"), Rat(-3, 2));
  EXPECT_EQ(b.terms.at("b"), Rat(2));

  EXPECT_TRUE(lct::parse_affine("a - a").terms.empty());
  EXPECT_THROW(lct::parse_affine("a*b"), lct::ParseError);
  EXPECT_THROW(lct::parse_affine("1/a"), lct::ParseError);
  EXPECT_THROW(lct::parse_affine(""), lct::ParseError);
  EXPECT_THROW(lct::parse_affine("a +"), lct::ParseError);
}

TEST(Parse, ConstraintDirections) {
  LinearSystem s = make({"x", "y"}, {"x + y <= 3", "2x > y + 1", "x = 1"});
  ASSERT_EQ(s.rows.size(), 4u);
  EXPECT_EQ(s.rows[0].coeffs, (QVector{-1, -1}));
  EXPECT_EQ(s.rows[0].rhs, Rat(-3));
  EXPECT_EQ(s.rows[1].coeffs, (QVector{2, -1}));
  EXPECT_EQ(s.rows[1].rhs, Rat(1));
  EXPECT_TRUE(s.rows[1].strict());
  EXPECT_EQ(s.rows[2].rhs, Rat(1));
  EXPECT_EQ(s.rows[3].rhs, Rat(-1));
  EXPECT_THROW(s.add_constraint("z >= 0", ""), lct::UnknownVariable);
}

TEST(Parse, UnicodeRelations) {
  LinearSystem s = make({"a"}, {"3 \xE2\xA9\xBE a", "a \xE2\x89\xA5 \xE2\x88\x92" "1"});
  EXPECT_EQ(s.rows[0].coeffs, (QVector{-1}));
  EXPECT_EQ(s.rows[0].rhs, Rat(-3));
  EXPECT_EQ(s.rows[1].rhs, Rat(-1));
}

TEST(Canonical, ScalesToCoprimeIntegers) {
  LinearSystem s = make({"x", "y"}, {"x/2 + y/3 >= 1/6", "3x + 2y >= 1"});
  EXPECT_TRUE(lct::same_row(lct::canonical_row(s.rows[0]), lct::canonical_row(s.rows[1])));
  EXPECT_EQ(lct::canonical_row_set(s.rows).size(), 1u);
}

TEST(Eliminate, Contradiction) {
  LinearSystem s = make({"x"}, {"x >= 1", "-x >= 0"});
  LinearSystem e = lct::fourier_motzkin_eliminate(s, "x");
  ASSERT_EQ(e.rows.size(), 1u);
  EXPECT_TRUE(e.rows[0].is_zero_row());
  EXPECT_EQ(e.rows[0].rhs, Rat(1));
  EXPECT_FALSE(e.rows[0].strict());
  ASSERT_EQ(e.rows[0].parents.size(), 2u);
  EXPECT_EQ(e.rows[0].parents[0].first, 0u);
  EXPECT_EQ(e.rows[0].parents[1].first, 1u);
}

TEST(Eliminate, StrictBranchRow) {
  LinearSystem s = make({"a4"}, {"a4 > 2", "1 - a4 >= 0"});
  LinearSystem e = lct::fourier_motzkin_eliminate(s, "a4");
  ASSERT_EQ(e.rows.size(), 1u);
  EXPECT_TRUE(e.rows[0].strict());
  EXPECT_EQ(e.rows[0].rhs, Rat(1));  // 0 > 1, i.e. -1 > 0
}

TEST(Eliminate, Vacuous) {
  LinearSystem s = make({"x"}, {"x >= 0"});
  EXPECT_TRUE(lct::fourier_motzkin_eliminate(s, "x").rows.empty());
  EXPECT_THROW(lct::fourier_motzkin_eliminate(s, "y"), lct::UnknownVariable);
}

TEST(Feasibility, A2Branch) {
  LinearSystem s = make({"a1", "a2"}, {"2*a1 - a2 > 3", "a1 <= 1", "a2 >= 0"});
  auto r = lct::check_feasibility(s);
  ASSERT_TRUE(lct::is_infeasible(r));
  EXPECT_TRUE(lct::replay_certificate(s, std::get<lct::Infeasible>(r).certificate));
}

TEST(Feasibility, TrivialWitness) {
  LinearSystem s = make({"a1"}, {"a1 >= 0"});
  auto r = lct::check_feasibility(s);
  ASSERT_FALSE(lct::is_infeasible(r));
  EXPECT_EQ(std::get<lct::Feasible>(r).point, (QVector{0}));
}

TEST(Feasibility, A5NodeBranch) {
  // Base rows of the A5 lemma plus the branch at E3 ∩ E4.
  LinearSystem s = make({"a1", "a2", "a3", "a4", "a5", "tau"},
                        {"3 >= a1 + a5", "2*a1 >= a2", "2*a2 >= a1 + a3", "2*a3 >= a2 + a4", "2*a4 >= a3 + a5",
                         "2*a5 >= a4", "a4 <= 1", "a5 <= 2", "a2 <= 2", "tau >= 4",
                         "2*a3 - a2 - a4 > tau - a4", "2*a4 - a3 - a5 > tau - a3"});
  auto r = lct::check_feasibility(s);
  ASSERT_TRUE(lct::is_infeasible(r));
  EXPECT_TRUE(lct::replay_certificate(s, std::get<lct::Infeasible>(r).certificate));
}

TEST(Feasibility, StrictnessMatters) {
  LinearSystem closed = make({"x"}, {"x >= 1", "x <= 1"});
  EXPECT_FALSE(lct::is_infeasible(lct::check_feasibility(closed)));
  EXPECT_EQ(std::get<lct::Feasible>(lct::check_feasibility(closed)).point, (QVector{1}));
  LinearSystem open = make({"x"}, {"x > 1", "x <= 1"});
  auto r = lct::check_feasibility(open);
  ASSERT_TRUE(lct::is_infeasible(r));
  EXPECT_TRUE(std::get<lct::Infeasible>(r).certificate.derived.strict());
}

TEST(Feasibility, ExplicitOrderSameVerdict) {
  LinearSystem s = make({"x", "y", "z"}, {"x + y > 2", "y - z >= 0", "z - x >= 1", "x <= 0", "y <= 1"});
  const bool base = lct::is_infeasible(lct::check_feasibility(s));
  for (auto order : std::vector<std::vector<std::string>>{{"x", "y", "z"}, {"z", "y", "x"}, {"y", "x", "z"}}) {
    auto r = lct::check_feasibility(s, {order, true});
    EXPECT_EQ(lct::is_infeasible(r), base);
    if (!lct::is_infeasible(r)) EXPECT_TRUE(s.satisfied_by(std::get<lct::Feasible>(r).point));
  }
}

TEST(Feasibility, ZeroRowsInInput) {
  LinearSystem s = make({"x"}, {"0 > 0"});
  auto r = lct::check_feasibility(s);
  ASSERT_TRUE(lct::is_infeasible(r));
  EXPECT_TRUE(lct::replay_certificate(s, std::get<lct::Infeasible>(r).certificate));
  EXPECT_FALSE(lct::is_infeasible(lct::check_feasibility(make({}, {}))));
}

TEST(Replay, Examples) {
  LinearSystem s = make({"x"}, {"x >= 1", "-x >= 0"});
  EXPECT_TRUE(lct::replay_certificate(s, {{1, 1}, {}}));
  EXPECT_FALSE(lct::replay_certificate(s, {{1, 0}, {}}));
  EXPECT_FALSE(lct::replay_certificate(s, {{-1, -1}, {}}));
  EXPECT_THROW(lct::replay_certificate(s, {{1}, {}}), lct::DimensionMismatch);
}

TEST(Replay, StrictNeedsPositiveStrictRow) {
  LinearSystem s = make({"x"}, {"x > 0", "-x >= 0"});
  EXPECT_TRUE(lct::replay_certificate(s, {{1, 1}, {}}));
  LinearSystem t = make({"x"}, {"x >= 0", "-x >= 0"});
  EXPECT_FALSE(lct::replay_certificate(t, {{1, 1}, {}}));
}
