#include <gtest/gtest.h>

#include <string>

#include "lct/errors.hpp"
#include "lct/fiberwise.hpp"

using lct::Biregularity;
using lct::Poly;
using lct::Rat;
using lct::SubstitutionMap;

namespace {

const std::vector<std::string> kVars{"x", "y", "z", "w", "t"};

Poly poly(std::initializer_list<std::pair<Rat, std::vector<int>>> terms) {
  Poly p(kVars);
  for (const auto& [c, e] : terms) p.add_term(c, e);
  return p;
}

SubstitutionMap map(int x, int y, int z, int w) { return {"t", {{"x", x}, {"y", y}, {"z", z}, {"w", w}}}; }

lct::FiberwisePair pair(const std::string& name) {
  return lct::load_fiberwise_file(std::string(LCT_FIXTURE_DIR) + "/fiberwise/" + name + ".yaml");
}

Biregularity verdict(Rat a, Rat b, bool lx = true, bool lxb = true) {
  return lct::biregularity_criterion(a, b, lx, lxb).verdict;
}

}  // namespace

TEST(Poly, NoZeroTerms) {
  Poly p = poly({{1, {1, 0, 0, 0, 0}}, {-1, {1, 0, 0, 0, 0}}, {2, {0, 1, 0, 0, 0}}});
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.str(), "2*y");
  EXPECT_TRUE(p.scaled(Rat(0)).is_zero());
  EXPECT_THROW(p.add_term(1, {1, 2}), lct::DimensionMismatch);
}

TEST(Substitute, E6Family) {
  const Poly target = poly({{1, {3, 0, 0, 0, 0}}, {1, {0, 2, 1, 0, 0}}, {1, {0, 0, 2, 1, 0}}, {1, {0, 0, 0, 3, 0}}});
  const Poly source = poly({{1, {3, 0, 0, 0, 0}}, {1, {0, 2, 1, 0, 0}}, {1, {0, 0, 2, 1, 0}}, {1, {0, 0, 0, 3, 12}}});
  const SubstitutionMap m = map(2, 3, 0, 6);
  const int k = lct::substitute_and_factor(target, m, source);
  EXPECT_EQ(k, 6);
  EXPECT_EQ(m.apply(target), source.shifted(4, k));
}

TEST(Substitute, D5Family) {
  const Poly target = poly({{1, {0, 0, 2, 1, 0}}, {1, {2, 0, 1, 0, 0}}, {1, {1, 2, 0, 0, 0}}, {1, {0, 0, 0, 3, 0}}});
  const Poly source = poly({{1, {0, 0, 2, 1, 0}}, {1, {2, 0, 1, 0, 0}}, {1, {1, 2, 0, 0, 0}}, {1, {0, 0, 0, 3, 8}}});
  EXPECT_EQ(lct::substitute_and_factor(target, map(2, 1, 0, 4), source), 4);
}

TEST(Substitute, IdentityMap) {
  const Poly p = poly({{Rat(1, 2), {1, 1, 1, 0, 0}}, {-3, {0, 0, 0, 3, 0}}});
  EXPECT_EQ(lct::substitute_and_factor(p, map(0, 0, 0, 0), p), 0);
}

TEST(Substitute, ScalingInvariant) {
  const Poly target = poly({{1, {3, 0, 0, 0, 0}}, {1, {0, 2, 1, 0, 0}}, {1, {0, 0, 2, 1, 0}}, {1, {0, 0, 0, 3, 0}}});
  const Poly source = poly({{1, {3, 0, 0, 0, 0}}, {1, {0, 2, 1, 0, 0}}, {1, {0, 0, 2, 1, 0}}, {1, {0, 0, 0, 3, 12}}});
  EXPECT_EQ(lct::substitute_and_factor(target.scaled(Rat(-7, 3)), map(2, 3, 0, 6), source.scaled(Rat(-7, 3))), 6);
}

TEST(Substitute, NoFactorization) {
  const Poly target = poly({{1, {3, 0, 0, 0, 0}}, {1, {0, 0, 0, 3, 0}}});
  const Poly source = poly({{1, {3, 0, 0, 0, 0}}, {1, {0, 0, 0, 3, 0}}});
  EXPECT_THROW(lct::substitute_and_factor(target, map(1, 0, 0, 0), source), lct::NoFactorization);
  const Poly other = poly({{2, {3, 0, 0, 0, 0}}, {1, {0, 0, 0, 3, 0}}});
  EXPECT_THROW(lct::substitute_and_factor(target, map(0, 0, 0, 0), other), lct::NoFactorization);
}

TEST(Criterion, Examples) {
  EXPECT_EQ(verdict(Rat(3, 4), Rat(3, 4)), Biregularity::Biregular);
  EXPECT_EQ(verdict(Rat(2, 3), Rat(1, 3)), Biregularity::Inconclusive);
  EXPECT_EQ(verdict(Rat(1, 6), Rat(2, 3)), Biregularity::Inconclusive);
  EXPECT_EQ(verdict(Rat(1, 4), Rat(2, 3)), Biregularity::Inconclusive);
  const auto second = lct::biregularity_criterion(Rat(1), Rat(1, 6), true, false);
  EXPECT_EQ(second.verdict, Biregularity::Biregular);
  EXPECT_EQ(second.clause, 2);
  EXPECT_EQ(verdict(Rat(3, 4), Rat(3, 4), true, false), Biregularity::Inconclusive);
  EXPECT_EQ(lct::biregularity_criterion(Rat(1), Rat(1, 6), true, true).clause, 1);
}

TEST(Criterion, Monotone) {
  const std::vector<Rat> grid{Rat(1, 6), Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(3, 4), Rat(1)};
  for (const auto& a : grid)
    for (const auto& b : grid) {
      if (verdict(a, b) != Biregularity::Biregular) continue;
      for (const auto& a2 : grid)
        for (const auto& b2 : grid)
          if (a2 >= a && b2 >= b) EXPECT_EQ(verdict(a2, b2), Biregularity::Biregular);
    }
}

TEST(Criterion, SymmetricBelowOne) {
  const std::vector<Rat> grid{Rat(1, 6), Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(3, 4)};
  for (const auto& a : grid)
    for (const auto& b : grid) EXPECT_EQ(verdict(a, b), verdict(b, a));
}

TEST(Fixtures, ShippedPairs) {
  const auto e6 = lct::check_fiberwise(pair("e6-family"));
  ASSERT_TRUE(e6.k);
  EXPECT_EQ(*e6.k, 6);
  EXPECT_TRUE(e6.verified);

  const auto d5 = lct::check_fiberwise(pair("d5-family"));
  ASSERT_TRUE(d5.k);
  EXPECT_EQ(*d5.k, 4);
  EXPECT_TRUE(d5.verified);

  const auto d4 = lct::check_fiberwise(pair("d4-antiflip"));
  EXPECT_FALSE(d4.k);
  EXPECT_EQ(d4.outcome.verdict, Biregularity::Inconclusive);
  EXPECT_TRUE(d4.verified);
}

TEST(Fixtures, LctPairMatchesProfiles) {
  auto p = pair("e6-family");
  p.lct_x = Rat(1, 4);
  const auto r = lct::check_fiberwise(p);
  EXPECT_FALSE(r.verified);
  EXPECT_EQ(lct::fiber_lct(lct::SingularityProfile::parse("smooth"), false), Rat(3, 4));
  EXPECT_EQ(lct::fiber_lct(lct::SingularityProfile::parse("D4"), false), Rat(1, 3));
}

TEST(Fixtures, LoaderErrors) {
  EXPECT_THROW(lct::load_fiberwise(""), lct::ParseError);
  EXPECT_THROW(lct::load_fiberwise("name: x\nlct_pair: [\"1/2\"]\nfibers: []\nexpected_verdict: Biregular\n"),
               lct::ParseError);
  EXPECT_THROW(lct::load_fiberwise("name: x\nlct_pair: [\"1/2\", \"1/2\"]\nfibers: [{profile: A1}, {profile: A1}]\n"
                                   "expected_verdict: Maybe\n"),
               lct::ParseError);
}
