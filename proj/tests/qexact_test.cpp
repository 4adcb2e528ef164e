#include <gtest/gtest.h>

#include "lct/errors.hpp"
#include "lct/matrix.hpp"
#include "lct/rational.hpp"

using lct::QMatrix;
using lct::QVector;
using lct::Rat;

TEST(Rat, StoredReduced) {
  Rat r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rat(0, -7).str(), "0");
  EXPECT_EQ(Rat(8, 4).str(), "2");
}

TEST(Rat, ZeroDenominatorRejected) {
  EXPECT_THROW(Rat(1, 0), lct::ZeroDenominator);
  EXPECT_THROW(Rat::parse("3/0"), lct::ZeroDenominator);
  EXPECT_THROW(Rat(0).reciprocal(), lct::ZeroDenominator);
  EXPECT_THROW(Rat(1) / Rat(0), lct::ZeroDenominator);
}

TEST(Rat, Parse) {
  EXPECT_EQ(Rat::parse("1/4"), Rat(1, 4));
  EXPECT_EQ(Rat::parse(" -2/6 "), Rat(-1, 3));
  EXPECT_EQ(Rat::parse("\xE2\x88\x92" "5"), Rat(-5));
  EXPECT_EQ(Rat::parse("+7"), Rat(7));
  EXPECT_THROW(Rat::parse(""), lct::ParseError);
  EXPECT_THROW(Rat::parse("1.5"), lct::ParseError);
  EXPECT_THROW(Rat::parse("1/"), lct::ParseError);
  EXPECT_THROW(Rat::parse("a/b"), lct::ParseError);
}

TEST(Rat, Ordering) {
  EXPECT_LT(Rat(1, 4), Rat(1, 3));
  EXPECT_GT(Rat(-1, 4), Rat(-1, 3));
  EXPECT_EQ(lct::min(Rat(2, 3), Rat(1, 2)), Rat(1, 2));
  EXPECT_EQ(lct::max(Rat(2, 3), Rat(1, 2)), Rat(2, 3));
}

TEST(Rat, LargeValuesStayExact) {
  Rat r(1);
  for (int i = 0; i < 40; ++i) r *= Rat(1000000007, 3);
  for (int i = 0; i < 40; ++i) r /= Rat(1000000007, 3);
  EXPECT_EQ(r, Rat(1));
}

TEST(Solve, OneByOne) {
  QMatrix a{{2}};
  QVector b{1};
  EXPECT_EQ(lct::solve_linear_system(a, b), (QVector{Rat(1, 2)}));
}

TEST(Solve, CartanA3) {
  QMatrix a{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  QVector b{1, 0, 0};
  EXPECT_EQ(lct::solve_linear_system(a, b), (QVector{Rat(3, 4), Rat(1, 2), Rat(1, 4)}));
}

TEST(Solve, CartanD4OuterNode) {
  // outer1, outer2, outer3, center
  QMatrix a{{2, 0, 0, -1}, {0, 2, 0, -1}, {0, 0, 2, -1}, {-1, -1, -1, 2}};
  QVector b{1, 0, 0, 0};
  EXPECT_EQ(lct::solve_linear_system(a, b), (QVector{Rat(1), Rat(1, 2), Rat(1, 2), Rat(1)}));
}

TEST(Solve, NeedsRowSwap) {
  QMatrix a{{0, 1}, {1, 0}};
  QVector b{3, 5};
  EXPECT_EQ(lct::solve_linear_system(a, b), (QVector{5, 3}));
}

TEST(Solve, RationalEntries) {
  QMatrix a{{Rat(1, 2), Rat(1, 3)}, {Rat(1, 4), Rat(-1, 5)}};
  QVector b{1, 2};
  const QVector x = lct::solve_linear_system(a, b);
  EXPECT_EQ(a * x, b);
}

TEST(Solve, Errors) {
  QMatrix singular{{1, 2}, {2, 4}};
  QVector b{1, 1};
  EXPECT_THROW(lct::solve_linear_system(singular, b), lct::SingularMatrix);
  QMatrix rect(2, 3);
  EXPECT_THROW(lct::solve_linear_system(rect, b), lct::DimensionMismatch);
  QMatrix sq{{1, 0}, {0, 1}};
  QVector shortb{1};
  EXPECT_THROW(lct::solve_linear_system(sq, shortb), lct::DimensionMismatch);
}

TEST(Determinant, Small) {
  EXPECT_EQ(lct::determinant(QMatrix{{2, -3}, {-3, 2}}), Rat(-5));
  EXPECT_EQ(lct::determinant(QMatrix{{0, 1}, {1, 0}}), Rat(-1));
  EXPECT_EQ(lct::determinant(QMatrix{{Rat(1, 2), 0}, {0, Rat(2, 3)}}), Rat(1, 3));
  EXPECT_EQ(lct::determinant(QMatrix{{1, 2}, {2, 4}}), Rat(0));
}

TEST(PositiveDefinite, Examples) {
  EXPECT_TRUE(lct::is_positive_definite(QMatrix{{2}}));
  EXPECT_FALSE(lct::is_positive_definite(QMatrix{{2, -3}, {-3, 2}}));
  // E6: chain 1-2-3-4-5 with node 6 attached to node 3.
  QMatrix e6{{2, -1, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0}, {0, -1, 2, -1, 0, -1},
             {0, 0, -1, 2, -1, 0}, {0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 2}};
  EXPECT_TRUE(lct::is_positive_definite(e6));
  EXPECT_EQ(lct::determinant(e6), Rat(3));
  EXPECT_THROW(lct::is_positive_definite(QMatrix{{1, 2}, {0, 1}}), lct::NotSymmetric);
}
