#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

#include "lct/ade.hpp"
#include "lct/errors.hpp"
#include "lct/report.hpp"
#include "lct/surface.hpp"
#include "support/lp_oracle.hpp"

using lct::AdeType;
using lct::Family;
using lct::QMatrix;
using lct::QVector;
using lct::Rat;

namespace {

std::vector<AdeType> supported_types() {
  std::vector<AdeType> out;
  for (int n = 1; n <= 8; ++n) out.push_back({Family::A, n});
  for (int n = 4; n <= 8; ++n) out.push_back({Family::D, n});
  out.push_back({Family::E, 6});
  return out;
}

Rat random_rat(std::mt19937& rng) {
  std::uniform_int_distribution<std::int64_t> num(-1000000007, 1000000007), den(1, 99991);
  const std::int64_t p = num(rng);
  return Rat(p, den(rng));
}

}  // namespace

TEST(Arithmetic, StringRoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Rat r = random_rat(rng);
    EXPECT_EQ(Rat::parse(r.str()), r);
  }
}

TEST(Arithmetic, FieldIdentities) {
  std::mt19937 rng(12);
  for (int i = 0; i < 500; ++i) {
    const Rat a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) {
      EXPECT_EQ((a * b) / b, a);
      EXPECT_EQ(b * b.reciprocal(), Rat(1));
    }
    EXPECT_EQ(a < b, b > a);
    EXPECT_EQ(-(-a), a);
  }
}

TEST(Arithmetic, ReducedForm) {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    const Rat r = random_rat(rng) * random_rat(rng);
    EXPECT_GT(r.den(), 0);
    EXPECT_EQ(boost::multiprecision::gcd(r.num(), r.den()), r.is_zero() ? r.den() : lct::BigInt(1));
  }
}

TEST(Arithmetic, SolveRandomSystems) {
  std::mt19937 rng(14);
  std::uniform_int_distribution<int> size(1, 4), entry(-5, 5);
  int solved = 0;
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::size_t>(size(rng));
    QMatrix a(n, n);
    QVector b(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = Rat(entry(rng));
      b[r] = Rat(entry(rng));
    }
    if (lct::determinant(a).is_zero()) {
      EXPECT_THROW(lct::solve_linear_system(a, b), lct::SingularMatrix);
      continue;
    }
    EXPECT_EQ(a * lct::solve_linear_system(a, b), b);
    ++solved;
  }
  EXPECT_GT(solved, 200);
}

TEST(Cartan, PositiveDefiniteForSupportedTypes) {
  for (const auto& t : supported_types()) {
    const QMatrix c = lct::cartan_matrix(t);
    ASSERT_EQ(c.rows(), static_cast<std::size_t>(t.rank)) << t.name();
    EXPECT_TRUE(c.is_symmetric()) << t.name();
    EXPECT_TRUE(lct::is_positive_definite(c)) << t.name();
    for (std::size_t i = 0; i < c.rows(); ++i) EXPECT_EQ(c(i, i), Rat(2)) << t.name();
  }
}

TEST(Cartan, DeterminantsMatchFamilies) {
  for (const auto& t : supported_types()) {
    const Rat det = lct::determinant(lct::cartan_matrix(t));
    switch (t.family) {
      case Family::A: EXPECT_EQ(det, Rat(t.rank + 1)) << t.name(); break;
      case Family::D: EXPECT_EQ(det, Rat(4)) << t.name(); break;
      case Family::E: EXPECT_EQ(det, Rat(3)) << t.name(); break;
    }
  }
}

TEST(Cartan, AnInverseClosedForm) {
  for (int n = 1; n <= 6; ++n) {
    const QMatrix c = lct::cartan_matrix({Family::A, n});
    for (int j = 1; j <= n; ++j) {
      QVector e(static_cast<std::size_t>(n), Rat(0));
      e[static_cast<std::size_t>(j - 1)] = Rat(1);
      const QVector col = lct::solve_linear_system(c, e);
      for (int i = 1; i <= n; ++i)
        EXPECT_EQ(col[static_cast<std::size_t>(i - 1)], Rat(std::min(i, j) * (n + 1 - std::max(i, j)), n + 1))
            << "A" << n << " (" << i << "," << j << ")";
    }
  }
}

TEST(Cartan, UnsupportedTypesRejected) {
  EXPECT_THROW(lct::cartan_matrix({Family::E, 7}), lct::UnsupportedType);
  EXPECT_THROW(lct::cartan_matrix({Family::D, 3}), lct::UnsupportedType);
  EXPECT_THROW(lct::cartan_matrix({Family::A, 0}), lct::UnsupportedType);
}

TEST(FourierMotzkin, StrictnessPropagation) {
  lct::LinearSystem s;
  s.variables = {"x", "y"};
  s.add_constraint("x > 1", "a");
  s.add_constraint("x <= y", "b");
  s.add_constraint("y <= 1", "c");
  const auto r = lct::check_feasibility(s);
  ASSERT_TRUE(lct::is_infeasible(r));
  EXPECT_TRUE(std::get<lct::Infeasible>(r).certificate.derived.strict());

  lct::LinearSystem t;
  t.variables = {"x", "y"};
  t.add_constraint("x >= 1", "a");
  t.add_constraint("x <= y", "b");
  t.add_constraint("y <= 1", "c");
  const auto u = lct::check_feasibility(t);
  ASSERT_FALSE(lct::is_infeasible(u));
  EXPECT_EQ(std::get<lct::Feasible>(u).point, (QVector{Rat(1), Rat(1)}));
}

TEST(FourierMotzkin, DerivedRowStrictIffParentStrict) {
  std::mt19937 rng(15);
  for (int i = 0; i < 200; ++i) {
    const auto s = lcttest::random_system(rng, 4, 8);
    for (const auto& var : s.variables) {
      const auto e = lct::fourier_motzkin_eliminate(s, var);
      for (const auto& row : e.rows) {
        ASSERT_FALSE(row.parents.empty());
        bool strict_parent = false;
        QVector mult(s.rows.size(), Rat(0));
        for (const auto& [idx, m] : row.parents) {
          EXPECT_GT(m, Rat(0));
          strict_parent = strict_parent || s.rows[idx].strict();
          mult[idx] += m;
        }
        EXPECT_EQ(row.strict(), strict_parent);
        // The derived row is the stated combination with `var` cancelled.
        const lct::Row combo = lct::combine_rows(s, mult);
        const auto k = *s.index_of(var);
        EXPECT_TRUE(combo.coeffs[k].is_zero());
        EXPECT_EQ(combo.rhs, row.rhs);
      }
    }
  }
}

TEST(Fixtures, SerializationRoundTrip) {
  std::size_t count = 0;
  for (const char* sub : {"lemmas", "equivariant"}) {
    for (const auto& e : std::filesystem::directory_iterator(std::string(LCT_FIXTURE_DIR) + "/" + sub)) {
      if (e.path().extension() != ".yaml") continue;
      const auto f = lct::load_fixture_file(e.path().string());
      const std::string once = lct::serialize_fixture(f);
      const auto g = lct::load_fixture(once);
      EXPECT_TRUE(lct::fixtures_equal(f, g)) << e.path();
      EXPECT_EQ(lct::serialize_fixture(g), once) << e.path();
      ++count;
    }
  }
  EXPECT_EQ(count, 19u);
}

TEST(Fixtures, SystemJsonRoundTrip) {
  std::mt19937 rng(16);
  for (int i = 0; i < 100; ++i) {
    const auto s = lcttest::random_system(rng, 4, 10);
    const auto t = lct::system_from_json(lct::Json::parse(lct::system_json(s).dump()));
    ASSERT_EQ(t.rows.size(), s.rows.size());
    for (std::size_t r = 0; r < s.rows.size(); ++r) EXPECT_TRUE(lct::same_row(t.rows[r], s.rows[r]));
  }
}
