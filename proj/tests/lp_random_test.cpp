#include <gtest/gtest.h>

#include <random>

#include "lct/lp.hpp"
#include "support/lp_oracle.hpp"

TEST(Oracle, KnownSystems) {
  lct::LinearSystem s;
  s.variables = {"x"};
  s.add_constraint("x > 1", "a");
  s.add_constraint("x <= 1", "b");
  EXPECT_FALSE(lcttest::oracle_feasible(s));
  s.rows.pop_back();
  s.add_constraint("x <= 2", "b");
  EXPECT_TRUE(lcttest::oracle_feasible(s));
}

TEST(Random, AgreesWithVertexOracle) {
  std::mt19937 rng(20261015);
  int feasible = 0, infeasible = 0;
  for (int i = 0; i < 100; ++i) {
    const auto s = lcttest::random_system(rng, 4, 10);
    const auto r = lct::check_feasibility(s);
    const bool oracle = lcttest::oracle_feasible(s);
    ASSERT_EQ(!lct::is_infeasible(r), oracle) << "instance " << i;
    if (lct::is_infeasible(r)) {
      EXPECT_TRUE(lct::replay_certificate(s, std::get<lct::Infeasible>(r).certificate)) << "instance " << i;
      ++infeasible;
    } else {
      EXPECT_TRUE(s.satisfied_by(std::get<lct::Feasible>(r).point)) << "instance " << i;
      ++feasible;
    }
  }
  // Both outcomes must be exercised for the agreement to mean anything.
  EXPECT_GT(feasible, 10);
  EXPECT_GT(infeasible, 10);
}

TEST(Random, PlantedPointsNeverInfeasible) {
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto planted = lcttest::planted_system(rng, 5, 12);
    ASSERT_TRUE(planted.system.satisfied_by(planted.point));
    const auto r = lct::check_feasibility(planted.system);
    ASSERT_FALSE(lct::is_infeasible(r)) << "instance " << i;
    EXPECT_TRUE(planted.system.satisfied_by(std::get<lct::Feasible>(r).point)) << "instance " << i;
  }
}

TEST(Random, CertificatesSurviveRowOrder) {
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto s = lcttest::random_system(rng, 3, 8);
    const bool before = lct::is_infeasible(lct::check_feasibility(s));
    std::shuffle(s.rows.begin(), s.rows.end(), rng);
    const auto r = lct::check_feasibility(s);
    EXPECT_EQ(lct::is_infeasible(r), before);
    if (lct::is_infeasible(r)) EXPECT_TRUE(lct::replay_certificate(s, std::get<lct::Infeasible>(r).certificate));
  }
}
