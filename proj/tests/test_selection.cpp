#include <chuxcorr/selection.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chuxcorr;

TEST(Admissible, Examples) {
  EXPECT_TRUE(admissible_pair(143, 5, 2, 1430));
  EXPECT_FALSE(admissible_pair(143, 12, 1, 1430));
  EXPECT_FALSE(admissible_pair(143, 7, 7, 143.0 * 143 - 1));
  EXPECT_TRUE(admissible_pair(143, 7, 7, 143.0 * 143));
  EXPECT_THROW(admissible_pair(143, 11, 1, 1430), std::invalid_argument);
}

TEST(Admissible, FractionalBudgetUsesIntegerPart) {
  // gcd(12 - 1, 143) * 143 = 1573
  EXPECT_TRUE(admissible_pair(143, 12, 1, 1573.0));
  EXPECT_TRUE(admissible_pair(143, 12, 1, 1573.9));
  EXPECT_FALSE(admissible_pair(143, 12, 1, 1572.999));
}

TEST(Plan, ExampleOne) {
  const auto p = plan(143, 1430);
  EXPECT_EQ(p.divisors_over_budget, (std::vector<Int>{11, 13, 143}));
  EXPECT_EQ(p.x_min, 11);
  EXPECT_EQ(p.x_phi_min, 11);
  EXPECT_EQ(p.lower_bound, 10);
  EXPECT_EQ(p.upper_bound, 10);
  EXPECT_TRUE(p.selected.empty());
}

TEST(Plan, ExampleTwo) {
  const auto p = plan(154, 1540);
  EXPECT_EQ(p.x_min, 11);
  EXPECT_EQ(p.x_phi_min, 14);
  EXPECT_EQ(p.upper_bound, 6);
  EXPECT_EQ(p.lower_bound, 4); // 1, 3, 5, 9
}

TEST(Plan, PrimeAtFloorAndCeiling) {
  const auto lo = plan(509, 509);
  EXPECT_EQ(lo.divisors_over_budget, (std::vector<Int>{509}));
  EXPECT_EQ(lo.upper_bound, 508);
  const auto hi = plan(509, 509.0 * 509);
  EXPECT_EQ(hi.divisors_over_budget, (std::vector<Int>{509}));
  EXPECT_EQ(hi.upper_bound, 508);
  EXPECT_EQ(hi.lower_bound, 508);
}

TEST(Plan, TieBreakPicksSmallestX) {
  // theta_sq = 24 on N = 12: X = {3, 4, 6, 12}, phi = 2 for 3, 4 and 6
  const auto p = plan(12, 24);
  EXPECT_EQ(p.x_phi_min, 3);
  EXPECT_EQ(p.upper_bound, 2);
}

TEST(Plan, RejectsBudgetOutsideRange) {
  EXPECT_THROW(plan(143, 142), std::invalid_argument);
  EXPECT_THROW(plan(143, 143.0 * 143 + 1), std::invalid_argument);
}

TEST(Construct, ExampleOne) {
  const auto p = construct_set(143, 1430);
  EXPECT_EQ(p.selected, (std::vector<Int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_EQ(p.status, SearchStatus::Attained);
  EXPECT_TRUE(verify_set(143, p.selected, 1430).ok);
}

TEST(Construct, ExampleTwoSubstitutesNonUnit) {
  const auto p = construct_set(154, 1540);
  EXPECT_EQ(p.selected, (std::vector<Int>{1, 3, 5, 9, 13, 39}));
  EXPECT_EQ(p.status, SearchStatus::Attained);
}

TEST(Construct, FullBudgetTakesAllUnits) {
  const auto p = construct_set(509, 509.0 * 509);
  EXPECT_EQ(p.achieved(), 508);
  EXPECT_EQ(p.selected, unit_group(509).members());
}

TEST(Construct, BudgetExhaustionIsReported) {
  const auto p = construct_set(510, 2601, 1);
  EXPECT_EQ(p.status, SearchStatus::BudgetExhausted);
  EXPECT_TRUE(verify_set(510, p.selected, 2601).ok);
  EXPECT_LE(p.achieved(), p.upper_bound);
}

TEST(Construct, AttainsUpperBoundOnSampledLengths) {
  // The upper bound is conjectured tight; record misses instead of failing.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Int> pick(2, 2000);
  int misses = 0;
  for (int i = 0; i < 150; ++i) {
    const Int n = pick(rng);
    for (Int x : divisors(n)) {
      const auto p = construct_set(n, static_cast<double>(n * x));
      ASSERT_TRUE(verify_set(n, p.selected, static_cast<double>(n * x)).ok);
      ASSERT_LE(p.achieved(), p.upper_bound);
      if (p.status != SearchStatus::Attained) {
        ++misses;
        std::cout << "not attained: N=" << n << " theta_sq=" << n * x << " status=" << to_string(p.status)
                  << '\n';
      }
    }
  }
  RecordProperty("misses", misses);
}

TEST(Exhaustive, Examples) {
  EXPECT_EQ(max_set_exhaustive(143, 1430).size(), 10u);
  EXPECT_EQ(max_set_exhaustive(154, 1540).size(), 6u);
  const auto small = max_set_exhaustive(12, 24);
  const auto p = plan(12, 24);
  EXPECT_EQ(small, (std::vector<Int>{1, 11}));
  EXPECT_GE(static_cast<Int>(small.size()), p.lower_bound);
  EXPECT_LE(static_cast<Int>(small.size()), p.upper_bound);
  EXPECT_THROW(max_set_exhaustive(201, 201 * 3), std::invalid_argument);
}

TEST(Exhaustive, MatchesSubsetEnumeration) {
  for (Int n = 2; n <= 40; ++n) {
    if (euler_phi(n) > 16)
      continue;
    for (Int x : divisors(n)) {
      const Int theta = n * x;
      ASSERT_EQ(max_set_exhaustive(n, static_cast<double>(theta)), oracle::max_set(n, theta)) << n << " " << x;
    }
  }
}

TEST(Exhaustive, CompleteGraphAtPrimeFloor) {
  for (Int p : {5, 31, 127, 199}) {
    EXPECT_EQ(static_cast<Int>(max_set_exhaustive(p, static_cast<double>(p)).size()), p - 1);
    EXPECT_EQ(construct_set(p, static_cast<double>(p)).achieved(), p - 1);
  }
}

TEST(VerifySet, Examples) {
  std::vector<Int> first_ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_TRUE(verify_set(143, first_ten, 1430).ok);

  const auto bad = verify_set(154, {1, 3, 5, 9, 11, 13}, 1540);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.non_unit, 11);

  const auto pair = verify_set(143, {12, 1}, 1430);
  EXPECT_FALSE(pair.ok);
  ASSERT_TRUE(pair.violation.has_value());
  EXPECT_EQ(*pair.violation, (std::pair<Int, Int>{1, 12}));

  EXPECT_TRUE(verify_set(154, {1, 3, 5, 9, 13, 39}, 1540).ok);
}

TEST(Properties, SandwichAndMonotonicity) {
  for (Int n = 2; n <= 90; ++n) {
    Int prev_upper = 0;
    std::vector<Int> prev_set;
    for (Int x : divisors(n)) {
      const double theta = static_cast<double>(n * x);
      const auto p = plan(n, theta);
      const auto best = max_set_exhaustive(n, theta);
      const auto size = static_cast<Int>(best.size());
      ASSERT_LE(p.lower_bound, p.upper_bound);
      ASSERT_GE(size, p.lower_bound) << n << " " << x;
      ASSERT_LE(size, p.upper_bound) << n << " " << x;
      ASSERT_GE(p.upper_bound, prev_upper);
      ASSERT_TRUE(verify_set(n, prev_set, theta).ok);
      ASSERT_TRUE(verify_set(n, best, theta).ok);
      prev_upper = p.upper_bound;
      prev_set = best;
    }
  }
}
