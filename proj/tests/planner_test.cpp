#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "latwidth/planner.hpp"

namespace latwidth {
namespace {

BigInt floor_49_percent_factorial(int d) { return 49 * factorial(d) / 100; }

TEST(EvalCondition, FailsAtSmallDimension) {
  auto r = eval_condition(5, BigInt(101), 2);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.lhs_term_g, BigInt(2) * 6 * 243 * 101 * 101 * 101);
  EXPECT_EQ(r.rhs, BigInt(101) * 101 * 101 * 101);
}

TEST(EvalCondition, HoldsAtFortyWithAlphaBelowHalf) {
  auto p = nearest_prime(floor_49_percent_factorial(40));
  auto r = eval_condition(40, p.prime, 12);
  EXPECT_TRUE(r.narrow_half);
  EXPECT_TRUE(r.nonfree_half);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.p_certainty, Primality::probable_prime);
}

TEST(EvalCondition, RejectsCompositeAndSmallArguments) {
  EXPECT_THROW(eval_condition(5, BigInt(100), 2), std::invalid_argument);
  EXPECT_THROW(eval_condition(2, BigInt(101), 2), std::invalid_argument);
  EXPECT_THROW(eval_condition(5, BigInt(101), 0), std::invalid_argument);
}

TEST(EvalCondition, SufficientPairImpliesFullConditionOnRandomInputs) {
  std::mt19937_64 rng(4);
  std::vector<std::int64_t> primes;
  for (std::int64_t n = 2; primes.size() < 400; ++n)
    if (is_prime(n)) primes.push_back(n);
  int both = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int d = 3 + static_cast<int>(rng() % 30);
    BigInt p = trial % 2 ? BigInt(primes[rng() % primes.size()])
                         : nearest_prime(BigInt(rng() % 1'000'000'000'000ull + 2)).prime;
    std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 20);
    auto r = eval_condition(d, p, k);
    EXPECT_EQ(r.narrow_half, narrow_half_rearranged(d, p, k));
    if (r.narrow_half && r.nonfree_half) {
      EXPECT_TRUE(r.holds);
      ++both;
    }
  }
  EXPECT_GT(both, 0);
}

TEST(EvalCondition, MonotoneInK) {
  BigInt p = nearest_prime(floor_49_percent_factorial(20)).prime;
  bool previous = true;
  for (std::int64_t k = 1; k <= 12; ++k) {
    bool now = eval_condition(20, p, k).holds;
    if (now) EXPECT_TRUE(previous) << "k=" << k;
    previous = now;
  }
}

TEST(IntegerRoot, Examples) {
  EXPECT_EQ(integer_dth_root(BigInt(27), 3), 3);
  EXPECT_EQ(integer_dth_root(BigInt(26), 3), 2);
  EXPECT_EQ(integer_dth_root(BigInt(0), 5), 0);
  EXPECT_EQ(integer_dth_root(BigInt(1), 5), 1);
  EXPECT_EQ(integer_dth_root(BigInt(1000), 1), 1000);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    BigInt n = BigInt(rng()) * rng() * rng();
    int d = 1 + static_cast<int>(rng() % 50);
    BigInt r = integer_dth_root(n, d);
    EXPECT_LE(pow_big(r, static_cast<unsigned>(d)), n);
    EXPECT_GT(pow_big(r + 1, static_cast<unsigned>(d)), n);
  }
}

TEST(NearestPrime, Examples) {
  EXPECT_EQ(nearest_prime(BigInt(10)).prime, 11);
  EXPECT_EQ(nearest_prime(BigInt(2)).prime, 2);
  EXPECT_EQ(nearest_prime(BigInt(2)).gap, 0);
  auto twenty = nearest_prime(floor_49_percent_factorial(20));
  EXPECT_EQ(twenty.certainty, Primality::prime);
  EXPECT_LT(twenty.gap, 1000);
  EXPECT_THROW(nearest_prime(BigInt(1)), std::invalid_argument);
}

TEST(NearestPrime, MatchesSieve) {
  const std::size_t limit = 1'000'000;
  std::vector<bool> composite(limit + 200, false);
  for (std::size_t i = 2; i * i < composite.size(); ++i)
    if (!composite[i])
      for (std::size_t j = i * i; j < composite.size(); j += i) composite[j] = true;
  std::vector<std::int64_t> next(limit + 1);
  std::int64_t upcoming = 0;
  for (std::size_t n = composite.size() - 1; n >= 2; --n) {
    if (!composite[n]) upcoming = static_cast<std::int64_t>(n);
    if (n <= limit) next[n] = upcoming;
  }
  for (std::size_t n = 2; n <= limit; ++n) {
    ASSERT_EQ(is_prime(static_cast<std::int64_t>(n)), !composite[n]) << n;
    if (n % 997 == 0 || n < 5000) ASSERT_EQ(nearest_prime(BigInt(n)).prime, next[n]) << n;
  }
}

TEST(Primality, KnownValues) {
  EXPECT_EQ(primality(BigInt("18446744073709551557")), Primality::prime); // largest 64-bit prime
  EXPECT_EQ(primality(BigInt("3825123056546413051")), Primality::composite); // strong pseudoprime to 2..23
  EXPECT_EQ(primality(BigInt("170141183460469231731687303715884105727")), Primality::probable_prime);
  EXPECT_EQ(primality(BigInt("170141183460469231731687303715884105729")), Primality::composite);
}

TEST(Plan, FortyMeetsThreeTenths) {
  auto r = plan(40, Rational(3, 10));
  EXPECT_GE(r.k, 12);
  EXPECT_TRUE(r.report.holds);
  EXPECT_TRUE(r.meets_beta);
  EXPECT_EQ(r.k_max, 12);
  // k_max + 1 is the 40th root of floor(p / (4 * 41))
  BigInt n = r.prime.prime / (4 * 41);
  EXPECT_LE(pow_big(r.k_max + 1, 40), n);
  EXPECT_GT(pow_big(r.k_max + 2, 40), n);
}

TEST(Plan, SmallDimensionReportsHonestly) {
  auto r = plan(5, Rational(3, 10));
  EXPECT_FALSE(r.meets_beta);
  if (!r.feasible) EXPECT_EQ(r.k, 0);
}

TEST(Plan, ContiguousSuccessFromSomeDimensionAtMostForty) {
  std::vector<bool> ok(47, false);
  for (int d = 3; d <= 45; ++d) ok[d] = plan(d, Rational(3, 10)).meets_beta;
  int start = 0;
  for (int d = 3; d <= 40 && !start; ++d)
    if (std::all_of(ok.begin() + d, ok.begin() + d + 6, [](bool b) { return b; })) start = d;
  EXPECT_EQ(start, 28);
  EXPECT_FALSE(ok[27]);
}

TEST(BoundsReport, JsonRoundTrip) {
  auto r = eval_condition(7, BigInt(1009), 2);
  auto back = bounds_report_from_json(nlohmann::json::parse(to_json(r).dump()));
  EXPECT_EQ(back.p, r.p);
  EXPECT_EQ(back.lhs_term_g, r.lhs_term_g);
  EXPECT_EQ(back.lhs_term_f_num, r.lhs_term_f_num);
  EXPECT_EQ(back.rhs, r.rhs);
  EXPECT_EQ(back.holds, r.holds);
  EXPECT_EQ(back.narrow_half, r.narrow_half);
  EXPECT_EQ(back.nonfree_half, r.nonfree_half);
}

} // namespace
} // namespace latwidth
