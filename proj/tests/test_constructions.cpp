#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sumprod/constructions.hpp"
#include "sumprod/harness/primes.hpp"
#include "test_util.hpp"

using namespace sumprod;

namespace {

FpSet S(u64 p, std::initializer_list<elem> xs) { return FpSet::from_elements(p, xs); }

// |P intersect x (P+P)^-1| counted pair by pair.
u64 lemma9_brute(u64 p, u64 m, u64 x) {
  oracle::Set doubled;
  for (u64 a = 1; a <= m; ++a) {
    for (u64 b = 1; b <= m; ++b) doubled.insert((a + b) % p);
  }
  u64 count = 0;
  for (u64 y = 1; y <= m; ++y) count += doubled.contains(x * oracle::inverse(y, p) % p);
  return count;
}

}  // namespace

TEST(Density, ParseAndCeil) {
  EXPECT_EQ(Density::parse("1/4").ceil_times(101), 26U);
  EXPECT_EQ(Density::parse("0.25").ceil_times(101), 26U);
  EXPECT_EQ(Density::parse("0.25").ceil_times(100), 25U);
  EXPECT_EQ(Density::parse(".3").ceil_times(10), 3U);
  EXPECT_EQ(Density::parse("2/8").str(), "1/4");
  EXPECT_EQ(Density::from_double(0.3).ceil_times(10), 3U);
  EXPECT_TRUE(Density::parse("0.49").below_half());
  EXPECT_FALSE(Density::parse("1/2").below_half());
  EXPECT_FALSE(Density::parse("0").below_half());
  EXPECT_ERROR_KIND(Density::parse("abc"), ParseError);
  EXPECT_ERROR_KIND(Density::parse("1/"), ParseError);
  EXPECT_ERROR_KIND(Density::parse("1/0"), BadDensity);
}

TEST(IntervalSet, Examples) {
  EXPECT_EQ(interval_set(7, 1, 2), S(7, {1, 2}));
  EXPECT_EQ(interval_set(101, 1, 26).size(), 26U);
  EXPECT_EQ(interval_set(5, 0, 4), FpSet::full(5));
  EXPECT_ERROR_KIND(interval_set(7, 3, 2), BadRange);
  EXPECT_ERROR_KIND(interval_set(7, 0, 7), BadRange);
}

TEST(IntervalSet, DoubledWrapsAround) {
  // m = 60 > p/2 for p = 101: P + P covers 2..120, which wraps to 0..19 as well.
  const auto d = interval_doubled(101, 60);
  EXPECT_EQ(d, sumset(interval_set(101, 1, 60), interval_set(101, 1, 60)));
  EXPECT_TRUE(d.contains(0));
  EXPECT_EQ(interval_doubled(101, 10), interval_set(101, 2, 20));
}

TEST(Lemma9, CountMatchesBruteForce) {
  for (u64 p : {31ULL, 101ULL, 257ULL}) {
    const auto ctx = make_field(p);
    for (u64 m : {p / 8, p / 4, p / 3}) {
      for (elem x : std::vector<elem>{1, 2, p - 1}) EXPECT_EQ(lemma9_count(ctx, m, x), lemma9_brute(p, m, x)) << p;
    }
  }
}

TEST(Theorem3, Examples) {
  for (u64 p : {97ULL, 101ULL, 10007ULL}) {
    const auto ctx = make_field(p);
    const auto a = theorem3_set(ctx, Density::make(1, 4));
    EXPECT_FALSE(a_aplusa(ctx, a).contains(1)) << p;
    EXPECT_FALSE(a.contains(0));
    const u64 m = Density::make(1, 4).ceil_times(p);
    EXPECT_EQ(a.size(), m - lemma9_count(ctx, m));
  }
  const auto big = theorem3_set(make_field(10007), Density::make(1, 4));
  EXPECT_NEAR(static_cast<double>(big.size()) / 10007.0, 0.125, 0.03);
  EXPECT_ERROR_KIND(theorem3_set(make_field(101), Density::make(1, 2)), BadDensity);
  EXPECT_ERROR_KIND(theorem3_set(make_field(101), Density::make(0, 1)), BadDensity);
}

TEST(Theorem3, ExactAbsenceAcrossDensities) {
  for (u64 p : harness::odd_primes_in_range(5, 400)) {
    const auto ctx = make_field(p);
    for (auto c : {Density::make(1, 10), Density::make(1, 4), Density::make(2, 5), Density::make(49, 100)}) {
      const auto a = theorem3_set(ctx, c);
      EXPECT_FALSE(a_aplusa(ctx, a).contains(1)) << p << " c=" << c.str();
    }
  }
}

TEST(Theorem3, SmallCaseAgainstTripleLoop) {
  const u64 p = 61;
  const auto a = theorem3_set(make_field(p), Density::make(1, 4));
  const auto xs = a.elements();
  EXPECT_FALSE(oracle::a_aplusa(oracle::Set(xs.begin(), xs.end()), p).contains(1));
}

TEST(Theorem3Multi, Examples) {
  const auto f101 = make_field(101);
  EXPECT_EQ(theorem3_multi(f101, 1, {1}), theorem3_set(f101, Density::make(1, 4)));

  const auto f997 = make_field(997);
  const elem r = least_nonsquare(f997);
  const auto a = theorem3_multi(f997, 2, {1, r});
  const auto cover = a_aplusa(f997, a);
  EXPECT_FALSE(cover.contains(1));
  EXPECT_FALSE(cover.contains(r));

  const u64 p = 4999;
  const auto f = make_field(p);
  const auto targets = default_targets(f, 4);
  EXPECT_EQ(targets, (std::vector<elem>{1, 3, 9, 27}));
  const auto b = theorem3_multi(f, 4);
  const auto cover4 = a_aplusa(f, b);
  for (elem x : targets) EXPECT_FALSE(cover4.contains(x));
  const double dp = static_cast<double>(p), c = 1.0 / 16.0, lg = std::log(dp);
  const double main = c * dp - 2.0 * 4.0 * c * c * dp;
  EXPECT_NEAR(main, dp / 32.0, 1e-9);
  EXPECT_LE(std::abs(static_cast<double>(b.size()) - main) / (4.0 * std::sqrt(dp) * lg * lg), 10.0);

  EXPECT_ERROR_KIND(theorem3_multi(f101, 2, {1, 1}), DuplicateTargets);
  EXPECT_ERROR_KIND(theorem3_multi(f101, 2, {1, 101}), ZeroTarget);
  EXPECT_ERROR_KIND(theorem3_multi(f101, 2, {1}), BadSize);
  EXPECT_ERROR_KIND(theorem3_multi(f101, 0), BadDensity);
  EXPECT_ERROR_KIND(theorem3_multi(f101, 26), BadDensity);
}

TEST(Theorem3Multi, DilationTransport) {
  // For s = c^2: x misses A(A+A) iff s x misses (cA)((cA) + (cA)).
  const u64 p = 1009;
  const auto ctx = make_field(p);
  const auto a = theorem3_set(ctx, Density::make(1, 4));
  for (elem c : {2ULL, 5ULL, 77ULL, 1008ULL}) {
    const auto ca = dilate(a, c);
    const elem s = ctx.mul(c, c);
    const auto lhs = a_aplusa(ctx, a);
    const auto rhs = a_aplusa(ctx, ca);
    for (elem x = 1; x < p; ++x) EXPECT_EQ(lhs.contains(x), rhs.contains(ctx.mul(s, x)));
  }
}

TEST(SumFree, Examples) {
  EXPECT_TRUE(is_sumfree(S(7, {3, 4})));
  EXPECT_FALSE(is_sumfree(S(7, {1, 2})));
  EXPECT_TRUE(is_sumfree(S(7, {})));

  EXPECT_EQ(midthird_sumfree(7), S(7, {3, 4}));
  EXPECT_EQ(midthird_sumfree(13), S(13, {5, 6, 7, 8}));
  EXPECT_EQ(midthird_sumfree(5), S(5, {2, 3}));
  EXPECT_ERROR_KIND(midthird_sumfree(3), TooSmall);

  EXPECT_EQ(inverse_closed_sumfree(make_field(13)), S(13, {5, 8}));
  EXPECT_TRUE(inverse_closed_sumfree(make_field(11)).empty());
}

TEST(SumFree, MidthirdFormulaAndInverseClosure) {
  for (u64 p : harness::odd_primes_in_range(5, 10000)) {
    const auto mid = midthird_sumfree(p);
    ASSERT_EQ(mid.size(), (p + 1) / 3) << p;
    for (elem r = 1; r < p; ++r) ASSERT_EQ(mid.contains(r), 3 * r > p && 3 * r < 2 * p);
    if (p > 1000) continue;
    const auto ctx = make_field(p);
    ASSERT_TRUE(is_sumfree(mid));
    const auto a = inverse_closed_sumfree(ctx);
    EXPECT_EQ(inverse_set(ctx, a), a);
    EXPECT_TRUE(is_sumfree(a));
    if (!a.empty()) {
      EXPECT_FALSE(a_aplusa(ctx, a).contains(1));
    }
  }
}

TEST(SumFree, InverseClosedDensityAtScale) {
  const u64 p = 99991;
  const auto a = inverse_closed_sumfree(make_field(p));
  EXPECT_NEAR(static_cast<double>(a.size()) / static_cast<double>(p), 1.0 / 9.0, 0.02);
}

TEST(Constants, Thresholds) {
  const auto k = theorem1_constants();
  EXPECT_NEAR(k.cubic_root, 0.305091, 1e-5);
  EXPECT_NEAR(k.c1_threshold, 0.29513, 1e-5);
  EXPECT_NEAR(k.c1_threshold, k.c1_threshold_closed_form, 1e-9);
  EXPECT_NEAR(Theorem1Constants::cubic(k.cubic_root), 0.0, 1e-8);
  EXPECT_DOUBLE_EQ(k.lev_threshold, 0.30065);
  EXPECT_NEAR(k.lev_threshold_computed, k.lev_threshold, 1e-4);
  EXPECT_GE(0.3 + Theorem1Constants::f(0.3), 0.5);
  EXPECT_NEAR(1.0 / k.cubic_root, 3.2777, 1e-4);
  // The cubic is the closing condition for f itself.
  EXPECT_NEAR(Theorem1Constants::closing_gap(k.cubic_root, Theorem1Constants::f(k.cubic_root)), 0.0, 1e-8);
}
