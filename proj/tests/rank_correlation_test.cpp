#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pairlink/rank_correlation.hpp"
#include "test_support.hpp"

using namespace pairlink;
using namespace pairlink::testing;

TEST(AverageRanks, TiesShareMeanPosition) {
  std::vector<double> v{10, 20, 20, 5, 20};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{2, 4, 4, 1, 4}));
  std::vector<double> one{3.0};
  EXPECT_EQ(average_ranks(one), (std::vector<double>{1}));
}

TEST(RankCorrelation, HandExample) {
  std::vector<double> a{1, 2, 3, 4}, b{1, 3, 2, 4};
  EXPECT_NEAR(kendall_tau_b(a, b), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(spearman_rho(a, b), 0.8, 1e-15);
}

TEST(RankCorrelation, ConstantSideIsNaN) {
  std::vector<double> a{1, 1, 1}, b{1, 2, 3};
  EXPECT_TRUE(std::isnan(kendall_tau_b(a, b)));
  EXPECT_TRUE(std::isnan(spearman_rho(b, a)));
}

TEST(RankCorrelation, Errors) {
  std::vector<double> one{1}, two{1, 2}, three{1, 2, 3};
  EXPECT_THROW(kendall_tau_b(one, one), std::invalid_argument);
  EXPECT_THROW(spearman_rho(two, three), std::invalid_argument);
  EXPECT_THROW(kendall_tau_b(two, three), std::invalid_argument);
}

TEST(RankCorrelation, MatchesBruteForceWithHeavyTies) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 40;
    std::uniform_int_distribution<int> pick(0, 1 + trial % 6);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = pick(rng);
      b[i] = pick(rng);
    }
    const double k = kendall_tau_b(a, b), bk = brute_kendall_tau_b(a, b);
    const double s = spearman_rho(a, b), bs = brute_spearman(a, b);
    if (std::isnan(bk)) {
      EXPECT_TRUE(std::isnan(k));
    } else {
      EXPECT_NEAR(k, bk, 1e-12);
    }
    if (std::isnan(bs)) {
      EXPECT_TRUE(std::isnan(s));
    } else {
      EXPECT_NEAR(s, bs, 1e-12);
    }
    EXPECT_EQ(average_ranks(a), brute_average_ranks(a));
  }
}

TEST(RankCorrelation, LargeRandomAgainstBruteForce) {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> d;
  std::vector<double> a(2000), b(2000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = d(rng);
    b[i] = a[i] + 0.5 * d(rng);
  }
  EXPECT_NEAR(kendall_tau_b(a, b), brute_kendall_tau_b(a, b), 1e-12);
  EXPECT_NEAR(spearman_rho(a, b), brute_spearman(a, b), 1e-12);
}
