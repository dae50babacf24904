#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "sws/exact.hpp"

using namespace sws;

TEST(BruteForce, SingleNegativeCell) {
  const auto r = brute_force_max_rect(Matrix::from_rows({{-7}}));
  EXPECT_EQ(r.sum, -7);
  EXPECT_EQ(r.rect, (Rect{{0, 0}, {0, 0}}));
}

TEST(BruteForce, AllPositiveTakesEverything) {
  const Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  const auto r = brute_force_max_rect(m);
  EXPECT_EQ(r.sum, 45);
  EXPECT_EQ(r.rect, m.full_rect());
}

TEST(BruteForce, TwoByTwo) {
  const auto r = brute_force_max_rect(Matrix::from_rows({{1, -2}, {-3, 4}}));
  EXPECT_EQ(r.sum, 4);
  EXPECT_EQ(r.rect, (Rect{{1, 1}, {1, 1}}));
}

TEST(BruteForce, TieBreakIsLexicographicallySmallest) {
  // Two separate cells of value 3 separated by a strongly negative column.
  const auto r = brute_force_max_rect(Matrix::from_rows({{3, -10, 3}}));
  EXPECT_EQ(r.rect, (Rect{{0, 0}, {0, 0}}));
}

TEST(Bentley, TwoByTwoAndSingleRow) {
  const auto a = bentley_max_rect(Matrix::from_rows({{1, -2}, {-3, 4}}));
  EXPECT_EQ(a.sum, 4);
  EXPECT_EQ(a.rect, (Rect{{1, 1}, {1, 1}}));
  const auto b = bentley_max_rect(Matrix::from_rows({{2, -1, 3}}));
  EXPECT_EQ(b.sum, 4);
  EXPECT_EQ(b.rect.col_span, (Interval{0, 2}));
}

TEST(Bentley, MatchesBruteForceOnRandomIntegerMatrices) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> dim(2, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix m = oracle::random_int_matrix(rng, dim(rng), dim(rng), -9, 9);
    const auto want = brute_force_max_rect(m);
    const auto got = bentley_max_rect(m);
    ASSERT_EQ(got.sum, want.sum) << "trial " << trial;
    ASSERT_EQ(oracle::naive_rect_sum(m, got.rect), got.sum);
    ASSERT_EQ(oracle::naive_rect_sum(m, want.rect), want.sum);
  }
}

TEST(Bentley, MatchesBruteForceOnRealMatricesAndRespectsBounds) {
  std::mt19937_64 rng(78);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = oracle::random_real_matrix(rng, dim(rng), dim(rng), -1, 1);
    const auto want = brute_force_max_rect(m);
    const auto got = bentley_max_rect(m);
    ASSERT_NEAR(got.sum, want.sum, 1e-9);
    ASSERT_NEAR(oracle::naive_rect_sum(m, got.rect), got.sum, 1e-9);

    const auto d = m.data();
    double positive = 0.0;
    for (double v : d) positive += std::max(v, 0.0);
    EXPECT_GE(got.sum, *std::max_element(d.begin(), d.end()) - 1e-12);
    EXPECT_LE(got.sum, positive + 1e-9);
  }
}
