#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "sws/core.hpp"

using namespace sws;

TEST(Matrix, RejectsBadShapesAndNonFinite) {
  EXPECT_THROW(Matrix(0, 3), std::invalid_argument);
  EXPECT_THROW(Matrix(2, 2, std::vector<double>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(Matrix(1, 2, std::vector<double>{1, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(Matrix(1, 1, std::vector<double>{std::numeric_limits<double>::infinity()}), std::invalid_argument);
  EXPECT_THROW(Matrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
}

TEST(FullPrefixSums, SingleRowRunningSum) {
  const Matrix m = Matrix::from_rows({{2, -1, 3}});
  const FullPrefixSums p = build_full_prefix_sums(m);
  EXPECT_EQ(p.horiz(0, 0), 0);
  EXPECT_EQ(p.horiz(0, 1), 2);
  EXPECT_EQ(p.horiz(0, 2), 1);
  EXPECT_EQ(p.horiz(0, 3), 4);
  EXPECT_EQ(p.vert(0, 1), 0);
  EXPECT_EQ(p.vert(1, 1), -1);
}

TEST(FullPrefixSums, ZeroMatrixIsAllZero) {
  const FullPrefixSums p(Matrix(4, 4));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c <= 4; ++c) EXPECT_EQ(p.horiz(r, c), 0.0);
  for (std::size_t r = 0; r <= 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(p.vert(r, c), 0.0);
}

TEST(FullPrefixSums, DifferencingReconstructsIntegerMatrixExactly) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = oracle::random_int_matrix(rng, 1 + trial % 8, 8, -100, 100);
    const FullPrefixSums p(m);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        EXPECT_EQ(p.horiz(r, c + 1) - p.horiz(r, c), m(r, c));
        EXPECT_EQ(p.vert(r + 1, c) - p.vert(r, c), m(r, c));
      }
  }
}

TEST(RectSum, TotalAndSingleCell) {
  const Matrix m = Matrix::from_rows({{2, -1, 3}});
  const FullPrefixSums p(m);
  EXPECT_EQ(rect_sum(p, m.full_rect()), 4);
  EXPECT_EQ(rect_sum(p, Rect{{0, 0}, {1, 1}}), -1);
  EXPECT_EQ(rect_sum(m, m.full_rect()), 4);
}

TEST(RectSum, OutOfBoundsThrows) {
  const Matrix m(3, 3, 1.0);
  const FullPrefixSums p(m);
  EXPECT_THROW(rect_sum(p, Rect{{0, 3}, {0, 0}}), std::out_of_range);
  EXPECT_THROW(rect_sum(p, Rect{{2, 1}, {0, 0}}), std::out_of_range);
  EXPECT_THROW(rect_sum(m, Rect{{0, 0}, {0, 5}}), std::out_of_range);
}

TEST(RectSum, ExhaustiveAgainstNaiveUpTo12x12) {
  std::mt19937_64 rng(3);
  for (std::size_t rows = 1; rows <= 12; rows += 3) {
    for (std::size_t cols = 1; cols <= 12; cols += 4) {
      const Matrix m = oracle::random_real_matrix(rng, rows, cols, -5, 5);
      const FullPrefixSums p(m);
      for (std::size_t r0 = 0; r0 < rows; ++r0)
        for (std::size_t r1 = r0; r1 < rows; ++r1)
          for (std::size_t c0 = 0; c0 < cols; ++c0)
            for (std::size_t c1 = c0; c1 < cols; ++c1) {
              const double want = oracle::naive_rect_sum(m, r0, r1, c0, c1);
              const double got = rect_sum(p, Rect{{r0, r1}, {c0, c1}});
              ASSERT_NEAR(got, want, 1e-9 * std::max(1.0, std::abs(want)));
            }
    }
  }
}

TEST(RectSum, RandomRectsOn10x10) {
  std::mt19937_64 rng(5);
  const Matrix m = oracle::random_real_matrix(rng, 10, 10, -1, 1);
  const FullPrefixSums p(m);
  std::uniform_int_distribution<std::size_t> d(0, 9);
  for (int i = 0; i < 50; ++i) {
    auto a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    const Rect r{{std::min(a, b), std::max(a, b)}, {std::min(c, e), std::max(c, e)}};
    EXPECT_NEAR(rect_sum(p, r), oracle::naive_rect_sum(m, r), 1e-9);
  }
}

TEST(Iou, IdentityDisjointAndStrip) {
  const Rect a{{0, 9}, {0, 9}};
  EXPECT_EQ(iou(a, a), 1.0);
  EXPECT_EQ(iou(a, Rect{{10, 12}, {0, 9}}), 0.0);
  const Rect b{{5, 14}, {0, 9}};  // overlaps a in a 5x10 strip
  EXPECT_DOUBLE_EQ(iou(a, b), 50.0 / 150.0);
}

TEST(Iou, SymmetricBoundedAndOneOnlyWhenEqual) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> d(0, 7);
  for (int i = 0; i < 500; ++i) {
    auto mk = [&] {
      auto a = d(rng), b = d(rng), c = d(rng), e = d(rng);
      return Rect{{std::min(a, b), std::max(a, b)}, {std::min(c, e), std::max(c, e)}};
    };
    const Rect x = mk(), y = mk();
    const double v = iou(x, y);
    EXPECT_EQ(v, iou(y, x));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(v == 1.0, x == y);
  }
}
