#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "sws/datagen.hpp"
#include "sws/metrics.hpp"

using namespace sws;

namespace {

Matrix box_blur(const Matrix& m, long k) {
  const long R = static_cast<long>(m.rows()), C = static_cast<long>(m.cols());
  std::vector<double> out(m.size());
  for (long y = 0; y < R; ++y)
    for (long x = 0; x < C; ++x) {
      double s = 0.0;
      int n = 0;
      for (long dy = -k; dy <= k; ++dy)
        for (long dx = -k; dx <= k; ++dx) {
          const long yy = y + dy, xx = x + dx;
          if (yy < 0 || yy >= R || xx < 0 || xx >= C) continue;
          s += m(yy, xx);
          ++n;
        }
      out[y * C + x] = s / n;
    }
  return Matrix(m.rows(), m.cols(), std::move(out));
}

Matrix affine(const Matrix& m, double a, double b) {
  std::vector<double> v(m.data().begin(), m.data().end());
  for (double& x : v) x = a * x + b;
  return Matrix(m.rows(), m.cols(), std::move(v));
}

}  // namespace

TEST(Coherence, ConstantMatrixIsOne) {
  EXPECT_EQ(coherence_score(Matrix(7, 5, 3.25)), 1.0);
  EXPECT_EQ(coherence_score(Matrix(1, 1, -2.0), {1}), 1.0);
}

TEST(Coherence, TwoByTwoCheckerboard) {
  const Matrix m = Matrix::from_rows({{0, 1}, {1, 0}});
  // 16 comparisons, 8 of them between unequal neighbours.
  ASSERT_DOUBLE_EQ(oracle::coherence(m, 1), 0.5);
  EXPECT_DOUBLE_EQ(coherence_score(m, {1}), 0.5);
}

TEST(Coherence, MatchesNaiveEvaluation) {
  std::mt19937_64 rng(8);
  const std::size_t shapes[][2] = {{1, 1}, {1, 9}, {9, 1}, {3, 4}, {11, 6}, {17, 17}, {40, 23}, {64, 64}};
  for (const auto& sh : shapes) {
    for (std::size_t radius : {1u, 2u, 5u, 12u}) {
      const Matrix m = oracle::random_real_matrix(rng, sh[0], sh[1], -3, 7);
      ASSERT_NEAR(coherence_score(m, {radius}), oracle::coherence(m, radius), 1e-9)
          << sh[0] << "x" << sh[1] << " r=" << radius;
    }
  }
}

TEST(Coherence, UniformNoiseNearTwoThirds) {
  GenSpec g;
  g.rows = g.cols = 200;
  g.lo = 0.0;
  g.hi = 1.0;
  g.seed = 17;
  const Matrix m = generate(g);
  const double c = coherence_score(m, {5});
  // E|u - v| = 1/3 for independent uniforms; self-comparisons (one in 121
  // for interior cells) contribute zero.
  EXPECT_NEAR(c, 1.0 - (120.0 / 121.0) / 3.0, 0.005);
  EXPECT_NEAR(c, 0.67, 0.02);
}

TEST(Coherence, BoundedAndAffineInvariant) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> scale(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const Matrix m = oracle::random_real_matrix(rng, 5 + i % 20, 5 + (i * 7) % 30, -1, 1);
    const double c = coherence_score(m);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    double a = scale(rng);
    if (std::abs(a) < 0.1) a = 0.5;
    EXPECT_NEAR(coherence_score(affine(m, a, scale(rng))), c, 1e-9);
  }
}

TEST(Coherence, BlurRaisesCoherence) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const Matrix noise = oracle::random_real_matrix(rng, 48, 48, -1, 1);
    EXPECT_GT(coherence_score(box_blur(noise, 2)), coherence_score(noise));
  }
}

TEST(Accuracy, Basics) {
  const std::vector<Rect> a{{{0, 9}, {0, 9}}, {{0, 4}, {0, 4}}};
  EXPECT_EQ(accuracy(a, a, 0.9).accuracy, 1.0);
  const std::vector<Rect> far{{{20, 29}, {20, 29}}, {{10, 14}, {10, 14}}};
  const auto rep = accuracy(a, far, 0.5);
  EXPECT_EQ(rep.correct, 0u);
  EXPECT_EQ(rep.accuracy, 0.0);
  EXPECT_THROW(accuracy(a, std::vector<Rect>{a[0]}, 0.5), std::invalid_argument);
  EXPECT_THROW(accuracy(a, a, 0.0), std::invalid_argument);
}

TEST(Accuracy, CountsPairsAtOrAboveThreshold) {
  const Rect base{{0, 9}, {0, 9}};
  // IoU 1.0, 0.4 (40/100 contained), 0.6 (60/100 contained)
  const std::vector<Rect> refs{base, base, base};
  const std::vector<Rect> props{base, {{0, 3}, {0, 9}}, {{0, 5}, {0, 9}}};
  ASSERT_DOUBLE_EQ(iou(props[1], base), 0.4);
  ASSERT_DOUBLE_EQ(iou(props[2], base), 0.6);
  const auto rep = accuracy(props, refs, 0.5);
  EXPECT_EQ(rep.total, 3u);
  EXPECT_EQ(rep.correct, 2u);
  EXPECT_DOUBLE_EQ(rep.accuracy, 2.0 / 3.0);
}
