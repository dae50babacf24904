#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sws/aess.hpp"
#include "sws/exact.hpp"
#include "sws/swss.hpp"

using namespace sws;

TEST(ResolveStride, ReferenceValues) {
  EXPECT_EQ(resolve_stride(100, {StrideKind::sqrt}), 10u);
  EXPECT_EQ(resolve_stride(4, {StrideKind::loglog}), 1u);
  // ln(2048)^2 = 58.13...
  const auto logsq_2048 = static_cast<std::size_t>(std::lround(std::pow(std::log(2048.0), 2.0)));
  ASSERT_EQ(logsq_2048, 58u);
  EXPECT_EQ(resolve_stride(2048, {StrideKind::logsq}), 58u);
  EXPECT_EQ(resolve_stride(100, {StrideKind::log}), 5u);  // ln 100 = 4.61
  EXPECT_EQ(resolve_stride(7, {StrideKind::unit}), 1u);
}

TEST(ResolveStride, AlwaysWithinOneToN) {
  const StrideSpec specs[] = {{StrideKind::loglog}, {StrideKind::log},         {StrideKind::sqrt},
                              {StrideKind::logsq},  {StrideKind::constant, 50}, {StrideKind::unit}};
  for (std::size_t n = 1; n <= 3000; n += 7) {
    for (const auto& s : specs) {
      const auto k = resolve_stride(n, s);
      EXPECT_GE(k, 1u);
      EXPECT_LE(k, n);
    }
  }
  EXPECT_EQ(resolve_stride(1, {StrideKind::loglog}), 1u);
  EXPECT_EQ(resolve_stride(3, {StrideKind::constant, 50}), 3u);
}

TEST(StrideSpecText, ParsesAndPrints) {
  for (const char* s : {"loglog", "log", "sqrt", "logsq", "unit", "const:12"}) {
    EXPECT_EQ(to_string(parse_stride_spec(s)), s);
  }
  EXPECT_THROW(parse_stride_spec("const:0"), std::invalid_argument);
  EXPECT_THROW(parse_stride_spec("cube"), std::invalid_argument);
}

TEST(PartialPrefixSums, SampledRowsMatchWorkedExample) {
  const PartialPrefixSums p(Matrix(100, 100), 10, 5);
  const std::vector<std::size_t> want{5, 15, 25, 35, 45, 55, 65, 75, 85, 95};
  EXPECT_EQ(std::vector<std::size_t>(p.sampled_rows().begin(), p.sampled_rows().end()), want);
  EXPECT_EQ(std::vector<std::size_t>(p.sampled_cols().begin(), p.sampled_cols().end()), want);
}

TEST(PartialPrefixSums, UnitStrideEqualsFullTables) {
  std::mt19937_64 rng(1);
  const Matrix m = oracle::random_real_matrix(rng, 9, 13, -1, 1);
  const PartialPrefixSums p(m, 1, 0);
  const FullPrefixSums f(m);
  ASSERT_EQ(p.sampled_rows().size(), 9u);
  ASSERT_EQ(p.sampled_cols().size(), 13u);
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c <= 13; ++c) EXPECT_EQ(p.row_prefix(r)[c], f.horiz(r, c));
  for (std::size_t c = 0; c < 13; ++c)
    for (std::size_t r = 0; r <= 9; ++r) EXPECT_EQ(p.col_prefix(c, r), f.vert(r, c));
}

TEST(PartialPrefixSums, SampledTablesMatchFullTables) {
  std::mt19937_64 rng(2);
  const Matrix m = oracle::random_real_matrix(rng, 30, 30, -1, 1);
  const PartialPrefixSums p(m, 7, 3);
  const FullPrefixSums f(m);
  for (std::size_t k = 0; k < p.sampled_rows().size(); ++k)
    for (std::size_t c = 0; c <= 30; ++c) EXPECT_EQ(p.row_prefix(k)[c], f.horiz(p.sampled_rows()[k], c));
  for (std::size_t k = 0; k < p.sampled_cols().size(); ++k)
    for (std::size_t r = 0; r <= 30; ++r) EXPECT_EQ(p.col_prefix(k, r), f.vert(r, p.sampled_cols()[k]));
}

TEST(PartialPrefixSums, RejectsBadStrideOrOffset) {
  const Matrix m(4, 4);
  EXPECT_THROW(PartialPrefixSums(m, 0, 0), std::invalid_argument);
  EXPECT_THROW(PartialPrefixSums(m, 3, 3), std::invalid_argument);
}

TEST(SampledAggregate, ZeroMatrix) {
  const PartialPrefixSums p(Matrix(12, 12), 3, 1);
  for (double v : sampled_col_aggregate(p, {0, 11})) EXPECT_EQ(v, 0.0);
  for (double v : sampled_row_aggregate(p, {0, 11})) EXPECT_EQ(v, 0.0);
}

TEST(SampledAggregate, UnitStrideIsExactAggregation) {
  std::mt19937_64 rng(3);
  const Matrix m = oracle::random_int_matrix(rng, 8, 11, -5, 5);
  const PartialPrefixSums p(m, 1, 0);
  const auto a = sampled_col_aggregate(p, {2, 6});
  for (std::size_t c = 0; c < 11; ++c) EXPECT_EQ(a[c], oracle::naive_rect_sum(m, 2, 6, c, c));
  const auto b = sampled_row_aggregate(p, {1, 9});
  for (std::size_t r = 0; r < 8; ++r) EXPECT_EQ(b[r], oracle::naive_rect_sum(m, r, r, 1, 9));
}

TEST(SampledAggregate, StrideFourMatchesNaiveAtSampledPositionsOnly) {
  std::mt19937_64 rng(4);
  const Matrix m = oracle::random_real_matrix(rng, 20, 20, -1, 1);
  const PartialPrefixSums p(m, 4, 2);
  const auto a = sampled_col_aggregate(p, {3, 17});
  const auto b = sampled_row_aggregate(p, {5, 12});
  for (std::size_t j = 0; j < 20; ++j) {
    if (j % 4 == 2) {
      EXPECT_NEAR(a[j], oracle::naive_rect_sum(m, 3, 17, j, j), 1e-12);
      EXPECT_NEAR(b[j], oracle::naive_rect_sum(m, j, j, 5, 12), 1e-12);
    } else {
      EXPECT_EQ(a[j], 0.0);
      EXPECT_EQ(b[j], 0.0);
    }
  }
  EXPECT_THROW(sampled_col_aggregate(p, {3, 20}), std::out_of_range);
}

TEST(Swss, UnitStrideReproducesAess) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(16, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = oracle::random_real_matrix(rng, dim(rng), dim(rng), -1, 1);
    const auto a = aess_search(m, kDefaultIterationCap);
    const auto s = swss_search(m, {{StrideKind::unit}, kDefaultIterationCap});
    ASSERT_EQ(s.rect, a.rect);
    ASSERT_EQ(s.iterations, a.iterations);
    ASSERT_EQ(s.trace, a.trace);
    ASSERT_EQ(s.termination, a.termination);
  }
}

TEST(Swss, BlockFoundWithStrideTen) {
  std::vector<double> v(100 * 100, 0.0);
  for (std::size_t r = 20; r <= 49; ++r)
    for (std::size_t c = 20; c <= 49; ++c) v[r * 100 + c] = 1.0;
  const Matrix m(100, 100, std::move(v));
  const PartialPrefixSums p(m, 10, 5);
  const auto s = swss_search(p, kDefaultIterationCap);
  const auto b = bentley_max_rect(m);
  EXPECT_EQ(b.sum, 900);
  EXPECT_GE(iou(s.rect, b.rect), 0.5);
}

TEST(Swss, TerminationAndTraceInvariants) {
  std::size_t caps = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const Matrix m = oracle::random_real_matrix(rng, 64, 64, -1, 1);
    const auto s = swss_search(m, {{StrideKind::sqrt}, 20});
    ASSERT_LE(s.iterations, 20u);
    ASSERT_EQ(s.iterations, s.trace.size());
    for (const auto& t : s.trace) ASSERT_EQ(t.g, t.s - t.s1);
    if (s.termination == Termination::iteration_cap) {
      ++caps;
      EXPECT_EQ(s.iterations, 20u);
      EXPECT_GT(s.trace.back().g, 0.0);
    } else {
      EXPECT_LE(s.trace.back().g, 0.0);
    }
    for (std::size_t i = 0; i + 1 < s.trace.size(); ++i) EXPECT_GT(s.trace[i].g, 0.0);
  }
  RecordProperty("cap_hits", static_cast<int>(caps));
}

TEST(Swss, StrideLargerThanShortAxisStillRuns) {
  std::mt19937_64 rng(6);
  const Matrix m = oracle::random_real_matrix(rng, 1, 100, -1, 1);
  const auto s = swss_search(m, {{StrideKind::sqrt}, 20});
  EXPECT_TRUE(m.contains(s.rect));
  EXPECT_LE(s.iterations, 20u);
}

TEST(Swss, StorageAndWorkAreSublinear) {
  for (std::size_t n : {64u, 256u, 300u}) {
    for (StrideKind kind : {StrideKind::sqrt, StrideKind::log, StrideKind::logsq}) {
      std::mt19937_64 rng(n);
      const Matrix m = oracle::random_real_matrix(rng, n, n, -1, 1);
      const std::size_t f = resolve_stride(n, {kind});
      const std::size_t lines = (n + f - 1) / f;
      OpCounters c;
      swss_search(m, {{kind}, 20}, &c);
      EXPECT_LE(c.entries_touched, 2 * n * lines);
      EXPECT_LE(c.prefix_entries, 2 * n * lines + 2 * n);
    }
  }
}
