#pragma once

// Exact max-weight rectangle solvers: exhaustive enumeration and Bentley's
// column-pair reduction to 1D maximum subarray.

#include <limits>
#include <vector>

#include "sws/core.hpp"
#include "sws/kadane.hpp"

namespace sws {

struct ExactResult {
  Rect rect;
  double sum = 0.0;
};

/// Enumerates every rectangle and sums it cell by cell: O(rows^3 cols^3).
/// Meant for matrices up to ~16x16. Ties resolve to the lexicographically
/// smallest (row_lo, col_lo, row_hi, col_hi).
inline ExactResult brute_force_max_rect(const Matrix& m) {
  ExactResult best{m.full_rect(), -std::numeric_limits<double>::infinity()};
  const std::size_t R = m.rows();
  const std::size_t C = m.cols();
  for (std::size_t r0 = 0; r0 < R; ++r0) {
    for (std::size_t c0 = 0; c0 < C; ++c0) {
      for (std::size_t r1 = r0; r1 < R; ++r1) {
        for (std::size_t c1 = c0; c1 < C; ++c1) {
          double s = 0.0;
          for (std::size_t r = r0; r <= r1; ++r)
            for (std::size_t c = c0; c <= c1; ++c) s += m(r, c);
          if (s > best.sum) best = {{{r0, r1}, {c0, c1}}, s};
        }
      }
    }
  }
  return best;
}

/// Bentley's O(cols^2 * rows) algorithm. For each column pair [c0, c1] the
/// rows are collapsed through the horizontal prefix table and Kadane picks
/// the row span. First strict maximum over (c0, c1) in lexicographic order
/// wins.
inline ExactResult bentley_max_rect(const Matrix& m, OpCounters* counters = nullptr) {
  const FullPrefixSums p(m, counters);
  const std::size_t R = m.rows();
  const std::size_t C = m.cols();
  std::vector<double> agg(R);
  ExactResult best{m.full_rect(), -std::numeric_limits<double>::infinity()};
  for (std::size_t c0 = 0; c0 < C; ++c0) {
    for (std::size_t c1 = c0; c1 < C; ++c1) {
      const Interval cols{c0, c1};
      for (std::size_t r = 0; r < R; ++r) agg[r] = p.row_range(r, cols);
      const SubarrayResult k = max_subarray(agg, counters);
      if (k.sum > best.sum) best = {{k.interval, cols}, k.sum};
    }
  }
  return best;
}

}  // namespace sws
