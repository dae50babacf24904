#pragma once

// Alternating search over full prefix sums: the exact-aggregation baseline.

#include <cstddef>
#include <span>

#include "sws/core.hpp"
#include "sws/search.hpp"

namespace sws {

inline constexpr std::size_t kAessDefaultCap = 1000;

/// Runs the alternating search over prebuilt tables. With exact aggregation
/// the gain can never be negative, so the cap only guards against
/// floating-point oscillation between equal-weight boxes.
inline SearchResult aess_search(const FullPrefixSums& p, std::size_t safety_cap = kAessDefaultCap,
                                OpCounters* counters = nullptr) {
  return detail::morph_search(
      p.rows(), p.cols(), safety_cap, true,
      [&](Interval rows, std::span<double> out) {
        for (std::size_t c = 0; c < out.size(); ++c) out[c] = p.col_range(c, rows);
      },
      [&](Interval cols, std::span<double> out) {
        for (std::size_t r = 0; r < out.size(); ++r) out[r] = p.row_range(r, cols);
      },
      counters);
}

inline SearchResult aess_search(const Matrix& m, std::size_t safety_cap = kAessDefaultCap,
                                OpCounters* counters = nullptr) {
  return aess_search(FullPrefixSums(m, counters), safety_cap, counters);
}

}  // namespace sws
