#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>

#include "sws/core.hpp"

namespace sws {

struct SubarrayResult {
  Interval interval;
  double sum = 0.0;
};

/// Maximum-sum nonempty contiguous run of `a`.
///
/// The running collection is discarded only once its sum goes strictly
/// negative, and the best record moves only on strict improvement, so among
/// equal-sum runs the earliest-starting, shortest one seen first is kept.
/// All-negative input yields the first maximal element. Zeros are ordinary
/// values (sampled aggregates are zero-padded).
inline SubarrayResult max_subarray(std::span<const double> a, OpCounters* counters = nullptr) {
  if (a.empty()) throw std::invalid_argument("max_subarray: empty input");
  SubarrayResult best{{0, 0}, -std::numeric_limits<double>::infinity()};
  double run = 0.0;
  std::size_t run_lo = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    run += a[i];
    if (run > best.sum) {
      best.sum = run;
      best.interval = {run_lo, i};
    }
    if (run < 0.0) {
      run = 0.0;
      run_lo = i + 1;
    }
  }
  if (counters) counters->kadane_steps += a.size();
  return best;
}

}  // namespace sws
