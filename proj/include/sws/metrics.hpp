#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "sws/core.hpp"

namespace sws {

inline constexpr std::size_t kDefaultCoherenceRadius = 5;

struct CoherenceParams {
  std::size_t radius = kDefaultCoherenceRadius;
};

/// Spatial coherence C = 1 - D, where D is the mean absolute difference
/// between each entry and every in-bounds neighbour within a square radius,
/// divided by the matrix's value range. Out-of-bounds offsets are skipped
/// and not counted; the zero offset is counted (it contributes nothing).
/// A constant matrix has D = 0.
///
/// Each unordered neighbour pair is visited once and weighted twice.
inline double coherence_score(const Matrix& m, CoherenceParams params = {}) {
  if (params.radius == 0) throw std::invalid_argument("coherence radius must be >= 1");
  const auto data = m.data();
  const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
  const double range = *mx - *mn;
  if (range == 0.0) return 1.0;

  const auto R = static_cast<std::ptrdiff_t>(m.rows());
  const auto C = static_cast<std::ptrdiff_t>(m.cols());
  const auto r = static_cast<std::ptrdiff_t>(params.radius);

  // Comparison count per axis: sum over positions of in-bounds offsets.
  auto axis_count = [r](std::ptrdiff_t n) {
    double total = 0.0;
    for (std::ptrdiff_t d = -r; d <= r; ++d) total += static_cast<double>(std::max<std::ptrdiff_t>(0, n - std::abs(d)));
    return total;
  };
  const double comparisons = axis_count(R) * axis_count(C);

  double numer = 0.0;
  // Half-plane of offsets: (0, 1..r) and (1..r, -r..r).
  for (std::ptrdiff_t dy = 0; dy <= r && dy < R; ++dy) {
    const std::ptrdiff_t dx_lo = dy == 0 ? 1 : -r;
    for (std::ptrdiff_t dx = dx_lo; dx <= r; ++dx) {
      if (std::abs(dx) >= C) continue;
      const std::ptrdiff_t c0 = std::max<std::ptrdiff_t>(0, -dx);
      const std::ptrdiff_t c1 = std::min(C, C - dx);
      double partial = 0.0;
      for (std::ptrdiff_t y = 0; y + dy < R; ++y) {
        const double* a = data.data() + y * C;
        const double* b = data.data() + (y + dy) * C + dx;
        for (std::ptrdiff_t x = c0; x < c1; ++x) partial += std::abs(a[x] - b[x]);
      }
      numer += partial;
    }
  }
  const double d = 2.0 * numer / (comparisons * range);
  return 1.0 - d;
}

struct AccuracyReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  double iou_threshold = 0.5;
};

inline constexpr double kDefaultIouThreshold = 0.5;

/// Fraction of proposals whose IoU with the paired reference reaches the
/// threshold.
inline AccuracyReport accuracy(std::span<const Rect> proposals, std::span<const Rect> references,
                               double threshold = kDefaultIouThreshold) {
  if (proposals.size() != references.size()) throw std::invalid_argument("accuracy: sequence length mismatch");
  if (proposals.empty()) throw std::invalid_argument("accuracy: empty sequences");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("accuracy: threshold must be in (0, 1]");
  AccuracyReport rep;
  rep.total = proposals.size();
  rep.iou_threshold = threshold;
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    if (iou(proposals[i], references[i]) >= threshold) ++rep.correct;
  }
  rep.accuracy = static_cast<double>(rep.correct) / static_cast<double>(rep.total);
  return rep;
}

}  // namespace sws
