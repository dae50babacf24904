#pragma once

// Dense score matrices, inclusive rectangle geometry and prefix-sum tables
// shared by every solver in the library.
//
// Index convention: row-major, 0-based, inclusive bounds. A Rect's row span
// is the vertical (y) extent and its column span the horizontal (x) extent.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sws {

namespace detail {

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace detail

/// Closed index range [lo, hi].
struct Interval {
  std::size_t lo = 0;
  std::size_t hi = 0;

  constexpr std::size_t length() const noexcept { return hi - lo + 1; }
  constexpr bool contains(std::size_t i) const noexcept { return lo <= i && i <= hi; }
  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

struct Rect {
  Interval row_span;
  Interval col_span;

  constexpr std::size_t area() const noexcept { return row_span.length() * col_span.length(); }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

inline std::string to_string(const Rect& r) {
  std::ostringstream os;
  os << "rows[" << r.row_span.lo << ',' << r.row_span.hi << "]xcols[" << r.col_span.lo << ','
     << r.col_span.hi << ']';
  return os.str();
}

/// Instrumentation hooks. Solvers bump these when handed a non-null pointer;
/// they never affect results.
struct OpCounters {
  std::uint64_t entries_touched = 0;   // matrix cells read during preprocessing
  std::uint64_t prefix_entries = 0;    // prefix-table cells allocated
  std::uint64_t kadane_steps = 0;      // elements consumed by the 1D kernel
};

/// Row-major grid of finite doubles. Immutable once built.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("matrix dimensions must be >= 1");
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("matrix data length " + std::to_string(data_.size()) +
                                  " != rows*cols " + std::to_string(rows_ * cols_));
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!std::isfinite(data_[i])) {
        throw std::invalid_argument("non-finite matrix entry at (" + std::to_string(i / cols_) +
                                    "," + std::to_string(i % cols_) + ")");
      }
    }
  }

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : Matrix(rows, cols, std::vector<double>(rows * cols, fill)) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix must have at least one row");
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
      if (r.size() != cols) throw std::invalid_argument("ragged rows");
      data.insert(data.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), cols, std::move(data));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  double at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  bool contains(const Rect& r) const noexcept {
    return r.row_span.lo <= r.row_span.hi && r.row_span.hi < rows_ &&
           r.col_span.lo <= r.col_span.hi && r.col_span.hi < cols_;
  }

  Rect full_rect() const noexcept { return {{0, rows_ - 1}, {0, cols_ - 1}}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Per-row and per-column cumulative sums with a leading zero:
///   horiz(r, c) = sum of M(r, 0..c-1),   vert(r, c) = sum of M(0..r-1, c).
class FullPrefixSums {
 public:
  explicit FullPrefixSums(const Matrix& m, OpCounters* counters = nullptr)
      : rows_(m.rows()), cols_(m.cols()), horiz_(rows_ * (cols_ + 1)), vert_((rows_ + 1) * cols_) {
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto src = m.row(r);
      double* dst = horiz_.data() + r * (cols_ + 1);
      double acc = 0.0;
      dst[0] = 0.0;
      for (std::size_t c = 0; c < cols_; ++c) dst[c + 1] = acc += src[c];
    }
    // Row-major sweep; vert(r+1, c) = vert(r, c) + M(r, c).
    std::fill(vert_.begin(), vert_.begin() + static_cast<std::ptrdiff_t>(cols_), 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto src = m.row(r);
      const double* prev = vert_.data() + r * cols_;
      double* next = vert_.data() + (r + 1) * cols_;
      for (std::size_t c = 0; c < cols_; ++c) next[c] = prev[c] + src[c];
    }
    if (counters) {
      counters->entries_touched += 2 * m.size();
      counters->prefix_entries += horiz_.size() + vert_.size();
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double horiz(std::size_t r, std::size_t c) const noexcept { return horiz_[r * (cols_ + 1) + c]; }
  double vert(std::size_t r, std::size_t c) const noexcept { return vert_[r * cols_ + c]; }

  /// Sum of row r over the column span.
  double row_range(std::size_t r, Interval cols) const noexcept {
    return horiz(r, cols.hi + 1) - horiz(r, cols.lo);
  }
  /// Sum of column c over the row span.
  double col_range(std::size_t c, Interval rows) const noexcept {
    return vert(rows.hi + 1, c) - vert(rows.lo, c);
  }

  std::size_t stored_entries() const noexcept { return horiz_.size() + vert_.size(); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> horiz_;
  std::vector<double> vert_;
};

inline FullPrefixSums build_full_prefix_sums(const Matrix& m, OpCounters* counters = nullptr) {
  return FullPrefixSums(m, counters);
}

/// Sum of the entries inside r, aggregated along whichever axis is shorter.
inline double rect_sum(const FullPrefixSums& p, const Rect& r) {
  if (r.row_span.lo > r.row_span.hi || r.col_span.lo > r.col_span.hi || r.row_span.hi >= p.rows() ||
      r.col_span.hi >= p.cols()) {
    throw std::out_of_range("rect " + to_string(r) + " outside " + std::to_string(p.rows()) + "x" +
                            std::to_string(p.cols()) + " matrix");
  }
  double total = 0.0;
  if (r.row_span.length() <= r.col_span.length()) {
    for (std::size_t row = r.row_span.lo; row <= r.row_span.hi; ++row) total += p.row_range(row, r.col_span);
  } else {
    for (std::size_t col = r.col_span.lo; col <= r.col_span.hi; ++col) total += p.col_range(col, r.row_span);
  }
  return total;
}

/// Convenience overload: builds the tables and queries once.
inline double rect_sum(const Matrix& m, const Rect& r) {
  if (!m.contains(r)) {
    throw std::out_of_range("rect " + to_string(r) + " outside " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " matrix");
  }
  double total = 0.0;
  for (std::size_t row = r.row_span.lo; row <= r.row_span.hi; ++row) {
    const auto vals = m.row(row);
    double acc = 0.0;
    for (std::size_t c = r.col_span.lo; c <= r.col_span.hi; ++c) acc += vals[c];
    total += acc;
  }
  return total;
}

inline std::size_t overlap_length(Interval a, Interval b) noexcept {
  const std::size_t lo = std::max(a.lo, b.lo);
  const std::size_t hi = std::min(a.hi, b.hi);
  return lo <= hi ? hi - lo + 1 : 0;
}

/// Intersection over union in cell counts.
inline double iou(const Rect& a, const Rect& b) noexcept {
  const std::size_t inter = overlap_length(a.row_span, b.row_span) * overlap_length(a.col_span, b.col_span);
  const std::size_t uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace sws
