#pragma once

// Slice-wise subwindow search: the alternating search run over prefix sums
// of equidistant sampled rows and columns only. Unsampled positions of each
// aggregate are left at zero before Kadane sees them.
//
// Stride functions use the natural logarithm. Rows and columns share one
// stride, resolved from max(rows, cols), and one offset, floor(stride / 2).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sws/core.hpp"
#include "sws/search.hpp"

namespace sws {

enum class StrideKind { loglog, log, sqrt, logsq, constant, unit };

struct StrideSpec {
  StrideKind kind = StrideKind::sqrt;
  std::size_t constant = 1;  // only read when kind == constant

  friend bool operator==(const StrideSpec&, const StrideSpec&) = default;
};

inline std::string to_string(const StrideSpec& s) {
  switch (s.kind) {
    case StrideKind::loglog: return "loglog";
    case StrideKind::log: return "log";
    case StrideKind::sqrt: return "sqrt";
    case StrideKind::logsq: return "logsq";
    case StrideKind::constant: return "const:" + std::to_string(s.constant);
    case StrideKind::unit: return "unit";
  }
  return "?";
}

/// Accepts loglog | log | sqrt | logsq | unit | const:K (K >= 1).
inline StrideSpec parse_stride_spec(std::string_view text) {
  if (text == "loglog") return {StrideKind::loglog};
  if (text == "log") return {StrideKind::log};
  if (text == "sqrt") return {StrideKind::sqrt};
  if (text == "logsq") return {StrideKind::logsq};
  if (text == "unit") return {StrideKind::unit};
  if (text.starts_with("const:")) {
    const std::string_view digits = text.substr(6);
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && k >= 1) {
      return {StrideKind::constant, k};
    }
  }
  throw std::invalid_argument("unknown stride spec '" + std::string(text) + "'");
}

/// f(n) rounded to the nearest integer and clamped to [1, n].
inline std::size_t resolve_stride(std::size_t n, const StrideSpec& spec) {
  if (n == 0) throw std::invalid_argument("resolve_stride: n must be >= 1");
  const double x = static_cast<double>(n);
  double f = 1.0;
  switch (spec.kind) {
    case StrideKind::loglog: f = std::log(std::log(x)); break;
    case StrideKind::log: f = std::log(x); break;
    case StrideKind::sqrt: f = std::sqrt(x); break;
    case StrideKind::logsq: f = std::log(x) * std::log(x); break;
    case StrideKind::constant: f = static_cast<double>(spec.constant); break;
    case StrideKind::unit: f = 1.0; break;
  }
  if (!std::isfinite(f) || f < 1.0) return 1;
  const auto rounded = static_cast<std::size_t>(std::llround(f));
  return std::clamp<std::size_t>(rounded, 1, n);
}

/// Prefix sums kept only for rows and columns offset, offset+stride, ...
class PartialPrefixSums {
 public:
  PartialPrefixSums(const Matrix& m, std::size_t stride, std::size_t offset, OpCounters* counters = nullptr)
      : rows_(m.rows()), cols_(m.cols()), stride_(stride), offset_(offset) {
    if (stride_ == 0) throw std::invalid_argument("stride must be >= 1");
    if (offset_ >= stride_) throw std::invalid_argument("offset must be < stride");
    for (std::size_t r = offset_; r < rows_; r += stride_) sampled_rows_.push_back(r);
    for (std::size_t c = offset_; c < cols_; c += stride_) sampled_cols_.push_back(c);

    const std::size_t row_width = cols_ + 1;
    row_tab_.resize(sampled_rows_.size() * row_width);
    for (std::size_t k = 0; k < sampled_rows_.size(); ++k) {
      const auto src = m.row(sampled_rows_[k]);
      double* dst = row_tab_.data() + k * row_width;
      double acc = 0.0;
      dst[0] = 0.0;
      for (std::size_t c = 0; c < cols_; ++c) dst[c + 1] = acc += src[c];
    }

    // (rows+1) x |sampled_cols|, swept row-major.
    const std::size_t nsc = sampled_cols_.size();
    col_tab_.assign((rows_ + 1) * nsc, 0.0);
    for (std::size_t r = 0; r < rows_ && nsc > 0; ++r) {
      const auto src = m.row(r);
      const double* prev = col_tab_.data() + r * nsc;
      double* next = col_tab_.data() + (r + 1) * nsc;
      for (std::size_t k = 0; k < nsc; ++k) next[k] = prev[k] + src[sampled_cols_[k]];
    }

    if (counters) {
      counters->entries_touched += sampled_rows_.size() * cols_ + nsc * rows_;
      counters->prefix_entries += stored_entries();
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }
  std::size_t offset() const noexcept { return offset_; }
  std::span<const std::size_t> sampled_rows() const noexcept { return sampled_rows_; }
  std::span<const std::size_t> sampled_cols() const noexcept { return sampled_cols_; }
  std::size_t stored_entries() const noexcept { return row_tab_.size() + col_tab_.size(); }

  /// Cumulative table of the k-th sampled row (length cols+1, leading zero).
  std::span<const double> row_prefix(std::size_t k) const noexcept {
    return {row_tab_.data() + k * (cols_ + 1), cols_ + 1};
  }
  /// Entry r of the k-th sampled column's cumulative table.
  double col_prefix(std::size_t k, std::size_t r) const noexcept {
    return col_tab_[r * sampled_cols_.size() + k];
  }

  double sampled_row_range(std::size_t k, Interval cols) const noexcept {
    const double* t = row_tab_.data() + k * (cols_ + 1);
    return t[cols.hi + 1] - t[cols.lo];
  }
  double sampled_col_range(std::size_t k, Interval rows) const noexcept {
    return col_prefix(k, rows.hi + 1) - col_prefix(k, rows.lo);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::size_t offset_;
  std::vector<std::size_t> sampled_rows_;
  std::vector<std::size_t> sampled_cols_;
  std::vector<double> row_tab_;
  std::vector<double> col_tab_;
};

inline PartialPrefixSums build_partial_prefix_sums(const Matrix& m, std::size_t stride, std::size_t offset,
                                                   OpCounters* counters = nullptr) {
  return PartialPrefixSums(m, stride, offset, counters);
}

/// Column aggregate over `row_span`: sampled columns carry their sums, every
/// other position is zero. `out` must hold p.cols() values.
inline void sampled_col_aggregate(const PartialPrefixSums& p, Interval row_span, std::span<double> out) {
  if (row_span.lo > row_span.hi || row_span.hi >= p.rows()) throw std::out_of_range("row span out of range");
  if (out.size() != p.cols()) throw std::invalid_argument("aggregate length must equal cols");
  std::fill(out.begin(), out.end(), 0.0);
  const auto cols = p.sampled_cols();
  for (std::size_t k = 0; k < cols.size(); ++k) out[cols[k]] = p.sampled_col_range(k, row_span);
}

inline std::vector<double> sampled_col_aggregate(const PartialPrefixSums& p, Interval row_span) {
  std::vector<double> out(p.cols());
  sampled_col_aggregate(p, row_span, out);
  return out;
}

/// Row aggregate over `col_span`; mirror of sampled_col_aggregate.
inline void sampled_row_aggregate(const PartialPrefixSums& p, Interval col_span, std::span<double> out) {
  if (col_span.lo > col_span.hi || col_span.hi >= p.cols()) throw std::out_of_range("col span out of range");
  if (out.size() != p.rows()) throw std::invalid_argument("aggregate length must equal rows");
  std::fill(out.begin(), out.end(), 0.0);
  const auto rows = p.sampled_rows();
  for (std::size_t k = 0; k < rows.size(); ++k) out[rows[k]] = p.sampled_row_range(k, col_span);
}

inline std::vector<double> sampled_row_aggregate(const PartialPrefixSums& p, Interval col_span) {
  std::vector<double> out(p.rows());
  sampled_row_aggregate(p, col_span, out);
  return out;
}

inline constexpr std::size_t kDefaultIterationCap = 20;

struct SwssConfig {
  StrideSpec stride_spec{StrideKind::sqrt};
  std::size_t iteration_cap = kDefaultIterationCap;
};

inline std::size_t swss_stride(const Matrix& m, const StrideSpec& spec) {
  return resolve_stride(std::max(m.rows(), m.cols()), spec);
}

inline std::size_t swss_offset(std::size_t stride) noexcept { return stride / 2; }

/// Search over prebuilt sampled tables. reported_sum is the last row-pass
/// maximum over sampled rows only; use rect_sum for the box's true weight.
inline SearchResult swss_search(const PartialPrefixSums& p, std::size_t iteration_cap = kDefaultIterationCap,
                                OpCounters* counters = nullptr) {
  return detail::morph_search(
      p.rows(), p.cols(), iteration_cap, p.stride() == 1,
      [&](Interval rows, std::span<double> out) { sampled_col_aggregate(p, rows, out); },
      [&](Interval cols, std::span<double> out) { sampled_row_aggregate(p, cols, out); }, counters);
}

inline SearchResult swss_search(const Matrix& m, const SwssConfig& cfg = {}, OpCounters* counters = nullptr) {
  if (cfg.iteration_cap == 0) throw std::invalid_argument("iteration cap must be >= 1");
  const std::size_t stride = swss_stride(m, cfg.stride_spec);
  return swss_search(PartialPrefixSums(m, stride, swss_offset(stride), counters), cfg.iteration_cap, counters);
}

}  // namespace sws
