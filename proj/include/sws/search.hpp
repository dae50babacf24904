#pragma once

// Result types shared by the iterative box-morphing searches.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sws/core.hpp"
#include "sws/kadane.hpp"

namespace sws {

enum class Termination { gain_nonpositive, iteration_cap };

constexpr std::string_view to_string(Termination t) noexcept {
  return t == Termination::gain_nonpositive ? "gain_nonpositive" : "iteration_cap";
}

/// One pass of the loop: column-pass maximum, row-pass maximum, their gain,
/// and the box they produced.
struct IterationTrace {
  double s1 = 0.0;
  double s = 0.0;
  double g = 0.0;
  Rect rect_after;

  friend bool operator==(const IterationTrace&, const IterationTrace&) = default;
};

struct SearchResult {
  Rect rect;
  double reported_sum = 0.0;  // final row-pass maximum; an estimate under sampling
  std::size_t iterations = 0;
  std::vector<IterationTrace> trace;
  Termination termination = Termination::gain_nonpositive;
};

namespace detail {

/// Shared loop skeleton. `col_pass(row_span, out)` fills a cols-long array,
/// `row_pass(col_span, out)` fills a rows-long array. Starts from the whole
/// matrix and repeats until the gain is non-positive or `cap` iterations have
/// run. The row pass reads the column span produced by the same iteration's
/// column pass.
///
/// With `exact_aggregates`, both passes sum every cell. If the row pass then
/// returns the row span it was given, s and s1 are the same rectangle summed
/// in two orders: g is zero in exact arithmetic, so s is taken as s1 rather
/// than letting a rounding residue keep the loop alive.
template <class ColPass, class RowPass>
SearchResult morph_search(std::size_t rows, std::size_t cols, std::size_t cap, bool exact_aggregates,
                          ColPass&& col_pass, RowPass&& row_pass, OpCounters* counters) {
  if (cap == 0) throw std::invalid_argument("iteration cap must be >= 1");
  std::vector<double> col_agg(cols);
  std::vector<double> row_agg(rows);
  SearchResult out;
  Interval row_span{0, rows - 1};
  for (;;) {
    col_pass(row_span, std::span<double>(col_agg));
    const SubarrayResult cp = max_subarray(col_agg, counters);
    row_pass(cp.interval, std::span<double>(row_agg));
    const SubarrayResult rp = max_subarray(row_agg, counters);
    const double s = exact_aggregates && rp.interval == row_span ? cp.sum : rp.sum;
    row_span = rp.interval;

    IterationTrace t{cp.sum, s, s - cp.sum, {rp.interval, cp.interval}};
    out.trace.push_back(t);
    if (!(t.g > 0.0)) {
      out.termination = Termination::gain_nonpositive;
      break;
    }
    if (out.trace.size() >= cap) {
      out.termination = Termination::iteration_cap;
      break;
    }
  }
  out.iterations = out.trace.size();
  out.rect = out.trace.back().rect_after;
  out.reported_sum = out.trace.back().s;
  return out;
}

}  // namespace detail
}  // namespace sws
