#pragma once

// Solver dispatch, timing and benchmark records.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sws/aess.hpp"
#include "sws/core.hpp"
#include "sws/exact.hpp"
#include "sws/metrics.hpp"
#include "sws/source.hpp"
#include "sws/swss.hpp"

namespace sws {

enum class Algorithm { brute, bentley, aess, swss };

inline std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::brute: return "brute";
    case Algorithm::bentley: return "bentley";
    case Algorithm::aess: return "aess";
    case Algorithm::swss: return "swss";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "brute") return Algorithm::brute;
  if (s == "bentley") return Algorithm::bentley;
  if (s == "aess") return Algorithm::aess;
  if (s == "swss") return Algorithm::swss;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

struct SolveOptions {
  StrideSpec stride{StrideKind::sqrt};
  std::size_t swss_cap = kDefaultIterationCap;
  std::size_t aess_cap = kAessDefaultCap;
};

struct SolveOutcome {
  Algorithm algorithm = Algorithm::aess;
  Rect rect;
  double reported_sum = 0.0;
  double true_sum = 0.0;
  std::size_t iterations = 0;
  std::string termination;  // "exact" for brute/bentley
  std::string stride_spec;  // "none" unless swss
  std::size_t resolved_stride = 0;
  std::int64_t prep_ns = 0;
  std::int64_t search_ns = 0;
  std::vector<IterationTrace> trace;

  std::int64_t total_ns() const noexcept { return prep_ns + search_ns; }
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline std::int64_t elapsed_ns(Clock::time_point a, Clock::time_point b) {
  return std::max<std::int64_t>(1, std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

}  // namespace detail

/// Runs one solver. Preprocessing (prefix tables) and search are timed
/// separately; exact solvers report everything as search time.
inline SolveOutcome run_solver(const Matrix& m, Algorithm alg, const SolveOptions& opt = {}) {
  using detail::Clock;
  SolveOutcome out;
  out.algorithm = alg;
  out.stride_spec = "none";
  switch (alg) {
    case Algorithm::brute:
    case Algorithm::bentley: {
      const auto t0 = Clock::now();
      const ExactResult r = alg == Algorithm::brute ? brute_force_max_rect(m) : bentley_max_rect(m);
      const auto t1 = Clock::now();
      out.search_ns = detail::elapsed_ns(t0, t1);
      out.rect = r.rect;
      out.reported_sum = r.sum;
      out.termination = "exact";
      break;
    }
    case Algorithm::aess: {
      const auto t0 = Clock::now();
      const FullPrefixSums p(m);
      const auto t1 = Clock::now();
      SearchResult r = aess_search(p, opt.aess_cap);
      const auto t2 = Clock::now();
      out.prep_ns = detail::elapsed_ns(t0, t1);
      out.search_ns = detail::elapsed_ns(t1, t2);
      out.rect = r.rect;
      out.reported_sum = r.reported_sum;
      out.iterations = r.iterations;
      out.termination = std::string(to_string(r.termination));
      out.trace = std::move(r.trace);
      break;
    }
    case Algorithm::swss: {
      const auto t0 = Clock::now();
      const std::size_t stride = swss_stride(m, opt.stride);
      const PartialPrefixSums p(m, stride, swss_offset(stride));
      const auto t1 = Clock::now();
      SearchResult r = swss_search(p, opt.swss_cap);
      const auto t2 = Clock::now();
      out.prep_ns = detail::elapsed_ns(t0, t1);
      out.search_ns = detail::elapsed_ns(t1, t2);
      out.rect = r.rect;
      out.reported_sum = r.reported_sum;
      out.iterations = r.iterations;
      out.termination = std::string(to_string(r.termination));
      out.stride_spec = to_string(opt.stride);
      out.resolved_stride = stride;
      out.trace = std::move(r.trace);
      break;
    }
  }
  out.true_sum = rect_sum(m, out.rect);
  return out;
}

// ---------------------------------------------------------------------------
// Records

struct BenchRecord {
  std::string algorithm;
  std::string source;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string stride_spec = "none";
  std::size_t resolved_stride = 0;
  std::string log_base = "ln";
  std::size_t repeat = 0;
  std::int64_t wall_time_ns = 0;
  std::optional<std::int64_t> prep_ns;
  std::optional<std::int64_t> search_ns;
  std::size_t iterations = 0;
  std::string termination;
  Rect rect;
  double true_sum = 0.0;
  double reported_sum = 0.0;
  std::optional<std::string> oracle;
  std::optional<double> iou_vs_oracle;
  std::optional<double> coherence;
};

inline nlohmann::ordered_json to_json(const BenchRecord& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = r.algorithm;
  j["source"] = r.source;
  j["rows"] = r.rows;
  j["cols"] = r.cols;
  j["stride_spec"] = r.stride_spec;
  j["resolved_stride"] = r.resolved_stride;
  j["log_base"] = r.log_base;
  j["repeat"] = r.repeat;
  j["wall_time_ns"] = r.wall_time_ns;
  if (r.prep_ns) j["prep_ns"] = *r.prep_ns;
  if (r.search_ns) j["search_ns"] = *r.search_ns;
  j["iterations"] = r.iterations;
  j["termination"] = r.termination;
  j["rect"] = {{"row_lo", r.rect.row_span.lo},
               {"row_hi", r.rect.row_span.hi},
               {"col_lo", r.rect.col_span.lo},
               {"col_hi", r.rect.col_span.hi}};
  j["true_sum"] = r.true_sum;
  j["reported_sum"] = r.reported_sum;
  if (r.oracle) j["oracle"] = *r.oracle;
  if (r.iou_vs_oracle) j["iou_vs_oracle"] = *r.iou_vs_oracle;
  if (r.coherence) j["coherence"] = *r.coherence;
  return j;
}

inline BenchRecord record_from_json(const nlohmann::json& j) {
  BenchRecord r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.source = j.at("source").get<std::string>();
  r.rows = j.at("rows").get<std::size_t>();
  r.cols = j.at("cols").get<std::size_t>();
  r.stride_spec = j.at("stride_spec").get<std::string>();
  r.resolved_stride = j.at("resolved_stride").get<std::size_t>();
  r.log_base = j.at("log_base").get<std::string>();
  r.repeat = j.at("repeat").get<std::size_t>();
  r.wall_time_ns = j.at("wall_time_ns").get<std::int64_t>();
  if (j.contains("prep_ns")) r.prep_ns = j["prep_ns"].get<std::int64_t>();
  if (j.contains("search_ns")) r.search_ns = j["search_ns"].get<std::int64_t>();
  r.iterations = j.at("iterations").get<std::size_t>();
  r.termination = j.at("termination").get<std::string>();
  const auto& rc = j.at("rect");
  r.rect = {{rc.at("row_lo").get<std::size_t>(), rc.at("row_hi").get<std::size_t>()},
            {rc.at("col_lo").get<std::size_t>(), rc.at("col_hi").get<std::size_t>()}};
  r.true_sum = j.at("true_sum").get<double>();
  r.reported_sum = j.at("reported_sum").get<double>();
  if (j.contains("oracle")) r.oracle = j["oracle"].get<std::string>();
  if (j.contains("iou_vs_oracle")) r.iou_vs_oracle = j["iou_vs_oracle"].get<double>();
  if (j.contains("coherence")) r.coherence = j["coherence"].get<double>();
  return r;
}

inline constexpr std::string_view kCsvHeader =
    "algorithm,source,rows,cols,stride_spec,resolved_stride,log_base,repeat,wall_time_ns,prep_ns,search_ns,"
    "iterations,termination,row_lo,row_hi,col_lo,col_hi,true_sum,reported_sum,oracle,iou_vs_oracle,coherence";

inline std::string to_csv_row(const BenchRecord& r) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + '"';
  };
  auto num = [](double v) { return detail::format_double(v); };
  std::ostringstream os;
  os << r.algorithm << ',' << quote(r.source) << ',' << r.rows << ',' << r.cols << ',' << r.stride_spec << ','
     << r.resolved_stride << ',' << r.log_base << ',' << r.repeat << ',' << r.wall_time_ns << ','
     << (r.prep_ns ? std::to_string(*r.prep_ns) : "") << ',' << (r.search_ns ? std::to_string(*r.search_ns) : "")
     << ',' << r.iterations << ',' << r.termination << ',' << r.rect.row_span.lo << ',' << r.rect.row_span.hi << ','
     << r.rect.col_span.lo << ',' << r.rect.col_span.hi << ',' << num(r.true_sum) << ',' << num(r.reported_sum)
     << ',' << r.oracle.value_or("") << ',' << (r.iou_vs_oracle ? num(*r.iou_vs_oracle) : "") << ','
     << (r.coherence ? num(*r.coherence) : "");
  return os.str();
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty sequence");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------
// Benchmark plan and runner

inline constexpr std::size_t kBruteForceMaxDim = 16;
inline constexpr std::size_t kDefaultOracleLimit = 1024;

struct BenchInput {
  SourceSpec source;
  std::size_t rows = 0;  // 0 when unknown until loaded
  std::size_t cols = 0;
};

struct BenchPlan {
  std::vector<BenchInput> inputs;
  std::vector<Algorithm> algorithms;
  std::vector<StrideSpec> strides{{StrideKind::sqrt}};
  std::size_t repeats = 1;
  std::size_t warmup = 1;
  std::size_t swss_cap = kDefaultIterationCap;
  bool oracle = false;
  std::size_t oracle_limit = kDefaultOracleLimit;
  bool coherence = false;
  std::size_t radius = kDefaultCoherenceRadius;
  bool split_phases = false;
};

class BenchRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_oracle_limit(const BenchPlan& plan, std::size_t rows, std::size_t cols, const std::string& what) {
  if (plan.oracle && std::max(rows, cols) > plan.oracle_limit) {
    throw BenchRefused("oracle refused for " + what + " (" + std::to_string(rows) + "x" + std::to_string(cols) +
                       " exceeds --oracle-limit " + std::to_string(plan.oracle_limit) + ")");
  }
}

inline void validate(const BenchPlan& plan) {
  if (plan.inputs.empty()) throw std::invalid_argument("bench needs at least one input");
  if (plan.algorithms.empty()) throw std::invalid_argument("bench needs at least one algorithm");
  if (plan.repeats == 0) throw std::invalid_argument("repeats must be >= 1");
  if (plan.strides.empty()) throw std::invalid_argument("bench needs at least one stride");
  for (const auto& in : plan.inputs) {
    if (in.rows && in.cols) check_oracle_limit(plan, in.rows, in.cols, describe(in.source));
  }
}

/// Runs every (input, algorithm, stride, repeat) and hands each record to
/// `emit` in order. Timed solves run one at a time.
inline void run_bench(const BenchPlan& plan, const std::function<void(const BenchRecord&)>& emit) {
  validate(plan);
  for (const auto& in : plan.inputs) {
    const std::string name = describe(in.source);
    const Matrix m = load_source(in.source);
    check_oracle_limit(plan, m.rows(), m.cols(), name);

    std::optional<Rect> oracle_rect;
    std::string oracle_name;
    if (plan.oracle) {
      const bool small = std::max(m.rows(), m.cols()) <= kBruteForceMaxDim;
      oracle_name = small ? "brute" : "bentley";
      oracle_rect = (small ? brute_force_max_rect(m) : bentley_max_rect(m)).rect;
    }
    std::optional<double> coh;
    if (plan.coherence) coh = coherence_score(m, {plan.radius});

    for (Algorithm alg : plan.algorithms) {
      const std::vector<StrideSpec> strides =
          alg == Algorithm::swss ? plan.strides : std::vector<StrideSpec>{StrideSpec{}};
      for (const StrideSpec& stride : strides) {
        SolveOptions opt;
        opt.stride = stride;
        opt.swss_cap = plan.swss_cap;
        for (std::size_t w = 0; w < plan.warmup; ++w) (void)run_solver(m, alg, opt);
        for (std::size_t rep = 0; rep < plan.repeats; ++rep) {
          const SolveOutcome o = run_solver(m, alg, opt);
          BenchRecord r;
          r.algorithm = std::string(to_string(alg));
          r.source = name;
          r.rows = m.rows();
          r.cols = m.cols();
          r.stride_spec = o.stride_spec;
          r.resolved_stride = o.resolved_stride;
          r.repeat = rep;
          r.wall_time_ns = o.total_ns();
          if (plan.split_phases) {
            r.prep_ns = o.prep_ns;
            r.search_ns = o.search_ns;
          }
          r.iterations = o.iterations;
          r.termination = o.termination;
          r.rect = o.rect;
          r.true_sum = o.true_sum;
          r.reported_sum = o.reported_sum;
          if (oracle_rect) {
            r.oracle = oracle_name;
            r.iou_vs_oracle = iou(o.rect, *oracle_rect);
          }
          r.coherence = coh;
          emit(r);
        }
      }
    }
  }
}

/// Per (algorithm, stride): median over inputs of the per-input ratio
/// median(aess time) / median(algorithm time), plus accuracy against A-ESS
/// and the oracle when available.
struct SpeedupSummary {
  std::string algorithm;
  std::string stride_spec;
  std::size_t inputs = 0;
  std::optional<double> median_speedup_vs_aess;
  std::optional<double> accuracy_vs_aess;
  std::optional<double> accuracy_vs_oracle;
  double cap_hit_rate = 0.0;
};

inline std::vector<SpeedupSummary> summarize(const std::vector<BenchRecord>& records,
                                             double iou_threshold = kDefaultIouThreshold) {
  struct Group {
    std::vector<double> times;
    Rect rect;
    std::optional<double> iou_oracle;
    bool cap_hit = false;
  };
  // key: (algorithm, stride) -> source -> group
  std::map<std::pair<std::string, std::string>, std::map<std::string, Group>> groups;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.algorithm, r.stride_spec);
    if (!groups.count(key)) order.push_back(key);
    Group& g = groups[key][r.source];
    g.times.push_back(static_cast<double>(r.wall_time_ns));
    g.rect = r.rect;
    g.iou_oracle = r.iou_vs_oracle;
    g.cap_hit = r.termination == "iteration_cap";
  }
  const auto aess_it = groups.find({"aess", "none"});

  std::vector<SpeedupSummary> out;
  for (const auto& key : order) {
    const auto& by_source = groups[key];
    SpeedupSummary s;
    s.algorithm = key.first;
    s.stride_spec = key.second;
    s.inputs = by_source.size();
    std::vector<double> ratios;
    std::size_t agree = 0, compared = 0, oracle_ok = 0, oracle_n = 0, caps = 0;
    for (const auto& [src, g] : by_source) {
      if (g.cap_hit) ++caps;
      if (g.iou_oracle) {
        ++oracle_n;
        if (*g.iou_oracle >= iou_threshold) ++oracle_ok;
      }
      if (aess_it == groups.end()) continue;
      const auto a = aess_it->second.find(src);
      if (a == aess_it->second.end()) continue;
      ratios.push_back(median(a->second.times) / median(g.times));
      ++compared;
      if (iou(g.rect, a->second.rect) >= iou_threshold) ++agree;
    }
    if (!ratios.empty()) s.median_speedup_vs_aess = median(ratios);
    if (compared) s.accuracy_vs_aess = static_cast<double>(agree) / static_cast<double>(compared);
    if (oracle_n) s.accuracy_vs_oracle = static_cast<double>(oracle_ok) / static_cast<double>(oracle_n);
    s.cap_hit_rate = s.inputs ? static_cast<double>(caps) / static_cast<double>(s.inputs) : 0.0;
    out.push_back(s);
  }
  return out;
}

inline std::string format_summary(const SpeedupSummary& s) {
  std::ostringstream os;
  os.precision(4);
  os << "summary algorithm=" << s.algorithm << " stride=" << s.stride_spec << " inputs=" << s.inputs;
  if (s.median_speedup_vs_aess) os << " median_speedup_vs_aess=" << *s.median_speedup_vs_aess;
  if (s.accuracy_vs_aess) os << " accuracy_vs_aess=" << *s.accuracy_vs_aess;
  if (s.accuracy_vs_oracle) os << " accuracy_vs_oracle=" << *s.accuracy_vs_oracle;
  os << " cap_hit_rate=" << s.cap_hit_rate;
  return os.str();
}

}  // namespace sws
