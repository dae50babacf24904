#pragma once

// Command implementations behind the `sws` executable. Each returns a
// process exit code and writes to the given streams.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sws/bench.hpp"
#include "sws/datagen.hpp"
#include "sws/golden.hpp"
#include "sws/io.hpp"
#include "sws/metrics.hpp"
#include "sws/source.hpp"

namespace sws::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kInputError = 2, kUsage = 64 };

/// Loads a source, reporting unreadable or malformed input on `err`.
inline std::optional<Matrix> load_or_report(const SourceSpec& s, std::ostream& err) {
  try {
    return load_source(s);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return std::nullopt;
}

inline nlohmann::ordered_json rect_json(const Rect& r) {
  return {{"row_lo", r.row_span.lo}, {"row_hi", r.row_span.hi}, {"col_lo", r.col_span.lo}, {"col_hi", r.col_span.hi}};
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  SourceSpec source;
  Algorithm algorithm = Algorithm::aess;
  SolveOptions options;
  bool json = false;
  bool trace = false;
};

inline nlohmann::ordered_json solve_to_json(const SolveArgs& a, const Matrix& m, const SolveOutcome& o) {
  nlohmann::ordered_json j;
  j["algorithm"] = std::string(to_string(o.algorithm));
  j["source"] = describe(a.source);
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["stride_spec"] = o.stride_spec;
  j["resolved_stride"] = o.resolved_stride;
  j["log_base"] = "ln";
  j["rect"] = rect_json(o.rect);
  j["true_sum"] = o.true_sum;
  j["reported_sum"] = o.reported_sum;
  j["iterations"] = o.iterations;
  j["termination"] = o.termination;
  if (a.trace) {
    auto& t = j["trace"] = nlohmann::ordered_json::array();
    for (const auto& it : o.trace) {
      t.push_back({{"s1", it.s1}, {"s", it.s}, {"g", it.g}, {"rect", rect_json(it.rect_after)}});
    }
  }
  return j;
}

inline int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto m = load_or_report(a.source, err);
  if (!m) return kInputError;
  const SolveOutcome o = run_solver(*m, a.algorithm, a.options);
  if (a.json) {
    out << solve_to_json(a, *m, o).dump() << '\n';
    return kOk;
  }
  out << "algorithm: " << to_string(o.algorithm) << '\n'
      << "input: " << describe(a.source) << " (" << m->rows() << "x" << m->cols() << ")\n";
  if (a.algorithm == Algorithm::swss) {
    out << "stride: " << o.stride_spec << " -> " << o.resolved_stride << " (natural log, offset "
        << swss_offset(o.resolved_stride) << ")\n";
  }
  out << "rect: " << to_string(o.rect) << '\n'
      << "sum: " << detail::format_double(o.true_sum) << '\n';
  if (a.algorithm == Algorithm::aess || a.algorithm == Algorithm::swss) {
    out << "reported_sum: " << detail::format_double(o.reported_sum) << '\n'
        << "iterations: " << o.iterations << '\n'
        << "termination: " << o.termination << '\n';
    if (a.trace) {
      for (std::size_t i = 0; i < o.trace.size(); ++i) {
        const auto& t = o.trace[i];
        out << "  iter " << i + 1 << ": s1=" << detail::format_double(t.s1) << " s=" << detail::format_double(t.s)
            << " g=" << detail::format_double(t.g) << " rect=" << to_string(t.rect_after) << '\n';
      }
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// bench

enum class RecordFormat { jsonl, csv };

struct BenchArgs {
  BenchPlan plan;
  std::string out_path;  // empty: stdout
  RecordFormat format = RecordFormat::jsonl;
  double iou_threshold = kDefaultIouThreshold;
};

inline int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  try {
    validate(a.plan);
  } catch (const BenchRefused& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  bool need_header = a.format == RecordFormat::csv;
  if (!a.out_path.empty()) {
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(a.out_path) || std::filesystem::file_size(a.out_path, ec) == 0;
    need_header = need_header && fresh;
    file.open(a.out_path, std::ios::app);
    if (!file) {
      err << "error: cannot open '" << a.out_path << "' for appending\n";
      return kInputError;
    }
  }
  std::ostream& sink = a.out_path.empty() ? out : static_cast<std::ostream&>(file);
  std::ostream& info = a.out_path.empty() ? err : out;
  if (need_header) sink << kCsvHeader << '\n';

  std::vector<BenchRecord> records;
  try {
    run_bench(a.plan, [&](const BenchRecord& r) {
      if (a.format == RecordFormat::jsonl) sink << to_json(r).dump() << '\n';
      else sink << to_csv_row(r) << '\n';
      sink.flush();
      records.push_back(r);
    });
  } catch (const BenchRefused& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  info << "records: " << records.size() << '\n';
  for (const auto& s : summarize(records, a.iou_threshold)) info << format_summary(s) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// coherence

inline int cmd_coherence(const SourceSpec& src, std::size_t radius, std::ostream& out, std::ostream& err) {
  if (radius == 0) {
    err << "error: --radius must be >= 1\n";
    return kUsage;
  }
  const auto m = load_or_report(src, err);
  if (!m) return kInputError;
  out << "coherence: " << detail::format_double(coherence_score(*m, {radius})) << " (radius " << radius << ")\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  GenSpec spec;
  std::size_t scale = 1;
  bool normalize = false;
  std::string out_path;
};

inline int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  try {
    Matrix m = generate(a.spec);
    if (a.scale != 1) m = duplicate_scale(m, a.scale);
    if (a.normalize) m = normalize_zero_mean(m);
    write_matrix(m, a.out_path);
    out << "wrote " << m.rows() << "x" << m.cols() << " matrix to " << a.out_path << " ("
        << describe(SourceSpec{describe(a.spec), Channel::R, false, a.scale, a.normalize}) << ")\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// check: re-verify true_sum of every JSON-lines record against its input

inline int cmd_check(const std::string& records_path, std::ostream& out, std::ostream& err) {
  std::vector<nlohmann::json> lines;
  try {
    lines = detail::read_jsonl(records_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  std::map<std::string, Matrix> cache;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    BenchRecord r;
    try {
      r = record_from_json(lines[i]);
    } catch (const std::exception& e) {
      err << "record " << i + 1 << ": malformed: " << e.what() << '\n';
      ++bad;
      continue;
    }
    auto it = cache.find(r.source);
    if (it == cache.end()) {
      const auto m = load_or_report(parse_source(r.source), err);
      if (!m) return kInputError;
      it = cache.emplace(r.source, *m).first;
    }
    const Matrix& m = it->second;
    if (!m.contains(r.rect)) {
      err << "record " << i + 1 << ": rect " << to_string(r.rect) << " outside input\n";
      ++bad;
      continue;
    }
    const double s = rect_sum(m, r.rect);
    if (!detail::sums_match(s, r.true_sum)) {
      err << "record " << i + 1 << ": true_sum " << detail::format_double(r.true_sum) << " != recomputed "
          << detail::format_double(s) << '\n';
      ++bad;
    }
  }
  out << "checked " << lines.size() << " records, " << bad << " mismatches\n";
  return bad ? kFailed : kOk;
}

// ---------------------------------------------------------------------------
// golden

inline int cmd_golden(const std::string& dir, bool freeze, std::ostream& out, std::ostream& err) {
  try {
    if (freeze) {
      const auto cases = freeze_golden(dir);
      out << "froze " << cases.size() << " golden cases in " << dir << '\n';
      return kOk;
    }
    std::size_t failed = 0;
    const auto results = run_golden(dir);
    for (const auto& r : results) {
      out << (r.pass ? "PASS " : "FAIL ") << r.name;
      if (!r.pass) {
        out << ": " << r.message;
        ++failed;
      }
      out << '\n';
    }
    out << results.size() - failed << "/" << results.size() << " golden cases passed\n";
    return failed ? kFailed : kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace sws::cli
