#pragma once

// Golden corpus: frozen solver outputs on committed inputs.
//
// Layout of a corpus directory:
//   cases.jsonl    case definitions (input recipe, solver, freeze-time check)
//   inputs/*.csv   materialized inputs, written by freeze
//   golden.jsonl   frozen expectations, written by freeze, read by run
//
// A case definition carries either "matrix" (inline rows) or "source" (a
// source descriptor, see source.hpp), plus "algorithm", optional "stride"
// and "cap", a "provenance" tag and a "check" naming the oracle validated
// at freeze time:
//   bentley_iou      IoU with the Bentley rect >= 0.5
//   bentley_sum      true sum equals the Bentley optimum
//   brute_sum        true sum equals the brute-force optimum
//   aess_equal       rect and trace identical to A-ESS
//   single_max_cell  rect is one cell holding the matrix maximum

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sws/bench.hpp"
#include "sws/io.hpp"

namespace sws {

struct GoldenCase {
  std::string name;
  std::string input;  // relative to the corpus directory
  Algorithm algorithm = Algorithm::aess;
  StrideSpec stride{StrideKind::sqrt};
  std::size_t cap = kDefaultIterationCap;
  Rect expected_rect;
  double expected_sum = 0.0;
  std::string provenance;
};

struct GoldenOutcome {
  std::string name;
  bool pass = false;
  std::string message;
};

inline constexpr double kGoldenSumTolerance = 1e-9;

namespace detail {

inline std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string(), line_no, 0, e.what());
    }
  }
  return out;
}

inline SolveOptions golden_options(const GoldenCase& c) {
  SolveOptions opt;
  opt.stride = c.stride;
  opt.swss_cap = c.cap;
  return opt;
}

inline bool sums_match(double a, double b) {
  return std::abs(a - b) <= kGoldenSumTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const GoldenCase& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["input"] = c.input;
  j["algorithm"] = std::string(to_string(c.algorithm));
  if (c.algorithm == Algorithm::swss) {
    j["stride"] = to_string(c.stride);
    j["cap"] = c.cap;
  }
  j["expected_rect"] = {c.expected_rect.row_span.lo, c.expected_rect.row_span.hi, c.expected_rect.col_span.lo,
                        c.expected_rect.col_span.hi};
  j["expected_sum"] = c.expected_sum;
  j["provenance"] = c.provenance;
  return j;
}

inline GoldenCase golden_case_from_json(const nlohmann::json& j) {
  GoldenCase c;
  c.name = j.at("name").get<std::string>();
  c.input = j.at("input").get<std::string>();
  c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  c.stride = parse_stride_spec(j.value("stride", std::string("sqrt")));
  c.cap = j.value("cap", kDefaultIterationCap);
  const auto& r = j.at("expected_rect");
  c.expected_rect = {{r.at(0).get<std::size_t>(), r.at(1).get<std::size_t>()},
                     {r.at(2).get<std::size_t>(), r.at(3).get<std::size_t>()}};
  c.expected_sum = j.at("expected_sum").get<double>();
  c.provenance = j.value("provenance", std::string());
  return c;
}

/// Re-solves every frozen case and compares: exact rect, sum within 1e-9.
inline std::vector<GoldenOutcome> run_golden(const std::filesystem::path& dir) {
  std::vector<GoldenOutcome> out;
  for (const auto& j : detail::read_jsonl(dir / "golden.jsonl")) {
    const GoldenCase c = golden_case_from_json(j);
    GoldenOutcome o;
    o.name = c.name;
    try {
      const Matrix m = read_matrix((dir / c.input).string());
      const SolveOutcome s = run_solver(m, c.algorithm, detail::golden_options(c));
      if (s.rect != c.expected_rect) {
        o.message = "rect " + to_string(s.rect) + " != expected " + to_string(c.expected_rect);
      } else if (!detail::sums_match(s.true_sum, c.expected_sum)) {
        o.message = "sum " + detail::format_double(s.true_sum) + " != expected " +
                    detail::format_double(c.expected_sum);
      } else {
        o.pass = true;
      }
    } catch (const std::exception& e) {
      o.message = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

/// Materializes inputs and writes golden.jsonl from cases.jsonl. Throws if a
/// case's freeze-time oracle check fails, leaving golden.jsonl untouched.
inline std::vector<GoldenCase> freeze_golden(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "inputs");
  std::vector<GoldenCase> cases;
  for (const auto& j : detail::read_jsonl(dir / "cases.jsonl")) {
    GoldenCase c;
    c.name = j.at("name").get<std::string>();
    c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    c.stride = parse_stride_spec(j.value("stride", std::string("sqrt")));
    c.cap = j.value("cap", kDefaultIterationCap);
    c.provenance = j.value("provenance", std::string());
    c.input = "inputs/" + c.name + ".csv";

    const Matrix src = j.contains("matrix") ? Matrix::from_rows(j["matrix"].get<std::vector<std::vector<double>>>())
                                            : load_source(j.at("source").get<std::string>());
    write_matrix_csv(src, (dir / c.input).string());
    const Matrix m = read_matrix_csv((dir / c.input).string());

    const SolveOutcome s = run_solver(m, c.algorithm, detail::golden_options(c));
    c.expected_rect = s.rect;
    c.expected_sum = s.true_sum;

    const std::string check = j.value("check", std::string("none"));
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("freeze check '" + check + "' failed for case " + c.name + ": " + why);
    };
    if (check == "bentley_iou") {
      const ExactResult b = bentley_max_rect(m);
      if (iou(s.rect, b.rect) < 0.5) fail("IoU " + std::to_string(iou(s.rect, b.rect)) + " < 0.5");
    } else if (check == "bentley_sum") {
      if (!detail::sums_match(s.true_sum, bentley_max_rect(m).sum)) fail("sum differs from Bentley");
    } else if (check == "brute_sum") {
      if (!detail::sums_match(s.true_sum, brute_force_max_rect(m).sum)) fail("sum differs from brute force");
    } else if (check == "aess_equal") {
      const SolveOutcome a = run_solver(m, Algorithm::aess);
      if (a.rect != s.rect || a.trace != s.trace) fail("differs from A-ESS");
    } else if (check == "single_max_cell") {
      const auto d = m.data();
      const double mx = *std::max_element(d.begin(), d.end());
      if (s.rect.area() != 1 || m(s.rect.row_span.lo, s.rect.col_span.lo) != mx) fail("not a single max cell");
    } else if (check != "none") {
      fail("unknown check");
    }
    cases.push_back(c);
  }
  std::ofstream out(dir / "golden.jsonl", std::ios::trunc);
  if (!out) throw IoError("cannot write golden.jsonl");
  for (const auto& c : cases) out << to_json(c).dump() << '\n';
  return cases;
}

}  // namespace sws
