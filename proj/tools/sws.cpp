// sws: max-weight rectangle solvers and benchmark harness.
//
//   sws solve     --input m.csv --alg swss --stride sqrt
//   sws bench     --kind blobs --size 2048 --count 10 --alg aess,swss --repeats 3 --out runs.jsonl
//   sws coherence --input m.csv --radius 5
//   sws gen       --kind blobs --rows 512 --cols 512 --seed 1 --out m.csv
//   sws check     --records runs.jsonl
//   sws golden    --corpus corpus [--freeze]
//
// Exit codes: 0 success, 1 check/golden mismatch, 2 unreadable input,
// 64 invalid flags.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sws/cli.hpp"

namespace {

using namespace sws;

struct InputFlags {
  std::string input;
  std::string source;
  std::string channel;
  std::size_t scale = 1;
  bool normalize = false;

  void attach(CLI::App* app) {
    auto* in = app->add_option("-i,--input", input, "Matrix file (.csv, .bin, .pgm, .ppm, .trip)");
    auto* src = app->add_option("--source", source, "Source descriptor (gen:... or file:...)");
    in->excludes(src);
    app->add_option("--channel", channel, "Channel for .ppm inputs (R, G or B)");
    app->add_option("--scale", scale, "K x K entry duplication")->check(CLI::PositiveNumber);
    app->add_flag("--normalize", normalize, "Subtract the mean entry");
  }

  SourceSpec resolve() const {
    if (input.empty() == source.empty()) throw CLI::ValidationError("exactly one of --input or --source is required");
    SourceSpec s = input.empty() ? parse_source(source) : file_source(input);
    if (!channel.empty()) {
      s.channel = parse_channel(channel);
      s.has_channel = true;
    }
    if (scale != 1) s.scale = scale;
    if (normalize) s.normalize = true;
    return s;
  }
};

struct GenFlags {
  std::string kind = "uniform";
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  double lo = -1.0;
  double hi = 1.0;
  std::size_t blobs = GenSpec{}.num_blobs;
  double blob_scale = GenSpec{}.blob_scale;
  double noise = GenSpec{}.noise_level;

  void attach(CLI::App* app) {
    app->add_option("--kind", kind, "uniform | blobs | checkerboard")->capture_default_str();
    app->add_option("--rows", rows, "Rows")->capture_default_str();
    app->add_option("--cols", cols, "Columns")->capture_default_str();
    app->add_option("--size", size, "Square size (overrides --rows/--cols)");
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--lo", lo, "Value range low end")->capture_default_str();
    app->add_option("--hi", hi, "Value range high end")->capture_default_str();
    app->add_option("--blobs", blobs, "Blob count (blobs)")->capture_default_str();
    app->add_option("--blob-scale", blob_scale, "Blob sigma / min(rows, cols) (blobs)")->capture_default_str();
    app->add_option("--noise", noise, "Uniform noise amplitude (blobs)")->capture_default_str();
  }

  GenSpec spec(std::uint64_t seed_offset = 0) const {
    GenSpec g;
    g.kind = parse_gen_kind(kind);
    g.rows = size ? size : rows;
    g.cols = size ? size : cols;
    g.seed = seed + seed_offset;
    g.lo = lo;
    g.hi = hi;
    g.num_blobs = blobs;
    g.blob_scale = blob_scale;
    g.noise_level = noise;
    return g;
  }
};

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    for (;;) {
      const auto comma = item.find(',', start);
      const auto part = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!part.empty()) out.push_back(part);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-weight rectangle solvers and benchmark harness"};
  app.require_subcommand(1);
  int rc = cli::kOk;

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one input and print the rectangle");
  InputFlags solve_in;
  solve_in.attach(solve);
  std::string solve_alg = "aess";
  std::string solve_stride;
  std::size_t solve_cap = 0;
  bool solve_json = false;
  bool solve_trace = false;
  solve->add_option("--alg", solve_alg, "brute | bentley | aess | swss")->capture_default_str();
  solve->add_option("--stride", solve_stride, "loglog | log | sqrt | logsq | const:K | unit (swss; default sqrt)");
  solve->add_option("--cap", solve_cap, "Iteration cap (swss default 20, aess default 1000)")->check(CLI::PositiveNumber);
  solve->add_flag("--json", solve_json, "Print one JSON object");
  solve->add_flag("--trace", solve_trace, "Include the per-iteration trace");

  // bench
  auto* bench = app.add_subcommand("bench", "Time solvers and write JSON-lines or CSV records");
  std::vector<std::string> bench_inputs;
  GenFlags bench_gen;
  std::size_t bench_count = 0;
  std::vector<std::string> bench_algs{"aess", "swss"};
  std::vector<std::string> bench_strides{"sqrt"};
  std::string bench_channel;
  std::size_t bench_scale = 1;
  bool bench_normalize = false;
  cli::BenchArgs bench_args;
  std::string bench_format = "jsonl";
  bench->add_option("-i,--input", bench_inputs, "Matrix files (repeatable)");
  bench_gen.attach(bench);
  bench->add_option("--count", bench_count, "Generate this many inputs with seeds seed..seed+count-1");
  bench->add_option("--alg", bench_algs, "Algorithms (comma-separated or repeated)")->capture_default_str();
  bench->add_option("--stride", bench_strides, "Stride sweep for swss (comma-separated or repeated)")
      ->capture_default_str();
  bench->add_option("--channel", bench_channel, "Channel for .ppm inputs");
  bench->add_option("--scale", bench_scale, "K x K entry duplication")->check(CLI::PositiveNumber);
  bench->add_flag("--normalize", bench_normalize, "Subtract the mean entry");
  bench->add_option("--repeats", bench_args.plan.repeats, "Timed repeats per configuration")->capture_default_str();
  bench->add_option("--warmup", bench_args.plan.warmup, "Untimed warm-up runs per configuration")->capture_default_str();
  bench->add_option("--cap", bench_args.plan.swss_cap, "swss iteration cap")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_flag("--oracle", bench_args.plan.oracle, "Compute IoU against the exact optimum");
  bench->add_option("--oracle-limit", bench_args.plan.oracle_limit, "Largest dimension accepted with --oracle")
      ->capture_default_str();
  bench->add_flag("--coherence", bench_args.plan.coherence, "Record the coherence score of each input");
  bench->add_option("--radius", bench_args.plan.radius, "Coherence radius")->capture_default_str();
  bench->add_flag("--split-phases", bench_args.plan.split_phases, "Record preprocessing and search times");
  bench->add_option("--iou-threshold", bench_args.iou_threshold, "IoU threshold for summary accuracy")
      ->capture_default_str();
  bench->add_option("--out", bench_args.out_path, "Append records to this file (default stdout)");
  bench->add_option("--format", bench_format, "jsonl | csv")->capture_default_str();

  // coherence
  auto* coherence = app.add_subcommand("coherence", "Print the spatial coherence score");
  InputFlags coh_in;
  coh_in.attach(coherence);
  std::size_t coh_radius = kDefaultCoherenceRadius;
  coherence->add_option("--radius", coh_radius, "Square neighbourhood radius")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a matrix file");
  GenFlags gen_flags;
  gen_flags.attach(gen);
  cli::GenArgs gen_args;
  gen->add_option("--scale", gen_args.scale, "K x K entry duplication")->check(CLI::PositiveNumber);
  gen->add_flag("--normalize", gen_args.normalize, "Subtract the mean entry");
  gen->add_option("--out", gen_args.out_path, "Output file (.csv, .bin or .trip)")->required();

  // check
  auto* check = app.add_subcommand("check", "Re-verify true_sum of bench records against their inputs");
  std::string check_records;
  check->add_option("--records", check_records, "JSON-lines records file")->required();

  // golden
  auto* golden = app.add_subcommand("golden", "Run (or freeze) the golden corpus");
  std::string golden_dir = "corpus";
  bool golden_freeze = false;
  golden->add_option("--corpus", golden_dir, "Corpus directory")->capture_default_str();
  golden->add_flag("--freeze", golden_freeze, "Regenerate inputs and expectations from cases.jsonl");

  try {
    app.parse(argc, argv);

    if (solve->parsed()) {
      cli::SolveArgs a;
      a.source = solve_in.resolve();
      a.algorithm = parse_algorithm(solve_alg);
      const bool iterative = a.algorithm == Algorithm::aess || a.algorithm == Algorithm::swss;
      if (!solve_stride.empty() && a.algorithm != Algorithm::swss) {
        throw CLI::ValidationError("--stride only applies to --alg swss");
      }
      if (solve_cap && !iterative) throw CLI::ValidationError("--cap only applies to --alg aess or swss");
      if (!solve_stride.empty()) a.options.stride = parse_stride_spec(solve_stride);
      if (solve_cap) (a.algorithm == Algorithm::swss ? a.options.swss_cap : a.options.aess_cap) = solve_cap;
      a.json = solve_json;
      a.trace = solve_trace;
      rc = cli::cmd_solve(a, std::cout, std::cerr);
    } else if (bench->parsed()) {
      auto& plan = bench_args.plan;
      if (!bench_inputs.empty() && bench_count) throw CLI::ValidationError("use either --input or --count, not both");
      if (bench_inputs.empty() && !bench_count) throw CLI::ValidationError("need --input files or --count N");
      for (const auto& path : bench_inputs) {
        BenchInput in{file_source(path)};
        if (!bench_channel.empty()) {
          in.source.channel = parse_channel(bench_channel);
          in.source.has_channel = true;
        }
        plan.inputs.push_back(in);
      }
      for (std::size_t i = 0; i < bench_count; ++i) {
        const GenSpec g = bench_gen.spec(i);
        plan.inputs.push_back({gen_source(g), g.rows * bench_scale, g.cols * bench_scale});
      }
      for (auto& in : plan.inputs) {
        in.source.scale = bench_scale;
        in.source.normalize = bench_normalize;
      }
      for (const auto& s : split_list(bench_algs)) plan.algorithms.push_back(parse_algorithm(s));
      plan.strides.clear();
      for (const auto& s : split_list(bench_strides)) plan.strides.push_back(parse_stride_spec(s));
      if (bench_format == "jsonl") bench_args.format = cli::RecordFormat::jsonl;
      else if (bench_format == "csv") bench_args.format = cli::RecordFormat::csv;
      else throw CLI::ValidationError("--format must be jsonl or csv");
      if (!(bench_args.iou_threshold > 0.0 && bench_args.iou_threshold <= 1.0)) {
        throw CLI::ValidationError("--iou-threshold must be in (0, 1]");
      }
      rc = cli::cmd_bench(bench_args, std::cout, std::cerr);
    } else if (coherence->parsed()) {
      rc = cli::cmd_coherence(coh_in.resolve(), coh_radius, std::cout, std::cerr);
    } else if (gen->parsed()) {
      gen_args.spec = gen_flags.spec();
      rc = cli::cmd_gen(gen_args, std::cout, std::cerr);
    } else if (check->parsed()) {
      rc = cli::cmd_check(check_records, std::cout, std::cerr);
    } else if (golden->parsed()) {
      rc = cli::cmd_golden(golden_dir, golden_freeze, std::cout, std::cerr);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsage;
  }
  return rc;
}
