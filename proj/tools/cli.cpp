#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "blanket/branch_and_price.hpp"
#include "blanket/heuristics.hpp"
#include "blanket/io/pbm.hpp"
#include "blanket/io/report.hpp"
#include "blanket/io/shapes.hpp"

namespace blanket::cli {

namespace {

struct Tuning {
  int rule = 2;
  double alpha = 0.8;
  int rho = 3;
  double tau = 0.5;
  std::uint64_t seed = 1;
  double time_limit = std::numeric_limits<double>::infinity();
  bool trace = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kMethods = {"bp", "sf", "fast", "csa"};

void check_method(const std::string& m, int k) {
  if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end()) {
    throw UsageError("unknown method '" + m + "' (expected bp, sf, fast or csa)");
  }
  if (k < 0) throw UsageError("--k must be non-negative");
  if (k == 0 && (m == "sf" || m == "fast")) throw UsageError("method " + m + " needs --k >= 1");
}

BlanketSolution run_method(const BinaryImage& image, int k, const std::string& method,
                           const Tuning& t) {
  const auto t0 = std::chrono::steady_clock::now();
  BlanketSolution sol;
  if (method == "bp") {
    SolverConfig c;
    c.k = k;
    c.rule = t.rule == 1 ? BranchRule::Variable : BranchRule::PixelPair;
    c.alpha = t.alpha;
    c.time_limit = t.time_limit;
    c.record_trace = t.trace;
    sol = solve(image, c);
  } else if (method == "sf") {
    sol = sf_solve(image, k, SfConfig{t.rho});
  } else if (method == "fast") {
    FastConfig c;
    c.tau = t.tau;
    sol = fast_solve(image, k, c);
  } else {
    CsaConfig c;
    c.seed = t.seed;
    sol = csa_solve(image, k, c);
  }
  sol.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << data;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::vector<char*> argv_of(const std::string& name, const std::vector<std::string>& args,
                           std::vector<std::string>& storage) {
  storage.clear();
  storage.push_back(name);
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return argv;
}

// Parses with CLI11; returns an exit code when the run should stop.
std::optional<int> parse(CLI::App& app, const std::vector<std::string>& args, std::ostream& out,
                         std::ostream& err) {
  std::vector<std::string> storage;
  auto argv = argv_of(app.get_name(), args, storage);
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, BinaryImage>> builtin_suite() {
  const char* specs[] = {"plus:9x9",        "staircase:8x8",       "frame:8x6",
                         "disconnected:9x7", "solid:6x6",          "random:10x10:1:0.5",
                         "random:10x10:2:0.3", "random:8x12:3:0.7"};
  std::vector<std::pair<std::string, BinaryImage>> out;
  for (const char* s : specs) out.emplace_back(s, io::gen_shape(io::parse_shape_spec(s)));
  return out;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolverError;
  }
}

}  // namespace

int run_solve(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compute a rectangle blanket for a binary image", "rbp solve"};
  std::string input;
  std::string gen;
  int k = -1;
  std::string method = "bp";
  Tuning t;
  std::string out_path;
  std::string svg_path;
  std::string trace_path;
  bool timings = false;
  auto* in_opt = app.add_option("--input", input, "PBM file (P1 or P4)");
  auto* gen_opt = app.add_option("--gen", gen, "Generated shape KIND:WxH[:SEED:DENSITY]");
  in_opt->excludes(gen_opt);
  app.add_option("--k", k, "Maximum number of rectangles")->required();
  app.add_option("--method", method, "bp, sf, fast or csa");
  app.add_option("--rule", t.rule, "Branching rule for bp (1 or 2)")->check(CLI::IsMember({1, 2}));
  app.add_option("--alpha", t.alpha, "Dual smoothing weight for bp")->check(CLI::Range(0.0, 0.999999));
  app.add_option("--rho", t.rho, "Split granularity for sf")->check(CLI::PositiveNumber);
  app.add_option("--tau", t.tau, "Zero-pixel penalty for fast")->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", t.seed, "Random seed for csa");
  app.add_option("--time-limit", t.time_limit, "Time limit in seconds for bp");
  app.add_option("--out", out_path, "Write JSON here instead of stdout");
  app.add_option("--svg", svg_path, "Write an SVG overlay");
  app.add_option("--trace", trace_path, "Write the bp column-generation trace as CSV");
  app.add_flag("--timings", timings, "Include timing fields in the JSON");
  if (auto code = parse(app, args, out, err)) return *code;

  return guarded(err, [&] {
    check_method(method, k);
    if (input.empty() == gen.empty()) throw UsageError("exactly one of --input or --gen is required");
    if (t.rho < 2) throw UsageError("--rho must be at least 2");
    if (!(t.time_limit > 0.0)) throw UsageError("--time-limit must be positive");
    BinaryImage image;
    try {
      image = gen.empty() ? io::load_pbm_file(input) : io::gen_shape(io::parse_shape_spec(gen));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    t.trace = !trace_path.empty();
    const BlanketSolution sol = run_method(image, k, method, t);
    const std::string json = io::solution_json(image, k, method, sol, timings);
    if (out_path.empty()) {
      out << json;
    } else {
      write_file(out_path, json);
    }
    if (!svg_path.empty()) write_file(svg_path, io::solution_svg(image, sol.blanket));
    if (!trace_path.empty()) write_file(trace_path, io::trace_csv(sol.trace));
    return static_cast<int>(kOk);
  });
}

int run_bench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Run every method over a suite of images", "rbp bench"};
  std::string suite = "builtin";
  std::vector<int> ks = {3, 5, 10, 15, 20};
  std::vector<std::string> methods = {"bp", "sf", "fast", "csa"};
  Tuning t;
  t.time_limit = 3600.0;
  std::string csv_path;
  bool no_pd = false;
  app.add_option("--suite", suite, "Directory of .pbm files, or 'builtin'");
  app.add_option("--k", ks, "Comma-separated k values")->delimiter(',');
  app.add_option("--methods", methods, "Comma-separated methods")->delimiter(',');
  app.add_option("--rule", t.rule, "Branching rule for bp (1 or 2)")->check(CLI::IsMember({1, 2}));
  app.add_option("--seed", t.seed, "Random seed for csa");
  app.add_option("--time-limit", t.time_limit, "Time limit in seconds per bp run");
  app.add_option("--csv", csv_path, "Write CSV here instead of stdout");
  app.add_flag("--no-pd", no_pd, "Leave the percent-deviation column empty");
  if (auto code = parse(app, args, out, err)) return *code;

  return guarded(err, [&] {
    methods.erase(std::remove(methods.begin(), methods.end(), std::string{}), methods.end());
    if (methods.empty()) throw UsageError("--methods must name at least one method");
    if (ks.empty()) throw UsageError("--k must list at least one value");
    for (const auto& m : methods) {
      for (int k : ks) check_method(m, k);
    }
    const bool want_pd = !no_pd && std::any_of(methods.begin(), methods.end(),
                                               [](const auto& m) { return m != "bp"; });
    if (want_pd && std::find(methods.begin(), methods.end(), "bp") == methods.end()) {
      throw UsageError("percent deviation needs bp among --methods (or pass --no-pd)");
    }

    std::vector<std::pair<std::string, BinaryImage>> instances;
    if (suite == "builtin") {
      instances = builtin_suite();
    } else {
      namespace fs = std::filesystem;
      if (!fs::is_directory(suite)) throw UsageError("suite directory not found: " + suite);
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(suite)) {
        if (e.is_regular_file() && e.path().extension() == ".pbm") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) instances.emplace_back(f.stem().string(), io::load_pbm_file(f.string()));
      if (instances.empty()) throw UsageError("no .pbm files in " + suite);
    }

    std::vector<io::RunRecord> records;
    for (const auto& [name, image] : instances) {
      for (int k : ks) {
        for (const auto& m : methods) {
          records.push_back(io::make_record(name, image, k, m, run_method(image, k, m, t)));
        }
      }
    }
    const std::string csv = io::bench_csv(records, want_pd);
    if (csv_path.empty()) {
      out << csv;
    } else {
      write_file(csv_path, csv);
    }
    return static_cast<int>(kOk);
  });
}

int run_gen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Write a generated shape as PBM", "rbp gen"};
  std::string spec;
  std::string out_path;
  bool raw = false;
  app.add_option("shape", spec, "KIND:WxH[:SEED:DENSITY]")->required();
  app.add_option("--out", out_path, "Write here instead of stdout");
  app.add_flag("--raw", raw, "Emit P4 instead of P1");
  if (auto code = parse(app, args, out, err)) return *code;

  return guarded(err, [&] {
    BinaryImage image;
    try {
      image = io::gen_shape(io::parse_shape_spec(spec));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const std::string pbm = io::emit_pbm(image, raw ? io::PbmFormat::Raw : io::PbmFormat::Plain);
    if (out_path.empty()) {
      out << pbm;
    } else {
      write_file(out_path, pbm);
    }
    return static_cast<int>(kOk);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::string usage =
      "usage: rbp <command> [options]\n"
      "commands:\n"
      "  solve   compute a blanket for one image\n"
      "  bench   run methods over a suite and emit CSV\n"
      "  gen     write a generated shape as PBM\n"
      "run 'rbp <command> --help' for options\n";
  if (args.empty()) {
    err << usage;
    return kUsageError;
  }
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  if (args[0] == "solve") return run_solve(rest, out, err);
  if (args[0] == "bench") return run_bench(rest, out, err);
  if (args[0] == "gen") return run_gen(rest, out, err);
  if (args[0] == "-h" || args[0] == "--help") {
    out << usage;
    return kOk;
  }
  err << "error: unknown command '" << args[0] << "'\n" << usage;
  return kUsageError;
}

}  // namespace blanket::cli
