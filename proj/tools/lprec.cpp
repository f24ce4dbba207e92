// Copyright 2026 The lprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lprec command-line tool: thresholds, solvers, null-space certification and
// experiments. Everything goes through the C interface in lprec/c_api.h.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lprec/c_api.h"

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

// Failure with the exit code it should produce.
struct CommandError {
  int code;
  std::string message;
};

int exit_code_for(lpr_status s) {
  switch (s) {
    case LPR_OK: return kExitOk;
    case LPR_ERR_DOMAIN:
    case LPR_ERR_PARSE:
    case LPR_ERR_IO:
    case LPR_ERR_NULL_ARGUMENT: return kExitUsage;
    default: return kExitNumeric;
  }
}

class Context {
 public:
  Context() {
    if (lpr_context_create(&ctx_) != LPR_OK) throw CommandError{kExitNumeric, "out of memory"};
  }
  ~Context() { lpr_context_destroy(ctx_); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
  lpr_context* get() const { return ctx_; }

  void check(lpr_status s) const {
    if (s != LPR_OK)
      throw CommandError{exit_code_for(s),
                         std::string(lpr_status_name(s)) + ": " + lpr_last_error(ctx_)};
  }

 private:
  lpr_context* ctx_ = nullptr;
};

struct ReportHandle {
  lpr_report* r = nullptr;
  ~ReportHandle() { lpr_report_destroy(r); }
};

struct MatrixHandle {
  lpr_matrix* m = nullptr;
  ~MatrixHandle() { lpr_matrix_destroy(m); }
};

struct Options {
  std::string output;
  std::string format = "json";

  std::string threshold_kind;
  double p = 1.0;
  double alpha = 0.9;

  std::string instance;
  std::string method = "l1";

  std::string matrix;
  bool measurement = false;
  std::string mode = "strong";
  double rho = -1.0;
  int rho_n = -1;
  std::string support;
  std::string signs;
  std::string pattern;
  int sphere_samples = 2000;
  int refine_steps = 200;
  double step_shrink = 0.5;
  std::uint64_t seed = 0;

  std::string experiment;
  std::string spec;
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError{kExitUsage, std::string("cannot read ") + what + " '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_input(const std::string& path, const char* what) {
  if (path.empty()) return;
  if (!fs::is_regular_file(path))
    throw CommandError{kExitUsage, std::string(what) + " '" + path + "' does not exist"};
}

void require_output(const std::string& path) {
  if (path.empty()) return;
  const fs::path parent = fs::absolute(path).parent_path();
  if (!fs::is_directory(parent))
    throw CommandError{kExitUsage, "output directory '" + parent.string() + "' does not exist"};
  if (fs::is_directory(path))
    throw CommandError{kExitUsage, "output path '" + path + "' is a directory"};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw CommandError{kExitUsage, "cannot write '" + path + "'"};
}

// Comma-separated integers, e.g. "1,2,5".
std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CommandError{kExitUsage, std::string(flag) + ": '" + item + "' is not an integer"};
    }
  }
  return out;
}

const char* env_threads() {
  const char* v = std::getenv("LP_RECOVERY_THREADS");
  return v ? v : "";
}

void log_config(const std::string& command, const Json& config) {
  Json line{{"command", command}, {"config", config},
            {"LP_RECOVERY_THREADS", env_threads()}, {"version", lpr_version()}};
  std::cerr << "lprec: resolved configuration " << line.dump() << "\n";
}

// Prints the primary artifact and mirrors it to --output.
void emit(const Options& opt, const lpr_report* r) {
  const std::string text = opt.format == "csv" ? lpr_report_csv(r) : lpr_report_json(r);
  std::cout << text;
  if (!opt.output.empty()) write_file(opt.output, text);
  std::cerr << "lprec: wall time " << lpr_report_wall_time(r) << " s\n";
}

double field(const lpr_report* r, const char* key) {
  const Json j = Json::parse(lpr_report_json(r));
  return j.value(key, NAN);
}

int run_threshold(const Options& opt) {
  Json cfg{{"kind", opt.threshold_kind}, {"p", opt.p}};
  if (opt.threshold_kind == "strong-bound" || opt.threshold_kind == "weak-bound")
    cfg["alpha"] = opt.alpha;
  cfg["format"] = opt.format;
  cfg["output"] = opt.output;
  log_config("threshold", cfg);
  Context ctx;
  ReportHandle rep;
  ctx.check(lpr_threshold(ctx.get(), opt.threshold_kind.c_str(), opt.p, opt.alpha, &rep.r));
  emit(opt, rep.r);
  const char* key = opt.threshold_kind == "strong-limit"
                        ? "rho_star"
                        : (opt.threshold_kind.ends_with("bound") ? "rho_bound" : "rho");
  std::ostringstream line;
  line.precision(6);
  line << std::fixed << field(rep.r, key);
  std::cerr << "lprec: " << opt.threshold_kind << " p=" << opt.p << ": " << key << " = "
            << line.str() << "\n";
  return kExitOk;
}

int run_solve(const Options& opt) {
  log_config("solve", Json{{"instance", opt.instance}, {"method", opt.method},
                           {"format", opt.format}, {"output", opt.output}});
  const std::string text = read_file(opt.instance, "instance");
  Context ctx;
  ReportHandle rep;
  ctx.check(lpr_solve_json(ctx.get(), text.c_str(), opt.method.c_str(), &rep.r));
  emit(opt, rep.r);
  return kExitOk;
}

int run_certify(const Options& opt) {
  Context ctx;
  MatrixHandle mat;
  ctx.check(lpr_matrix_read_csv(ctx.get(), opt.matrix.c_str(), &mat.m));
  MatrixHandle basis;
  if (opt.measurement) {
    ctx.check(lpr_matrix_null_space(ctx.get(), mat.m, &basis.m));
  } else {
    // A single row is read as one null-space direction.
    if (lpr_matrix_rows(mat.m) == 1) ctx.check(lpr_matrix_transpose(ctx.get(), mat.m));
    std::swap(basis.m, mat.m);
  }
  const int n = lpr_matrix_rows(basis.m);

  std::vector<int> support;
  std::vector<int> signs;
  if (!opt.pattern.empty()) {
    Json pat;
    try {
      pat = Json::parse(read_file(opt.pattern, "pattern"));
      support = pat.at("support").get<std::vector<int>>();
      if (pat.contains("signs")) signs = pat.at("signs").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
      throw CommandError{kExitUsage, "pattern '" + opt.pattern + "': " + e.what()};
    }
  } else if (!opt.support.empty()) {
    support = parse_int_list(opt.support, "--support");
    if (!opt.signs.empty()) signs = parse_int_list(opt.signs, "--signs");
  } else if (opt.rho > 0.0 && opt.mode != "strong") {
    const int k = std::max(1, static_cast<int>(std::lround(opt.rho * n)));
    for (int i = 1; i <= k; ++i) support.push_back(i);
  }
  for (int& i : support) --i;  // 1-based on the command line
  if (!signs.empty() && signs.size() != support.size())
    throw CommandError{kExitUsage, "--signs must have one entry per support index"};

  int rho_n = opt.rho_n;
  if (opt.mode == "strong" && rho_n < 0) {
    if (opt.rho < 0.0) throw CommandError{kExitUsage, "strong mode needs --rho or --rho-n"};
    rho_n = static_cast<int>(std::floor(opt.rho * n + 1e-9));
  }
  if (opt.mode != "strong" && support.empty())
    throw CommandError{kExitUsage, "mode " + opt.mode + " needs --support, --pattern or --rho"};

  Json cfg{{"matrix", opt.matrix}, {"measurement", opt.measurement}, {"mode", opt.mode},
           {"p", opt.p}};
  if (opt.mode == "strong") cfg["rho_n"] = rho_n;
  Json one_based = Json::array();
  for (int i : support) one_based.push_back(i + 1);
  if (opt.mode != "strong") {
    cfg["support"] = one_based;
    if (!signs.empty()) cfg["signs"] = signs;
  }
  cfg["sphere_samples"] = opt.sphere_samples;
  cfg["refine_steps"] = opt.refine_steps;
  cfg["step_shrink"] = opt.step_shrink;
  cfg["seed"] = opt.seed;
  cfg["format"] = opt.format;
  cfg["output"] = opt.output;
  log_config("certify", cfg);

  lpr_certify_options co;
  lpr_certify_options_init(&co);
  co.mode = opt.mode.c_str();
  co.p = opt.p;
  co.rho_n = rho_n;
  co.support = support.data();
  co.signs = signs.empty() ? nullptr : signs.data();
  co.support_len = static_cast<int>(support.size());
  co.sphere_samples = opt.sphere_samples;
  co.refine_steps = opt.refine_steps;
  co.step_shrink = opt.step_shrink;
  co.seed = opt.seed;
  ReportHandle rep;
  ctx.check(lpr_certify(ctx.get(), basis.m, &co, &rep.r));

  const char* witness = lpr_report_attachment(rep.r, "witness");
  if (witness && !opt.output.empty()) {
    const std::string path = opt.output + ".witness.csv";
    write_file(path, witness);
    std::cerr << "lprec: witness written to " << path << "\n";
  }
  emit(opt, rep.r);
  const Json verdict = Json::parse(lpr_report_json(rep.r));
  std::cerr << "lprec: " << opt.mode << " condition "
            << (verdict["holds"].get<bool>()
                    ? (verdict["certificate_exact"].get<bool>() ? "holds" : "not falsified")
                    : "falsified");
  if (verdict.contains("witness"))
    std::cerr << " (lhs " << verdict["witness"]["lhs"] << ", rhs " << verdict["witness"]["rhs"]
              << ")";
  std::cerr << "\n";
  return kExitOk;
}

int run_experiment(const Options& opt) {
  const std::string spec = opt.spec.empty() ? "{}" : read_file(opt.spec, "spec");
  Json spec_json;
  try {
    spec_json = Json::parse(spec);
  } catch (const nlohmann::json::parse_error& e) {
    throw CommandError{kExitUsage, "spec '" + opt.spec + "': " + e.what()};
  }
  log_config("experiment", Json{{"name", opt.experiment}, {"spec", spec_json},
                                {"format", opt.format}, {"output", opt.output}});
  Context ctx;
  ReportHandle rep;
  ctx.check(lpr_experiment(ctx.get(), opt.experiment.c_str(), spec.c_str(), &rep.r));
  emit(opt, rep.r);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse recovery thresholds, solvers and null-space checks.", "lprec"};
  app.set_version_flag("--version", lpr_version());
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", opt.output, "Also write the primary output to this file");
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  auto* threshold = app.add_subcommand(
      "threshold",
      "Recovery thresholds for Gaussian matrices. strong-limit: largest sparsity ratio "
      "recoverable for all supports as m/n -> 1, with its derivative in p. weak-limit and "
      "sectional-limit: the corresponding fixed-support ratios. strong-bound and weak-bound: "
      "provable sparsity ratios at undersampling ratio alpha.");
  threshold->add_option("kind", opt.threshold_kind, "Threshold to compute")
      ->required()
      ->check(CLI::IsMember(
          {"strong-limit", "weak-limit", "sectional-limit", "strong-bound", "weak-bound"}));
  threshold->add_option("--p", opt.p, "Exponent p of the quasinorm, in (0, 1] (0 allowed for "
                                      "the weak and sectional limits)")
      ->required();
  threshold->add_option("--alpha", opt.alpha, "Undersampling ratio m/n, bound kinds only")
      ->capture_default_str();
  add_common(threshold);

  auto* solve = app.add_subcommand(
      "solve",
      "Recover x from y = A x by l0 enumeration, l1 linear programming, or lp (0 < p < 1) "
      "iteratively reweighted least squares.");
  solve->add_option("--instance", opt.instance,
                    "JSON file with \"A\" (rows), \"y\", optional \"p\" and \"x_true\"")
      ->required();
  solve->add_option("--method", opt.method, "Program to solve")
      ->check(CLI::IsMember({"l0", "l1", "lp"}))
      ->capture_default_str();
  add_common(solve);

  auto* certify = app.add_subcommand(
      "certify",
      "Check a null-space condition (strong, weak_l1, weak_lp, weak_l0, sectional) for a "
      "basis B. Exact for one null direction; otherwise a seeded falsification search whose "
      "'holds' means 'not falsified within budget'.");
  certify->add_option("--matrix", opt.matrix,
                      "CSV with the null-space basis B (n x d); a single row is read as one "
                      "direction")
      ->required();
  certify->add_flag("--measurement", opt.measurement,
                    "Treat --matrix as the measurement matrix A and use its null space");
  certify->add_option("--mode", opt.mode, "Condition to check")
      ->check(CLI::IsMember({"strong", "weak_l1", "weak_lp", "weak_l0", "sectional"}))
      ->capture_default_str();
  certify->add_option("--p", opt.p, "Exponent p in [0, 1]")->required();
  certify->add_option("--rho", opt.rho,
                      "Sparsity ratio: strong mode uses floor(rho n) entries, other modes "
                      "the first round(rho n) indices with positive signs");
  certify->add_option("--rho-n", opt.rho_n, "Sparsity count for strong mode");
  certify->add_option("--support", opt.support, "1-based support indices, e.g. 1,2,5");
  certify->add_option("--signs", opt.signs, "Signs for --support, e.g. 1,-1,1 (default +1)");
  certify->add_option("--pattern", opt.pattern,
                      "JSON file {\"support\": [...], \"signs\": [...]} with 1-based indices");
  certify->add_option("--sphere-samples", opt.sphere_samples, "Search directions")
      ->capture_default_str();
  certify->add_option("--refine-steps", opt.refine_steps, "Pattern-search sweeps")
      ->capture_default_str();
  certify->add_option("--step-shrink", opt.step_shrink, "Pattern-search step factor")
      ->capture_default_str();
  certify->add_option("--seed", opt.seed, "Search seed")->capture_default_str();
  add_common(certify);

  auto* experiment = app.add_subcommand(
      "experiment",
      "Seeded experiments. example1: exact checks on the 6k-dimensional example. phase: "
      "success rate against sparsity. strong-vs-weak: fixed versus random supports. "
      "weak-probe: falsification frequency of the weak condition. concentration: "
      "Monte Carlo checks of top-sum and split-sum concentration.");
  experiment->add_option("name", opt.experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember({"example1", "phase", "strong-vs-weak", "weak-probe",
                             "concentration"}));
  experiment->add_option("--spec", opt.spec,
                         "JSON file overriding the experiment defaults (see README)");
  add_common(experiment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    require_output(opt.output);
    require_input(opt.instance, "instance");
    require_input(opt.matrix, "matrix");
    require_input(opt.pattern, "pattern");
    require_input(opt.spec, "spec");
    if (threshold->parsed()) return run_threshold(opt);
    if (solve->parsed()) return run_solve(opt);
    if (certify->parsed()) return run_certify(opt);
    return run_experiment(opt);
  } catch (const CommandError& e) {
    std::cerr << "lprec: error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "lprec: error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
