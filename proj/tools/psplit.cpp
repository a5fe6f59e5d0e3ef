#include "psplit/cli.hpp"
#include "psplit/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <iostream>

namespace {

using psplit::Error;
using psplit::ErrorCode;
namespace cli = psplit::cli;

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  std::optional<std::string> format;
  bool timing = false;
  cli::Overrides overrides;
  std::string ensemble;
  std::size_t count = 500;
  unsigned threads = 0;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty() || opt.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + opt.output);
  out << text;
}

cli::ProblemManifest manifest_at(const Options& opt, std::size_t i) {
  cli::ProblemManifest m = cli::load_manifest(opt.inputs.at(i));
  cli::apply(opt.overrides, m);
  return m;
}

void add_tolerance_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--tol", opt.overrides.tol, "Stopping tolerance of the iteration");
  cmd->add_option("--eq-atol", opt.overrides.eq_atol, "Absolute tolerance for equality tests");
  cmd->add_option("--rank-tol", opt.overrides.rank_tol, "Relative singular-value cutoff for rank");
  cmd->add_option("--rho-margin", opt.overrides.rho_margin, "Strictness band around rho = 1");
  cmd->add_option("--max-iter", opt.overrides.max_iter, "Iteration budget");
  cmd->add_option("--seed", opt.overrides.seed, "Seed for randomized commands");
  cmd->add_option("-o,--output", opt.output, "Output file (default stdout)");
  cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

int run(int argc, char** argv) {
  CLI::App app{"Proper splittings of closed-range matrices: analysis, solving, frames, sweeps"};
  app.require_subcommand(1);
  Options opt;

  auto* analyze = app.add_subcommand("analyze", "Build a splitting and report convergence diagnostics");
  auto* solve = app.add_subcommand("solve", "Iterate to the reduced solution of T X = W");
  auto* frame = app.add_subcommand("frame", "Symmetric approximation of the frame given by the columns of T");
  auto* compare = app.add_subcommand("compare", "Compare the iteration matrices of two splittings");
  auto* bench = app.add_subcommand("bench", "Seeded ensemble sweep of the comparison inequalities");

  for (auto* cmd : {analyze, solve, frame}) {
    cmd->add_option("-i,--input", opt.inputs, "Manifest file")->required()->expected(1);
    add_tolerance_flags(cmd, opt);
  }
  for (auto* cmd : {solve, frame}) cmd->add_flag("--timing", opt.timing, "Include wall-clock time");
  compare->add_option("-i,--input", opt.inputs, "Two manifest files")->required()->expected(2);
  add_tolerance_flags(compare, opt);

  bench->add_option("ensemble", opt.ensemble, "Ensemble name")
      ->required()
      ->check(CLI::IsMember(cli::bench_ensembles()));
  bench->add_option("-n,--count", opt.count, "Number of instances");
  bench->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  add_tolerance_flags(bench, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : psplit::exit_status(ErrorCode::ParseError);
  }
  const std::string format = opt.format.value_or(bench->parsed() ? "csv" : "json");

  try {
    if (bench->parsed()) {
      cli::BenchSpec spec;
      spec.ensemble = opt.ensemble;
      spec.count = opt.count;
      spec.seed = opt.overrides.seed.value_or(0);
      spec.threads = opt.threads;
      if (opt.overrides.rank_tol) spec.tolerances.rank_rtol = opt.overrides.rank_tol;
      if (opt.overrides.eq_atol) spec.tolerances.eq_atol = *opt.overrides.eq_atol;
      if (opt.overrides.rho_margin) spec.tolerances.rho_margin = *opt.overrides.rho_margin;
      const cli::BenchTable table = cli::cmd_bench(spec);
      emit(opt, format == "csv" ? cli::bench_csv(table) : psplit::io::serialize(cli::bench_json(table)));
      std::cerr << table.ensemble << ": " << table.rows.size() << " checks, " << table.hypotheses_met()
                << " with hypothesis met, " << table.violations() << " violations\n";
      return 0;
    }
    if (format != "json") throw Error(ErrorCode::InvalidArgument, "only bench supports --format csv");
    nlohmann::json report;
    if (analyze->parsed()) {
      report = cli::cmd_analyze(manifest_at(opt, 0));
    } else if (solve->parsed()) {
      report = cli::cmd_solve(manifest_at(opt, 0), opt.timing);
    } else if (frame->parsed()) {
      report = cli::cmd_frame(manifest_at(opt, 0), opt.timing);
    } else {
      report = cli::cmd_compare(manifest_at(opt, 0), manifest_at(opt, 1));
    }
    emit(opt, psplit::io::serialize(report));
    return 0;
  } catch (const Error& e) {
    std::cout << psplit::io::serialize(cli::error_to_json(e));
    std::cerr << "psplit: " << e.what() << "\n";
    return psplit::exit_status(e.code());
  }
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "psplit: NumericalFailure: " << e.what() << "\n";
    return psplit::exit_status(ErrorCode::NumericalFailure);
  }
}
