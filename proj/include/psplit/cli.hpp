#pragma once

#include "psplit/core.hpp"
#include "psplit/solver.hpp"
#include "psplit/splittings.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace psplit::cli {

/// Parsed problem description. Matrix sources are resolved at parse time.
///
/// JSON layout:
///   {"T": <src>, "W": <src>?, "splitting": "polar" | {"kind": "..."} | {"U": <src>},
///    "M": <src>?, "tolerances": {"rank_rtol", "eq_atol", "rho_margin", "cond_max"}?,
///    "tol": 1e-12?, "max_iter": 10000?, "seed": 7?}
/// where <src> is an inline {"rows","cols","re","im"} object or a path to a
/// .mtx / .json file relative to the manifest. "M" holds spanning columns of
/// the complement of N(T).
struct ProblemManifest {
  ComplexMatrix t;
  std::optional<ComplexMatrix> w;
  std::optional<SplittingKind> kind;
  std::optional<ComplexMatrix> custom_u;
  std::optional<ComplexMatrix> complement;
  Tolerances tolerances;
  IterationControl control;
  std::optional<std::uint64_t> seed;
};

ProblemManifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");
ProblemManifest load_manifest(const std::filesystem::path& path);

/// Command-line values that take precedence over the manifest.
struct Overrides {
  std::optional<double> tol;
  std::optional<double> rank_tol;
  std::optional<double> rho_margin;
  std::optional<double> eq_atol;
  std::optional<int> max_iter;
  std::optional<std::uint64_t> seed;
};

void apply(const Overrides& o, ProblemManifest& m);

/// Splitting named by the manifest (named kind or custom U).
ProperSplitting build_splitting(const ProblemManifest& m);

nlohmann::json cmd_analyze(const ProblemManifest& m);
/// `timing` adds wall-clock fields, which makes the report non-reproducible.
nlohmann::json cmd_solve(const ProblemManifest& m, bool timing = false);
nlohmann::json cmd_frame(const ProblemManifest& m, bool timing = false);
nlohmann::json cmd_compare(const ProblemManifest& first, const ProblemManifest& second);

nlohmann::json iteration_to_json(const IterationReport& r, bool timing);
nlohmann::json error_to_json(const Error& e);

struct BenchSpec {
  std::string ensemble;  ///< star-pairs | hermitian | pp-products | psd | unitary
  std::size_t count = 500;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// One predicted inequality lhs <= rhs for one instance. Instances whose
/// hypothesis fails are reported but never count as violations.
struct BenchRow {
  std::size_t instance = 0;
  Index dim = 0;
  Index rank = 0;
  std::string check;
  bool hypothesis = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool violation = false;
};

struct BenchTable {
  std::string ensemble;
  std::vector<BenchRow> rows;

  std::size_t violations() const;
  std::size_t hypotheses_met() const;
};

std::vector<std::string> bench_ensembles();
BenchTable cmd_bench(const BenchSpec& spec);
std::string bench_csv(const BenchTable& table);
nlohmann::json bench_json(const BenchTable& table);

}  // namespace psplit::cli
