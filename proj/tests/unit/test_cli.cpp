#include "psplit/cli.hpp"
#include "psplit/io.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace psplit;
using namespace psplit::testing;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::NumericalFailure;
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "psplit-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

json manifest(const ComplexMatrix& t, const std::string& kind) {
  return json{{"T", io::matrix_to_json(t)}, {"splitting", kind}};
}

const ComplexMatrix kT = mat(3, 3, {0.5, 0, 0, 0, 0.5, 0, 0, 0.5, 0});

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("Matrix Market array and coordinate forms") {
  std::istringstream arr(
      "%%MatrixMarket matrix array complex general\n% comment\n2 2\n1 0\n3 -1\n2 0.5\n4 0\n");
  const ComplexMatrix a = io::read_matrix_market(arr);
  CHECK(a(0, 0) == Complex(1, 0));
  CHECK(a(1, 0) == Complex(3, -1));
  CHECK(a(0, 1) == Complex(2, 0.5));

  std::istringstream coo("%%MatrixMarket matrix coordinate real general\n3 2 2\n1 1 2.5\n3 2 -1\n");
  const ComplexMatrix b = io::read_matrix_market(coo);
  CHECK(b.rows() == 3);
  CHECK(b(0, 0) == Complex(2.5, 0));
  CHECK(b(2, 1) == Complex(-1, 0));
  CHECK(b(1, 1) == Complex(0, 0));

  std::istringstream herm("%%MatrixMarket matrix coordinate complex hermitian\n2 2 2\n1 1 1 0\n2 1 0 1\n");
  const ComplexMatrix h = io::read_matrix_market(herm);
  CHECK(h(0, 1) == Complex(0, -1));

  Rng rng = instance_rng(601, 0);
  const ComplexMatrix r = ensembles::gaussian(rng, 3, 4);
  std::stringstream buf;
  io::write_matrix_market(buf, r);
  CHECK(io::read_matrix_market(buf) == r);

  std::istringstream broken("%%MatrixMarket matrix array complex general\n2 2\n1 0\n");
  CHECK(code_of([&] { io::read_matrix_market(broken); }) == ErrorCode::ParseError);
  std::istringstream header("not a header\n");
  CHECK(code_of([&] { io::read_matrix_market(header); }) == ErrorCode::ParseError);
}

TEST_CASE("JSON matrices round-trip exactly") {
  Rng rng = instance_rng(602, 0);
  const ComplexMatrix r = ensembles::gaussian(rng, 2, 5);
  const json j = json::parse(io::serialize(io::matrix_to_json(r)));
  CHECK(io::matrix_from_json(j) == r);
  CHECK(code_of([] { io::matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"re", {1, 2, 3}}}); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("manifest validation") {
  const json t = io::matrix_to_json(kT);
  CHECK(code_of([&] { cli::parse_manifest(json{{"splitting", "polar"}}); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { cli::parse_manifest(json{{"T", t}, {"splitting", "jacobi"}}); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { cli::parse_manifest(json{{"T", t}, {"splitting", "induced_right"}}); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([&] {
          cli::parse_manifest(json{{"T", t}, {"splitting", {{"kind", "polar"}, {"U", t}}}});
        }) == ErrorCode::ParseError);
  CHECK(code_of([&] { cli::parse_manifest(json{{"T", t}, {"bogus", 1}}); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { cli::parse_manifest(json{{"T", "missing.mtx"}}); }) == ErrorCode::ParseError);

  const cli::ProblemManifest m = cli::parse_manifest(
      json{{"T", t}, {"splitting", {{"U", t}}}, {"tol", 1e-10}, {"max_iter", 50}, {"tolerances", {{"eq_atol", 1e-7}}}});
  CHECK(m.custom_u.has_value());
  CHECK(m.kind == SplittingKind::Custom);
  CHECK(m.control.tol == 1e-10);
  CHECK(m.control.max_iter == 50);
  CHECK(m.tolerances.eq_atol == 1e-7);

  cli::ProblemManifest o = m;
  cli::Overrides ov;
  ov.max_iter = 7;
  ov.rank_tol = 1e-6;
  cli::apply(ov, o);
  CHECK(o.control.max_iter == 7);
  CHECK(*o.tolerances.rank_rtol == 1e-6);
}

TEST_CASE("manifest with file sources") {
  const auto dir = scratch();
  write(dir / "t.mtx", "%%MatrixMarket matrix array real general\n2 2\n0.5\n0\n0\n0.5\n");
  write(dir / "m.json", R"({"T": "t.mtx", "W": {"rows": 2, "cols": 2, "re": [0.5, 0, 0, 0]}, "splitting": "polar"})");
  const cli::ProblemManifest m = cli::load_manifest(dir / "m.json");
  CHECK(near(m.t, diag({0.5, 0.5})) == 0.0);
  const json r = cli::cmd_solve(m);
  CHECK(r["iteration"]["final_error"].get<double>() <= 1e-9);
  CHECK(r["iteration"]["converged"].get<bool>());
  CHECK_FALSE(r["iteration"].contains("wall_time_seconds"));
  CHECK(cli::cmd_solve(m, true)["iteration"].contains("wall_time_seconds"));
}

TEST_CASE("analyze reports") {
  json r = cli::cmd_analyze(cli::parse_manifest(manifest(kT, "polar")));
  CHECK(r["status"] == "ok");
  CHECK(std::abs(r["convergence"]["rho"].get<double>() - 0.5) < 1e-12);
  CHECK(r["convergence"]["converges"].get<bool>());
  CHECK(r["identities"]["all"].get<bool>());

  r = cli::cmd_analyze(cli::parse_manifest(manifest(diag({1, 0.5, 0}), "projection")));
  CHECK(r["convergence"]["criterion_value"].get<double>() == doctest::Approx(0.5));
  CHECK(r["convergence"]["converges"].get<bool>());

  r = cli::cmd_analyze(cli::parse_manifest(manifest(diag({3}), "polar")));
  CHECK_FALSE(r["convergence"]["converges"].get<bool>());
  CHECK(r["convergence"]["criterion_value"].get<double>() == doctest::Approx(3.0));

  CHECK(code_of([] { cli::cmd_analyze(cli::parse_manifest(manifest(mat(2, 2, {0, 1, 0, 0}), "mp"))); }) ==
        ErrorCode::NotHermitian);
}

TEST_CASE("frame and compare reports") {
  json r = cli::cmd_frame(cli::parse_manifest(manifest(eye(2), "polar")));
  CHECK(io::matrix_from_json(r["frame"]) == eye(2));
  CHECK(r["tight"].get<bool>());

  r = cli::cmd_compare(cli::parse_manifest(manifest(mat(3, 3, {0, 0, 0, 0, 0.5, 0, 0, 0.5, 0}), "polar")),
                       cli::parse_manifest(manifest(kT, "polar")));
  CHECK(r["faster"] == "first");
}

TEST_CASE("error reports carry the code") {
  const json e = cli::error_to_json(Error(ErrorCode::NotProper, "x"));
  CHECK(e["status"] == "error");
  CHECK(e["error"]["code"] == "NotProper");
  CHECK(exit_status(ErrorCode::ParseError) == 2);
  CHECK(exit_status(ErrorCode::NotHermitian) == 3);
  CHECK(exit_status(ErrorCode::Diverged) == 4);
  CHECK(exit_status(ErrorCode::NumericalFailure) == 1);
}

TEST_CASE("reports are deterministic") {
  const json mj{{"T", io::matrix_to_json(kT)}, {"W", io::matrix_to_json(kT)}, {"splitting", "polar"}};
  const std::string a = io::serialize(cli::cmd_solve(cli::parse_manifest(mj)));
  const std::string b = io::serialize(cli::cmd_solve(cli::parse_manifest(mj)));
  CHECK(a == b);
  const json round = json::parse(a);
  CHECK(io::serialize(round) == a);
}

TEST_CASE("bench star-pairs sweep") {
  cli::BenchSpec spec;
  spec.ensemble = "star-pairs";
  spec.seed = 7;
  spec.count = 500;
  const cli::BenchTable t = cli::cmd_bench(spec);
  CHECK(t.violations() == 0);
  CHECK(t.hypotheses_met() > 0);
  spec.threads = 1;
  const std::string serial = cli::bench_csv(cli::cmd_bench(spec));
  spec.threads = 4;
  CHECK(cli::bench_csv(cli::cmd_bench(spec)) == serial);
  CHECK(serial.rfind("instance,dim,rank,check,hypothesis,lhs,rhs,violation\n", 0) == 0);
  spec.ensemble = "nope";
  CHECK(code_of([&] { cli::cmd_bench(spec); }) == ErrorCode::InvalidArgument);
}

#ifdef PSPLIT_CLI_PATH
TEST_CASE("command-line exit codes") {
  const auto dir = scratch();
  const std::string exe = PSPLIT_CLI_PATH;
  auto run = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " > " + (dir / "out.txt").string() + " 2>/dev/null").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  write(dir / "ok.json", io::serialize(manifest(kT, "polar")));
  write(dir / "bad.json", "{\"T\": ");
  write(dir / "herm.json", io::serialize(manifest(mat(2, 2, {0, 1, 0, 0}), "mp")));
  write(dir / "div.json", io::serialize(json{{"T", io::matrix_to_json(mat(3, 3, {1, 0, 0, 2, 0, 0, 0, 0, 0}))},
                                             {"W", io::matrix_to_json(mat(3, 1, {1, 2, 0}))},
                                             {"splitting", "polar"}}));
  write(dir / "solve.json", io::serialize(json{{"T", io::matrix_to_json(diag({0.5, 0.5}))},
                                               {"W", io::matrix_to_json(diag({0.5, 0}))},
                                               {"splitting", "polar"}}));

  CHECK(run("analyze -i " + (dir / "ok.json").string()) == 0);
  std::ifstream out(dir / "out.txt");
  const json report = json::parse(out);
  CHECK(std::abs(report["convergence"]["rho"].get<double>() - 0.5) < 1e-12);

  CHECK(run("analyze -i " + (dir / "bad.json").string()) == 2);
  CHECK(run("analyze --frobnicate") == 2);
  CHECK(run("analyze -i " + (dir / "herm.json").string()) == 3);
  CHECK(run("solve -i " + (dir / "div.json").string()) == 4);
  CHECK(run("solve -i " + (dir / "solve.json").string() + " --max-iter 3") == 4);
  CHECK(run("solve -i " + (dir / "solve.json").string()) == 0);
  CHECK(run("bench star-pairs -n 20 --seed 7") == 0);
  CHECK(run("bench unknown-ensemble") == 2);
  CHECK(run("compare -i " + (dir / "ok.json").string() + " " + (dir / "ok.json").string()) == 0);
}
#endif

}
