#include "psplit/cli.hpp"

#include "psplit/ensembles.hpp"
#include "psplit/geninv.hpp"
#include "psplit/io.hpp"
#include "psplit/numeric.hpp"
#include "psplit/orders.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

namespace psplit::cli {

using nlohmann::json;
namespace ens = ensembles;

namespace {

using Instance = std::function<std::vector<BenchRow>(ens::Rng&, const Tolerances&)>;

double rho_of(const ProperSplitting& spl, const Tolerances& tol) {
  return spectral_radius(iteration_matrix(spl, tol));
}

// lhs <= rhs + slack, counted only under the hypothesis.
BenchRow row(const std::string& check, Index dim, Index rank, bool hypothesis, double lhs, double rhs,
             double slack) {
  BenchRow r;
  r.check = check;
  r.dim = dim;
  r.rank = rank;
  r.hypothesis = hypothesis;
  r.lhs = lhs;
  r.rhs = rhs;
  r.violation = hypothesis && !(lhs <= rhs + slack);
  return r;
}

std::vector<double> spectrum_with_zeros(ens::Rng& rng, Index n, Index rank, double lo, double hi) {
  std::vector<double> lambda(static_cast<std::size_t>(n), 0.0);
  for (Index i = 0; i < rank; ++i) {
    double v = 0.0;
    while (std::abs(v) < 0.05) v = ens::uniform(rng, lo, hi);
    lambda[static_cast<std::size_t>(i)] = v;
  }
  return lambda;
}

std::vector<BenchRow> star_pairs(ens::Rng& rng, const Tolerances& tol) {
  const Index rows = ens::uniform_index(rng, 2, 8);
  const Index cols = ens::uniform_index(rng, 2, 8);
  const ens::StarPair p = ens::star_pair(rng, rows, cols, 0.05, 1.95);
  const ProperSplitting spl_t = polar_splitting(p.t, tol);
  const ProperSplitting spl_s = polar_splitting(p.s, tol);
  const ConvergenceReport ct = convergence(spl_t, tol);
  const double rho_s = rho_of(spl_s, tol);
  const ComplexMatrix ps = range_projector(p.s, tol);
  const double transfer = operator_norm(spl_s.u() - ps * spl_t.u()) + operator_norm(spl_s.v() - ps * spl_t.v());
  const Index rank = numerical_rank(p.s, tol);
  return {row("rho_S_le_rho_T", rows, rank, ct.converges, rho_s, ct.rho, tol.rho_margin),
          row("polar_S_from_P_S", rows, rank, ct.converges, transfer, 0.0, 1e-8)};
}

std::vector<BenchRow> hermitian(ens::Rng& rng, const Tolerances& tol) {
  const Index n = ens::uniform_index(rng, 2, 8);
  const Index rank = ens::uniform_index(rng, 1, n);
  // Three spectral regimes so that each hypothesis is met by a fair share.
  static constexpr double lo[] = {0.0, -1.0, -2.2};
  static constexpr double hi[] = {1.95, 1.0, 2.2};
  const auto mode = static_cast<std::size_t>(ens::uniform_index(rng, 0, 2));
  const std::vector<double> lambda = spectrum_with_zeros(rng, n, rank, lo[mode], hi[mode]);
  const ComplexMatrix t = ens::hermitian_with_eigenvalues(rng, lambda);

  const double rho_polar = rho_of(polar_splitting(t, tol), tol);
  const double rho_proj = rho_of(projection_splitting(t, tol), tol);
  const double rho_mp = rho_of(mp_splitting(t, tol), tol);
  const bool proj_conv = rho_proj < 1.0 - tol.rho_margin;
  const bool mp_conv = rho_mp < 1.0 - tol.rho_margin;
  const double norm_t = operator_norm(t);
  const double norm_pt_plus_t = operator_norm(range_projector(t, tol) + t);
  return {row("polar_le_projection", n, rank, proj_conv, rho_polar, rho_proj, tol.rho_margin),
          row("polar_le_mp", n, rank, norm_t <= 1.0 && mp_conv, rho_polar, rho_mp, tol.rho_margin),
          row("mp_le_projection", n, rank, norm_pt_plus_t <= 1.0 && proj_conv, rho_mp, rho_proj,
              tol.rho_margin)};
}

std::vector<BenchRow> pp_products(ens::Rng& rng, const Tolerances& tol) {
  const Index n = ens::uniform_index(rng, 2, 8);
  const ComplexMatrix p = ens::orthogonal_projector(rng, n, ens::uniform_index(rng, 1, n));
  const ComplexMatrix q = ens::orthogonal_projector(rng, n, ens::uniform_index(rng, 1, n));
  const ComplexMatrix t = p * q;
  const Index rank = numerical_rank(t, tol);
  // Products with a nearly vanishing principal cosine sit on the rank boundary.
  const bool well_posed = rank > 0 && reduced_minimum_modulus(t, tol) >= 1e-6;
  double rho = 0.0;
  if (well_posed) rho = rho_of(q_splitting(t, tol), tol);
  return {row("q_splitting_converges", n, rank, well_posed, rho, 1.0 - tol.rho_margin, 0.0)};
}

std::vector<BenchRow> psd(ens::Rng& rng, const Tolerances& tol) {
  const Index n = ens::uniform_index(rng, 2, 8);
  const Index rank = ens::uniform_index(rng, 1, n);
  const ComplexMatrix t = ens::hermitian_with_eigenvalues(rng, spectrum_with_zeros(rng, n, rank, 0.2, 2.0));
  const ComplexMatrix root = hermitian_sqrt(t, tol);
  const auto mode = ens::uniform_index(rng, 0, 2);
  ComplexMatrix s;
  if (mode == 2 && rank < n) {
    // Range leaves R(T): never below T.
    const ComplexMatrix g = ens::gaussian(rng, n, ens::uniform_index(rng, 1, n));
    s = g * g.adjoint();
  } else {
    const Index k = ens::uniform_index(rng, 1, n);
    const double c_lo = mode == 1 ? 1.1 : 0.0;
    const double c_hi = mode == 1 ? 2.0 : 0.9;
    std::vector<double> c = ens::uniform_values(rng, static_cast<std::size_t>(n), c_lo, c_hi);
    for (Index i = k; i < n; ++i) c[static_cast<std::size_t>(i)] = 0.0;
    s = root * ens::hermitian_with_eigenvalues(rng, c) * root;
  }
  s = hermitian_part(s);

  const BltVerdict blt = blt_criterion(s, t, tol);
  const bool loewner = loewner_leq(s, t, tol);
  const AntitoneVerdict a = mp_antitone_check(s, t, tol);
  const int count = int(a.loewner) + int(a.inverses_reversed) + int(a.trivial_intersections);
  const Index r_s = numerical_rank(s, tol);
  return {row("blt_matches_loewner", n, r_s, true, blt.holds == loewner ? 0.0 : 1.0, 0.0, 0.0),
          row("antitone_two_imply_three", n, r_s, true, count == 2 ? 1.0 : 0.0, 0.0, 0.0)};
}

std::vector<BenchRow> unitary(ens::Rng& rng, const Tolerances& tol) {
  const Index n = ens::uniform_index(rng, 2, 8);
  const Index rank = ens::uniform_index(rng, 1, n);
  const std::vector<double> sigma = ens::uniform_values(rng, static_cast<std::size_t>(rank), 0.05, 2.5);
  const ComplexMatrix t = ens::with_singular_values(rng, n, n, sigma);
  const ProperSplitting base = polar_splitting(t, tol);
  const double rho = rho_of(base, tol);
  const double rho_right = rho_of(induced_right(base, ens::unitary(rng, n), tol), tol);
  const double rho_conj = rho_of(induced_conj(base, ens::unitary(rng, n), tol), tol);

  const std::vector<double> lambda = spectrum_with_zeros(rng, n, rank, -2.0, 2.0);
  const ComplexMatrix h = ens::hermitian_with_eigenvalues(rng, lambda);
  const std::vector<double> sigma_g = ens::uniform_values(rng, static_cast<std::size_t>(n), 0.5, 2.0);
  const ComplexMatrix g = ens::with_singular_values(rng, n, n, sigma_g);
  const double rho_proj = spectral_radius(range_projector(h, tol) - h);
  const double rho_inv = rho_of(induced_invertible(h, g, tol), tol);
  return {row("induced_right_rho", n, rank, true, std::abs(rho_right - rho), 0.0, 1e-10),
          row("induced_conj_rho", n, rank, true, std::abs(rho_conj - rho), 0.0, 1e-10),
          row("induced_invertible_rho", n, rank, true, std::abs(rho_inv - rho_proj), 0.0, 1e-8)};
}

Instance instance_for(const std::string& ensemble) {
  if (ensemble == "star-pairs") return star_pairs;
  if (ensemble == "hermitian") return hermitian;
  if (ensemble == "pp-products") return pp_products;
  if (ensemble == "psd") return psd;
  if (ensemble == "unitary") return unitary;
  throw Error(ErrorCode::InvalidArgument, "unknown ensemble '" + ensemble + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::size_t BenchTable::violations() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.violation; }));
}

std::size_t BenchTable::hypotheses_met() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return r.hypothesis; }));
}

std::vector<std::string> bench_ensembles() { return {"star-pairs", "hermitian", "pp-products", "psd", "unitary"}; }

BenchTable cmd_bench(const BenchSpec& spec) {
  spec.tolerances.validate();
  const Instance generate = instance_for(spec.ensemble);
  std::vector<std::vector<BenchRow>> results(spec.count);
  std::vector<std::string> failures(spec.count);

  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, spec.count)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < spec.count; i = next++) {
      ens::Rng rng = ens::instance_rng(spec.seed, i);
      try {
        results[i] = generate(rng, spec.tolerances);
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  BenchTable table;
  table.ensemble = spec.ensemble;
  for (std::size_t i = 0; i < spec.count; ++i) {
    if (!failures[i].empty()) {
      throw Error(ErrorCode::NumericalFailure, "instance " + std::to_string(i) + ": " + failures[i]);
    }
    for (BenchRow& r : results[i]) {
      r.instance = i;
      table.rows.push_back(std::move(r));
    }
  }
  return table;
}

std::string bench_csv(const BenchTable& table) {
  std::ostringstream out;
  out << "instance,dim,rank,check,hypothesis,lhs,rhs,violation\n";
  for (const BenchRow& r : table.rows) {
    out << r.instance << ',' << r.dim << ',' << r.rank << ',' << r.check << ',' << (r.hypothesis ? 1 : 0) << ','
        << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << (r.violation ? 1 : 0) << '\n';
  }
  return out.str();
}

json bench_json(const BenchTable& table) {
  json rows = json::array();
  for (const BenchRow& r : table.rows) {
    rows.push_back(json{{"instance", r.instance},
                        {"dim", r.dim},
                        {"rank", r.rank},
                        {"check", r.check},
                        {"hypothesis", r.hypothesis},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"violation", r.violation}});
  }
  return json{{"command", "bench"},
              {"ensemble", table.ensemble},
              {"violations", table.violations()},
              {"hypotheses_met", table.hypotheses_met()},
              {"rows", rows}};
}

}  // namespace psplit::cli
