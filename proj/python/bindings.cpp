#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psplit/cli.hpp"
#include "psplit/geninv.hpp"
#include "psplit/io.hpp"
#include "psplit/numeric.hpp"
#include "psplit/orders.hpp"
#include "psplit/solver.hpp"
#include "psplit/splittings.hpp"

namespace py = pybind11;
using namespace psplit;

namespace {

py::dict to_dict(const ConvergenceReport& c) {
  py::dict d;
  d["rho"] = c.rho;
  d["converges"] = c.converges;
  d["boundary"] = c.boundary;
  d["fast_path"] = c.fast_path ? py::cast(std::string(to_string(*c.fast_path))) : py::none();
  d["criterion_value"] = c.criterion_value ? py::cast(*c.criterion_value) : py::none();
  d["criterion_converges"] = c.criterion_converges ? py::cast(*c.criterion_converges) : py::none();
  return d;
}

py::dict to_dict(const IterationReport& r) {
  py::dict d;
  d["iterations"] = r.iterations;
  d["residual_history"] = r.residual_history;
  d["final_error"] = r.final_error ? py::cast(*r.final_error) : py::none();
  d["rho"] = r.rho;
  d["converged"] = r.converged;
  d["diverged"] = r.diverged;
  d["wall_time_seconds"] = r.wall_time_seconds;
  return d;
}

py::tuple to_tuple(const OrderVerdict& v) { return py::make_tuple(v.holds, v.witness_left, v.witness_right); }

std::optional<SubspaceBasis> complement(const std::optional<ComplexMatrix>& m, const Tolerances& tol) {
  if (!m) return std::nullopt;
  return SubspaceBasis::span_of(*m, tol);
}

}  // namespace

PYBIND11_MODULE(_psplit, m) {
  m.doc() = "Proper splittings of closed-range matrices";

  // Messages start with the stable error code, e.g. "NotProper: ...".
  py::register_exception<Error>(m, "Error");

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("rank_rtol", &Tolerances::rank_rtol)
      .def_readwrite("eq_atol", &Tolerances::eq_atol)
      .def_readwrite("rho_margin", &Tolerances::rho_margin)
      .def_readwrite("cond_max", &Tolerances::cond_max);

  py::class_<IterationControl>(m, "IterationControl")
      .def(py::init<>())
      .def_readwrite("tol", &IterationControl::tol)
      .def_readwrite("max_iter", &IterationControl::max_iter)
      .def_readwrite("blowup", &IterationControl::blowup);

  py::class_<ProperSplitting>(m, "ProperSplitting")
      .def_property_readonly("t", &ProperSplitting::t)
      .def_property_readonly("u", &ProperSplitting::u)
      .def_property_readonly("v", &ProperSplitting::v)
      .def_property_readonly("kind", [](const ProperSplitting& s) { return std::string(to_string(s.kind())); });

  const auto tol_arg = py::arg("tol") = Tolerances{};

  m.def("moore_penrose", &moore_penrose, py::arg("t"), tol_arg);
  m.def("group_inverse", &group_inverse, py::arg("t"), tol_arg);
  m.def("canonical_oblique", &canonical_oblique, py::arg("t"), tol_arg);
  m.def("abs_op", &abs_op, py::arg("t"), tol_arg);
  m.def("hermitian_sqrt", &hermitian_sqrt, py::arg("a"), tol_arg);
  m.def(
      "polar",
      [](const ComplexMatrix& t, const Tolerances& tol) {
        const PolarParts p = polar(t, tol);
        return py::make_tuple(p.isometry, p.modulus);
      },
      py::arg("t"), tol_arg);
  m.def("numerical_rank", &numerical_rank, py::arg("a"), tol_arg);
  m.def("range_projector", &range_projector, py::arg("a"), tol_arg);
  m.def("spectral_radius", &spectral_radius, py::arg("a"));
  m.def(
      "oblique_projector",
      [](const ComplexMatrix& range, const ComplexMatrix& null, const Tolerances& tol) {
        return oblique_projector(SubspaceBasis::span_of(range, tol), SubspaceBasis::span_of(null, tol), tol);
      },
      py::arg("range"), py::arg("null"), tol_arg);
  m.def(
      "douglas_reduced",
      [](const ComplexMatrix& t, const ComplexMatrix& w, const std::optional<ComplexMatrix>& mm,
         const Tolerances& tol) { return douglas_reduced(t, w, complement(mm, tol), tol); },
      py::arg("t"), py::arg("w"), py::arg("m") = py::none(), tol_arg);

  m.def("star_leq", [](const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
    return to_tuple(star_leq(s, t, tol));
  }, py::arg("s"), py::arg("t"), tol_arg);
  m.def("minus_leq", [](const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
    return to_tuple(minus_leq(s, t, tol));
  }, py::arg("s"), py::arg("t"), tol_arg);
  m.def("sharp_leq", [](const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
    return to_tuple(sharp_leq(s, t, tol));
  }, py::arg("s"), py::arg("t"), tol_arg);
  m.def("loewner_leq", &loewner_leq, py::arg("s"), py::arg("t"), tol_arg);
  m.def("blt_criterion", [](const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
    const BltVerdict v = blt_criterion(s, t, tol);
    return py::make_tuple(v.holds, v.rho, v.range_included);
  }, py::arg("s"), py::arg("t"), tol_arg);
  m.def("mp_antitone_check", [](const ComplexMatrix& s, const ComplexMatrix& t, const Tolerances& tol) {
    const AntitoneVerdict v = mp_antitone_check(s, t, tol);
    return py::make_tuple(v.loewner, v.inverses_reversed, v.trivial_intersections);
  }, py::arg("s"), py::arg("t"), tol_arg);

  m.def("make_splitting", [](const ComplexMatrix& t, const ComplexMatrix& u, const Tolerances& tol) {
    return make_splitting(t, u, tol);
  }, py::arg("t"), py::arg("u"), tol_arg);
  m.def("polar_splitting", &polar_splitting, py::arg("t"), tol_arg);
  m.def("q_splitting", &q_splitting, py::arg("t"), tol_arg);
  m.def("group_splitting", &group_splitting, py::arg("t"), tol_arg);
  m.def("mp_splitting", &mp_splitting, py::arg("t"), tol_arg);
  m.def("projection_splitting", &projection_splitting, py::arg("t"), tol_arg);
  m.def("plh_splitting", &plh_splitting, py::arg("s"), tol_arg);
  m.def("induced_right", &induced_right, py::arg("splitting"), py::arg("w"), tol_arg);
  m.def("induced_conj", &induced_conj, py::arg("splitting"), py::arg("x"), tol_arg);
  m.def("induced_invertible", &induced_invertible, py::arg("t"), py::arg("g"), tol_arg);
  m.def("iteration_matrix", &iteration_matrix, py::arg("splitting"), tol_arg);
  m.def("convergence", [](const ProperSplitting& s, const Tolerances& tol) {
    return to_dict(convergence(s, tol));
  }, py::arg("splitting"), tol_arg);
  m.def("positivity_diagnostics", [](const ProperSplitting& s, const Tolerances& tol) {
    const PositivityDiagnostics p = positivity_diagnostics(s, tol);
    return py::make_tuple(p.tdagger_v_psd, p.udagger_v_psd, p.udagger_v_below_projector, p.udagger_t_between,
                          p.positive_solution, p.quadratic_domination);
  }, py::arg("splitting"), tol_arg);
  m.def("rho_formula_check", [](const ProperSplitting& s, const Tolerances& tol) {
    const RhoFormula r = rho_formula_check(s, tol);
    return py::make_tuple(r.rho_iteration, r.rho_formula);
  }, py::arg("splitting"), tol_arg);
  m.def("splitting_identities_check", [](const ProperSplitting& s, const Tolerances& tol) {
    const SplittingIdentities i = splitting_identities_check(s, tol);
    return py::make_tuple(i.pinv_product, i.nullspace, i.inverse_series);
  }, py::arg("splitting"), tol_arg);
  m.def("compare", [](const ProperSplitting& a, const ProperSplitting& b, const Tolerances& tol) {
    const Comparison c = compare(a, b, tol);
    return py::make_tuple(c.rho_first, c.rho_second, std::string(to_string(c.faster)));
  }, py::arg("first"), py::arg("second"), tol_arg);

  m.def(
      "iterate_reduced",
      [](const ComplexMatrix& t, const ComplexMatrix& w, const ProperSplitting& s,
         const std::optional<ComplexMatrix>& mm, const std::optional<ComplexMatrix>& x0, const Tolerances& tol,
         const IterationControl& control) {
        const SolveResult r = iterate_reduced(t, w, s, complement(mm, tol), x0, tol, control);
        return py::make_tuple(r.x, to_dict(r.report));
      },
      py::arg("t"), py::arg("w"), py::arg("splitting"), py::arg("m") = py::none(), py::arg("x0") = py::none(),
      tol_arg, py::arg("control") = IterationControl{});
  m.def(
      "exact_reduced",
      [](const ComplexMatrix& t, const ComplexMatrix& w, const std::optional<ComplexMatrix>& mm,
         const Tolerances& tol) { return exact_reduced(t, w, complement(mm, tol), tol); },
      py::arg("t"), py::arg("w"), py::arg("m") = py::none(), tol_arg);
  m.def(
      "frame_symmetric_approx",
      [](const ComplexMatrix& f, const Tolerances& tol, const IterationControl& control) {
        const FrameApproximation a = frame_symmetric_approx(FrameSpec{f}, tol, control);
        return py::make_tuple(a.frame, a.tightness_defect, to_dict(a.report));
      },
      py::arg("frame"), tol_arg, py::arg("control") = IterationControl{});
  m.def(
      "frame_bounds",
      [](const ComplexMatrix& f, const Tolerances& tol) {
        const FrameBounds b = frame_bounds(FrameSpec{f}, tol);
        return py::make_tuple(b.lower, b.upper, b.tight);
      },
      py::arg("frame"), tol_arg);

  m.def(
      "bench",
      [](const std::string& ensemble, std::size_t count, std::uint64_t seed) {
        cli::BenchSpec spec;
        spec.ensemble = ensemble;
        spec.count = count;
        spec.seed = seed;
        const cli::BenchTable table = cli::cmd_bench(spec);
        return py::make_tuple(table.violations(), table.hypotheses_met(), cli::bench_csv(table));
      },
      py::arg("ensemble"), py::arg("count") = 500, py::arg("seed") = 0);
}
