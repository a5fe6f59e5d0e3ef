#include "psplit/cli.hpp"

#include "psplit/geninv.hpp"
#include "psplit/io.hpp"
#include "psplit/numeric.hpp"

#include <algorithm>
#include <fstream>

namespace psplit::cli {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <typename T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    parse_error(std::string("bad manifest field '") + key + "': " + e.what());
  }
}

void parse_tolerances(const json& j, Tolerances& tol) {
  if (!j.is_object()) parse_error("'tolerances' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "rank_rtol") {
      if (!it->is_null()) tol.rank_rtol = get_field<double>(j, "rank_rtol");
    } else if (key == "eq_atol") {
      tol.eq_atol = get_field<double>(j, "eq_atol");
    } else if (key == "rho_margin") {
      tol.rho_margin = get_field<double>(j, "rho_margin");
    } else if (key == "cond_max") {
      tol.cond_max = get_field<double>(j, "cond_max");
    } else {
      parse_error("unknown tolerance '" + key + "'");
    }
  }
}

void parse_splitting(const json& j, const std::filesystem::path& base_dir, ProblemManifest& m) {
  if (j.is_string()) {
    const auto kind = parse_splitting_kind(j.get<std::string>());
    if (!kind) parse_error("unknown splitting kind '" + j.get<std::string>() + "'");
    m.kind = kind;
  } else if (j.is_object()) {
    const bool has_kind = j.contains("kind");
    const bool has_u = j.contains("U");
    if (has_kind == has_u) parse_error("splitting needs exactly one of 'kind' and 'U'");
    if (has_kind) {
      parse_splitting(j.at("kind"), base_dir, m);
    } else {
      m.custom_u = io::load_matrix(j.at("U"), base_dir);
      m.kind = SplittingKind::Custom;
    }
  } else {
    parse_error("'splitting' must be a kind name or an object");
  }
  switch (*m.kind) {
    case SplittingKind::InducedRight:
    case SplittingKind::InducedConj:
    case SplittingKind::InducedInvertible:
      parse_error("induced splittings cannot be named in a manifest; give U explicitly");
    case SplittingKind::Custom:
      if (!m.custom_u) parse_error("custom splitting needs 'U'");
      break;
    default:
      break;
  }
}

json convergence_to_json(const ConvergenceReport& c) {
  json j{{"rho", c.rho}, {"converges", c.converges}, {"boundary", c.boundary}};
  j["fast_path"] = c.fast_path ? json(std::string(to_string(*c.fast_path))) : json(nullptr);
  j["criterion_value"] = c.criterion_value ? json(*c.criterion_value) : json(nullptr);
  j["criterion_converges"] = c.criterion_converges ? json(*c.criterion_converges) : json(nullptr);
  return j;
}

json positivity_to_json(const PositivityDiagnostics& p) {
  return json{{"tdagger_v_psd", p.tdagger_v_psd},
              {"udagger_v_psd", p.udagger_v_psd},
              {"udagger_v_below_projector", p.udagger_v_below_projector},
              {"udagger_t_between", p.udagger_t_between},
              {"positive_solution", p.positive_solution},
              {"quadratic_domination", p.quadratic_domination},
              {"all_equal", p.all_equal()}};
}

json splitting_to_json(const ProperSplitting& spl) {
  return json{{"kind", std::string(to_string(spl.kind()))},
              {"rows", spl.t().rows()},
              {"cols", spl.t().cols()},
              {"U", io::matrix_to_json(spl.u())},
              {"V", io::matrix_to_json(spl.v())}};
}

std::optional<SubspaceBasis> complement_of(const ProblemManifest& m) {
  if (!m.complement) return std::nullopt;
  return SubspaceBasis::span_of(*m.complement, m.tolerances);
}

}  // namespace

ProblemManifest parse_manifest(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) parse_error("manifest must be a JSON object");
  if (!j.contains("T")) parse_error("manifest needs 'T'");
  static const char* known[] = {"T", "W", "splitting", "M", "tolerances", "tol", "max_iter", "seed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known)) {
      parse_error("unknown manifest field '" + it.key() + "'");
    }
  }

  ProblemManifest m;
  m.t = io::load_matrix(j.at("T"), base_dir);
  if (j.contains("W")) m.w = io::load_matrix(j.at("W"), base_dir);
  if (j.contains("M")) m.complement = io::load_matrix(j.at("M"), base_dir);
  if (j.contains("splitting")) parse_splitting(j.at("splitting"), base_dir, m);
  if (j.contains("tolerances")) parse_tolerances(j.at("tolerances"), m.tolerances);
  if (j.contains("tol")) m.control.tol = get_field<double>(j, "tol");
  if (j.contains("max_iter")) m.control.max_iter = get_field<int>(j, "max_iter");
  if (j.contains("seed")) m.seed = get_field<std::uint64_t>(j, "seed");
  try {
    m.tolerances.validate();
  } catch (const Error& e) {
    parse_error(e.what());
  }
  return m;
}

ProblemManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open manifest " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    parse_error("invalid manifest JSON in " + path.string() + ": " + e.what());
  }
  return parse_manifest(j, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

void apply(const Overrides& o, ProblemManifest& m) {
  if (o.tol) m.control.tol = *o.tol;
  if (o.rank_tol) m.tolerances.rank_rtol = *o.rank_tol;
  if (o.rho_margin) m.tolerances.rho_margin = *o.rho_margin;
  if (o.eq_atol) m.tolerances.eq_atol = *o.eq_atol;
  if (o.max_iter) m.control.max_iter = *o.max_iter;
  if (o.seed) m.seed = *o.seed;
  m.tolerances.validate();
}

ProperSplitting build_splitting(const ProblemManifest& m) {
  const Tolerances& tol = m.tolerances;
  switch (m.kind.value_or(SplittingKind::Polar)) {
    case SplittingKind::Polar: return polar_splitting(m.t, tol);
    case SplittingKind::Q: return q_splitting(m.t, tol);
    case SplittingKind::Group: return group_splitting(m.t, tol);
    case SplittingKind::MP: return mp_splitting(m.t, tol);
    case SplittingKind::Projection: return projection_splitting(m.t, tol);
    case SplittingKind::PLh: return plh_splitting(m.t, tol);
    case SplittingKind::Custom: return make_splitting(m.t, *m.custom_u, tol);
    default: throw Error(ErrorCode::InvalidArgument, "splitting kind not constructible from a manifest");
  }
}

json iteration_to_json(const IterationReport& r, bool timing) {
  json j{{"iterations", r.iterations},
         {"residual_history", r.residual_history},
         {"rho", r.rho},
         {"converged", r.converged},
         {"diverged", r.diverged}};
  j["final_error"] = r.final_error ? json(*r.final_error) : json(nullptr);
  if (timing) j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

json error_to_json(const Error& e) {
  json j{{"status", "error"},
         {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
  if (const auto* it = dynamic_cast<const IterationError*>(&e)) {
    j["iteration"] = iteration_to_json(it->report(), false);
  }
  return j;
}

json cmd_analyze(const ProblemManifest& m) {
  const ProperSplitting spl = build_splitting(m);
  json j{{"command", "analyze"}, {"status", "ok"}};
  j["splitting"] = splitting_to_json(spl);
  j["convergence"] = convergence_to_json(convergence(spl, m.tolerances));
  j["positivity"] = positivity_to_json(positivity_diagnostics(spl, m.tolerances));
  try {
    const SplittingIdentities id = splitting_identities_check(spl, m.tolerances);
    j["identities"] = json{{"pinv_product", id.pinv_product},
                           {"nullspace", id.nullspace},
                           {"inverse_series", id.inverse_series},
                           {"all", id.all()}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularIteration) throw;
    j["identities"] = json{{"error", std::string(to_string(e.code()))}};
  }
  return j;
}

json cmd_solve(const ProblemManifest& m, bool timing) {
  if (!m.w) throw Error(ErrorCode::InvalidArgument, "solve needs 'W'");
  const ProperSplitting spl = build_splitting(m);
  const SolveResult r = iterate_reduced(m.t, *m.w, spl, complement_of(m), std::nullopt, m.tolerances, m.control);
  json j{{"command", "solve"}, {"status", "ok"}};
  j["splitting"] = std::string(to_string(spl.kind()));
  j["X"] = io::matrix_to_json(r.x);
  j["iteration"] = iteration_to_json(r.report, timing);
  return j;
}

json cmd_frame(const ProblemManifest& m, bool timing) {
  const FrameSpec frame{m.t};
  const FrameBounds before = frame_bounds(frame, m.tolerances);
  const FrameApproximation a = frame_symmetric_approx(frame, m.tolerances, m.control);
  const FrameBounds after = frame_bounds(FrameSpec{a.frame}, m.tolerances);
  json j{{"command", "frame"}, {"status", "ok"}};
  j["frame"] = io::matrix_to_json(a.frame);
  j["bounds"] = json{{"lower", before.lower}, {"upper", before.upper}, {"tight", before.tight}};
  j["approximation_bounds"] = json{{"lower", after.lower}, {"upper", after.upper}, {"tight", after.tight}};
  j["tightness_defect"] = a.tightness_defect;
  j["tight"] = a.tightness_defect <= m.tolerances.eq_atol;
  j["iteration"] = iteration_to_json(a.report, timing);
  return j;
}

json cmd_compare(const ProblemManifest& first, const ProblemManifest& second) {
  const ProperSplitting a = build_splitting(first);
  const ProperSplitting b = build_splitting(second);
  const Comparison c = compare(a, b, first.tolerances);
  json j{{"command", "compare"}, {"status", "ok"}};
  j["first"] = json{{"kind", std::string(to_string(a.kind()))}, {"rho", c.rho_first}};
  j["second"] = json{{"kind", std::string(to_string(b.kind()))}, {"rho", c.rho_second}};
  j["faster"] = std::string(to_string(c.faster));
  return j;
}

}  // namespace psplit::cli
