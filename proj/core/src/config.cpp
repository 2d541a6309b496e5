#include "muso/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "muso/errors.hpp"

namespace muso {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw validation_error(what); }

double need_finite(const json& j, const std::string& name) {
  if (!j.is_number()) fail(name + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(name + " must be finite");
  return v;
}

ScalarField parse_field(const json& j, const std::string& name) {
  if (j.is_number()) return ScalarField::constant(j.get<double>());
  if (!j.is_object()) fail(name + " must be a number or an object with a kind");
  const std::string kind = j.value("kind", "constant");
  if (kind == "constant") {
    return ScalarField::constant(need_finite(j.at("value"), name + ".value"));
  }
  if (kind == "affine") {
    Point g{};
    const auto& gr = j.at("gradient");
    if (!gr.is_array() || gr.empty() || gr.size() > 2)
      fail(name + ".gradient must be an array of 1 or 2 numbers");
    for (std::size_t k = 0; k < gr.size(); ++k)
      g[static_cast<int>(k)] = need_finite(gr[k], name + ".gradient");
    return ScalarField::affine(need_finite(j.at("offset"), name + ".offset"), g);
  }
  if (kind == "bump") {
    Point c{};
    const auto& ce = j.at("center");
    if (!ce.is_array() || ce.empty() || ce.size() > 2)
      fail(name + ".center must be an array of 1 or 2 numbers");
    for (std::size_t k = 0; k < ce.size(); ++k)
      c[static_cast<int>(k)] = need_finite(ce[k], name + ".center");
    try {
      return ScalarField::bump(c, need_finite(j.at("r_inner"), name + ".r_inner"),
                               need_finite(j.at("r_outer"), name + ".r_outer"),
                               j.value("base", 0.0), j.value("amplitude", 1.0));
    } catch (const validation_error& e) {
      fail(name + ": " + e.what());
    }
  }
  fail(name + ".kind must be constant, affine, or bump");
}

json field_to_json(const ScalarField& f) {
  json j;
  switch (f.kind()) {
    case FieldKind::Constant:
      j["kind"] = "constant";
      j["value"] = f.c0();
      break;
    case FieldKind::Affine:
      j["kind"] = "affine";
      j["offset"] = f.c0();
      j["gradient"] = {f.gradient()[0], f.gradient()[1]};
      break;
    case FieldKind::Bump:
      j["kind"] = "bump";
      j["center"] = {f.center()[0], f.center()[1]};
      j["r_inner"] = f.r_inner();
      j["r_outer"] = f.r_outer();
      j["base"] = f.c0();
      j["amplitude"] = f.amplitude();
      break;
  }
  return j;
}

FamilyKind parse_family_kind(const std::string& s) {
  if (s == "power") return FamilyKind::Power;
  if (s == "power_over_log") return FamilyKind::PowerOverLog;
  if (s == "power_times_log") return FamilyKind::PowerTimesLog;
  fail("family.kind must be power, power_over_log, or power_times_log");
}

std::string family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Power: return "power";
    case FamilyKind::PowerOverLog: return "power_over_log";
    case FamilyKind::PowerTimesLog: return "power_times_log";
    case FamilyKind::Custom: return "custom";
  }
  return "power";
}

ReactionKind parse_reaction_kind(const std::string& s) {
  if (s == "pure_power") return ReactionKind::PurePower;
  if (s == "power_plus_log") return ReactionKind::PowerPlusLog;
  if (s == "power_plus_sin_sin") return ReactionKind::PowerPlusSinSin;
  fail("reaction.kind must be pure_power, power_plus_log, or power_plus_sin_sin");
}

std::string reaction_kind_name(ReactionKind k) {
  switch (k) {
    case ReactionKind::PurePower: return "pure_power";
    case ReactionKind::PowerPlusLog: return "power_plus_log";
    case ReactionKind::PowerPlusSinSin: return "power_plus_sin_sin";
  }
  return "pure_power";
}

}  // namespace

MusielakFamily RunConfig::make_family() const {
  MusielakFamily f;
  switch (family_kind) {
    case FamilyKind::Power:
      f = MusielakFamily::power(p_field, domain.dim);
      break;
    case FamilyKind::PowerOverLog:
      f = MusielakFamily::power_over_log(p_field, domain.dim);
      break;
    case FamilyKind::PowerTimesLog:
      f = MusielakFamily::power_times_log(p_field, alpha, domain.dim);
      break;
    case FamilyKind::Custom:
      throw validation_error("custom families are not configurable from files");
  }
  f.set_declared_bounds(phi_minus, phi_plus);
  return f;
}

ReactionFamily RunConfig::make_reaction() const {
  return ReactionFamily::make(reaction_kind, q_field, c1, c2, domain.dim,
                              domain.omega_lo, domain.omega_hi);
}

ProblemSpec RunConfig::make_problem() const {
  return ProblemSpec::make(s, lambda, make_family(), beta, make_reaction(), domain);
}

std::string RunConfig::canonical_json() const {
  json j;
  j["domain"]["dimension"] = domain.dim;
  if (domain.dim == 1) {
    j["domain"]["omega"] = {domain.omega_lo[0], domain.omega_hi[0]};
  } else {
    j["domain"]["omega"] = {{domain.omega_lo[0], domain.omega_hi[0]},
                            {domain.omega_lo[1], domain.omega_hi[1]}};
  }
  j["domain"]["h"] = domain.h;
  j["domain"]["collar_width"] = domain.collar_width;

  j["family"]["kind"] = family_kind_name(family_kind);
  j["family"]["p"] = field_to_json(p_field);
  j["family"]["alpha"] = alpha;
  j["family"]["phi_minus"] = phi_minus;
  j["family"]["phi_plus"] = phi_plus;

  j["reaction"]["kind"] = reaction_kind_name(reaction_kind);
  j["reaction"]["q"] = field_to_json(q_field);
  j["reaction"]["c1"] = c1;
  j["reaction"]["c2"] = c2;

  j["beta"] = field_to_json(beta);
  j["s"] = s;
  j["lambda"] = lambda;
  j["seed"] = seed;

  j["solver"]["mode"] = solver.mode;
  j["solver"]["rho"] = solver.rho;
  j["solver"]["tol_grad"] = solver.tol_grad;
  j["solver"]["max_iter"] = solver.max_iter;
  j["solver"]["t0"] = solver.t0;
  j["solver"]["multistart_random"] = solver.multistart_random;
  j["solver"]["lux_tol"] = solver.lux_tol;

  j["verify"]["n_samples"] = verify.n_samples;
  j["verify"]["tol"] = verify.tol;
  j["verify"]["n_green"] = verify.n_green;
  j["verify"]["n_gradcheck"] = verify.n_gradcheck;
  j["verify"]["fd_step"] = verify.fd_step;
  j["verify"]["t_min"] = verify.t_min;
  j["verify"]["t_max"] = verify.t_max;
  j["verify"]["n_t"] = verify.n_t;
  j["verify"]["n_xy"] = verify.n_xy;
  j["verify"]["n_sphere"] = verify.n_sphere;

  j["sweep"]["lambdas"] = sweep_lambdas;
  return j.dump(2) + "\n";
}

RunConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw io_error(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw io_error("config must be a JSON object");

  RunConfig cfg;
  cfg.domain.omega_lo = make_point(0.0);
  cfg.domain.omega_hi = make_point(1.0);

  try {
    if (j.contains("domain")) {
      const auto& d = j.at("domain");
      const auto& om = d.at("omega");
      if (!om.is_array() || om.empty()) fail("domain.omega must be an array");
      if (om[0].is_array()) {
        if (om.size() > 2) fail("domain.omega supports at most 2 axes");
        cfg.domain.dim = static_cast<int>(om.size());
        for (std::size_t k = 0; k < om.size(); ++k) {
          cfg.domain.omega_lo[static_cast<int>(k)] = need_finite(om[k].at(0), "omega lo");
          cfg.domain.omega_hi[static_cast<int>(k)] = need_finite(om[k].at(1), "omega hi");
        }
      } else {
        if (om.size() != 2) fail("1D domain.omega must be [lo, hi]");
        cfg.domain.dim = 1;
        cfg.domain.omega_lo = make_point(need_finite(om[0], "omega lo"));
        cfg.domain.omega_hi = make_point(need_finite(om[1], "omega hi"));
      }
      if (d.contains("dimension") && d.at("dimension").get<int>() != cfg.domain.dim)
        fail("domain.dimension does not match the shape of domain.omega");
      cfg.domain.h = d.value("h", cfg.domain.h);
      cfg.domain.collar_width = d.value("collar_width", cfg.domain.collar_width);
      for (int k = 0; k < cfg.domain.dim; ++k)
        if (!(cfg.domain.omega_hi[k] > cfg.domain.omega_lo[k]))
          fail("domain.omega must have positive side lengths");
      if (!(cfg.domain.h > 0.0)) fail("domain.h must be positive");
      if (!(cfg.domain.collar_width >= cfg.domain.h))
        fail("domain.collar_width must be at least h");
    }

    bool phi_bounds_given = false;
    if (j.contains("family")) {
      const auto& f = j.at("family");
      cfg.family_kind = parse_family_kind(f.value("kind", "power"));
      if (f.contains("p")) cfg.p_field = parse_field(f.at("p"), "family.p");
      cfg.alpha = f.value("alpha", 0.0);
      if (cfg.alpha < 0.0) fail("family.alpha must be nonnegative");
      if (f.contains("phi_minus") != f.contains("phi_plus"))
        fail("family.phi_minus and family.phi_plus must be given together");
      if (f.contains("phi_minus")) {
        phi_bounds_given = true;
        cfg.phi_minus = need_finite(f.at("phi_minus"), "family.phi_minus");
        cfg.phi_plus = need_finite(f.at("phi_plus"), "family.phi_plus");
      }
    }
    const double p_lo =
        cfg.p_field.min_on_box(cfg.domain.omega_lo, cfg.domain.omega_hi, cfg.domain.dim);
    const double p_hi =
        cfg.p_field.max_on_box(cfg.domain.omega_lo, cfg.domain.omega_hi, cfg.domain.dim);
    if (!(p_lo >= 2.0)) fail("family.p must satisfy p >= 2 on the closed domain");
    if (!phi_bounds_given) {
      switch (cfg.family_kind) {
        case FamilyKind::Power:
          cfg.phi_minus = p_lo;
          cfg.phi_plus = p_hi;
          break;
        case FamilyKind::PowerOverLog:
          cfg.phi_minus = p_lo - 1.0;
          cfg.phi_plus = p_hi;
          break;
        case FamilyKind::PowerTimesLog:
          cfg.phi_minus = p_lo;
          cfg.phi_plus = p_hi + 1.0;
          break;
        case FamilyKind::Custom:
          break;
      }
    }
    if (!(cfg.phi_minus > 1.0) || !(cfg.phi_plus >= cfg.phi_minus))
      fail("1 < phi_minus <= phi_plus violated");

    bool growth_given = false;
    if (j.contains("reaction")) {
      const auto& r = j.at("reaction");
      cfg.reaction_kind = parse_reaction_kind(r.value("kind", "pure_power"));
      if (r.contains("q")) cfg.q_field = parse_field(r.at("q"), "reaction.q");
      if (r.contains("c1") != r.contains("c2"))
        fail("reaction.c1 and reaction.c2 must be given together");
      if (r.contains("c1")) {
        growth_given = true;
        cfg.c1 = need_finite(r.at("c1"), "reaction.c1");
        cfg.c2 = need_finite(r.at("c2"), "reaction.c2");
      }
    }
    const double q_hi =
        cfg.q_field.max_on_box(cfg.domain.omega_lo, cfg.domain.omega_hi, cfg.domain.dim);
    if (!growth_given) {
      const auto [d1, d2] = default_growth_constants(cfg.reaction_kind, q_hi);
      cfg.c1 = d1;
      cfg.c2 = d2;
    }
    if (!(cfg.c1 > 0.0 && cfg.c2 > 0.0)) fail("reaction growth constants must be positive");

    if (j.contains("beta")) cfg.beta = parse_field(j.at("beta"), "beta");

    cfg.s = j.value("s", cfg.s);
    if (!(cfg.s > 0.0 && cfg.s < 1.0)) fail("s in (0,1) violated");
    cfg.lambda = j.value("lambda", cfg.lambda);
    if (!(cfg.lambda >= 0.0)) fail("lambda must be nonnegative");
    cfg.seed = j.value("seed", cfg.seed);

    if (j.contains("solver")) {
      const auto& sv = j.at("solver");
      cfg.solver.mode = sv.value("mode", cfg.solver.mode);
      if (cfg.solver.mode != "auto" && cfg.solver.mode != "ball" &&
          cfg.solver.mode != "global")
        fail("solver.mode must be auto, ball, or global");
      cfg.solver.rho = sv.value("rho", cfg.solver.rho);
      if (!(cfg.solver.rho > 0.0 && cfg.solver.rho < 1.0))
        fail("solver.rho in (0,1) violated");
      cfg.solver.tol_grad = sv.value("tol_grad", cfg.solver.tol_grad);
      if (!(cfg.solver.tol_grad > 0.0)) fail("solver.tol_grad must be positive");
      cfg.solver.max_iter = sv.value("max_iter", cfg.solver.max_iter);
      if (cfg.solver.max_iter < 1) fail("solver.max_iter must be positive");
      cfg.solver.t0 = sv.value("t0", cfg.solver.t0);
      if (!(cfg.solver.t0 > 1.0)) fail("solver.t0 must exceed 1");
      cfg.solver.multistart_random = sv.value("multistart_random", cfg.solver.multistart_random);
      if (cfg.solver.multistart_random < 0) fail("solver.multistart_random must be >= 0");
      cfg.solver.lux_tol = sv.value("lux_tol", cfg.solver.lux_tol);
      if (!(cfg.solver.lux_tol > 0.0)) fail("solver.lux_tol must be positive");
    }

    if (j.contains("verify")) {
      const auto& v = j.at("verify");
      cfg.verify.n_samples = v.value("n_samples", cfg.verify.n_samples);
      cfg.verify.tol = v.value("tol", cfg.verify.tol);
      cfg.verify.n_green = v.value("n_green", cfg.verify.n_green);
      cfg.verify.n_gradcheck = v.value("n_gradcheck", cfg.verify.n_gradcheck);
      cfg.verify.fd_step = v.value("fd_step", cfg.verify.fd_step);
      cfg.verify.t_min = v.value("t_min", cfg.verify.t_min);
      cfg.verify.t_max = v.value("t_max", cfg.verify.t_max);
      cfg.verify.n_t = v.value("n_t", cfg.verify.n_t);
      cfg.verify.n_xy = v.value("n_xy", cfg.verify.n_xy);
      cfg.verify.n_sphere = v.value("n_sphere", cfg.verify.n_sphere);
      if (cfg.verify.n_samples < 1 || cfg.verify.n_green < 1 ||
          cfg.verify.n_gradcheck < 1 || cfg.verify.n_t < 2 || cfg.verify.n_xy < 2 ||
          cfg.verify.n_sphere < 1)
        fail("verify sample counts must be positive");
      if (!(cfg.verify.tol > 0.0) || !(cfg.verify.fd_step > 0.0) ||
          !(cfg.verify.t_min > 0.0) || !(cfg.verify.t_max > cfg.verify.t_min))
        fail("verify tolerances and grids must be positive and ordered");
    }

    if (j.contains("sweep")) {
      const auto& sw = j.at("sweep");
      if (sw.contains("lambdas")) {
        if (!sw.at("lambdas").is_array()) fail("sweep.lambdas must be an array");
        for (const auto& l : sw.at("lambdas")) {
          const double lv = need_finite(l, "sweep.lambdas");
          if (lv < 0.0) fail("sweep.lambdas must be nonnegative");
          cfg.sweep_lambdas.push_back(lv);
        }
      }
    }

    // Cross-field checks that do not need the mesh.
    if (!(q_hi < cfg.phi_minus)) {
      std::ostringstream os;
      os << "q_plus < phi_minus violated (q_plus = " << q_hi
         << ", phi_minus = " << cfg.phi_minus << ")";
      fail(os.str());
    }
    const double min_side =
        cfg.domain.dim == 1
            ? cfg.domain.omega_hi[0] - cfg.domain.omega_lo[0]
            : std::min(cfg.domain.omega_hi[0] - cfg.domain.omega_lo[0],
                       cfg.domain.omega_hi[1] - cfg.domain.omega_lo[1]);
    if (!(cfg.domain.h < min_side)) fail("h < min side length of Omega violated");
    for (int k = 0; k < cfg.domain.dim; ++k) {
      const double ratio = (cfg.domain.omega_hi[k] - cfg.domain.omega_lo[k]) / cfg.domain.h;
      if (std::fabs(ratio - std::lround(ratio)) > 1e-9 * std::max(1.0, ratio))
        fail("Omega side length is not an integer multiple of h (incommensurate mesh)");
    }
  } catch (const json::exception& e) {
    throw io_error(std::string("config structure error: ") + e.what());
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

}  // namespace muso
