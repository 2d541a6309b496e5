#include "muso/driver.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "muso/csv.hpp"
#include "muso/errors.hpp"
#include "muso/operators.hpp"
#include "muso/sobolev.hpp"
#include "muso/solver.hpp"
#include "muso/space.hpp"

namespace muso {

namespace {

namespace fs = std::filesystem;

const char* region_name(Region r) { return r == Region::Omega ? "omega" : "collar"; }
const char* mode_name(SolveMode m) { return m == SolveMode::Ball ? "ball" : "global"; }
const char* class_name(Classification c) {
  return c == Classification::Nontrivial ? "nontrivial" : "trivial";
}

void write_manifest(const fs::path& dir, Command cmd, const RunConfig& cfg) {
  const std::string canonical = cfg.canonical_json();
  std::ostringstream os;
  os << "tool=muso\n"
     << "version=" << kToolVersion << "\n"
     << "command=" << command_name(cmd) << "\n"
     << "config_hash=" << std::hex << fnv1a64(canonical) << std::dec << "\n"
     << "seed=" << cfg.seed << "\n";
  write_text(dir / "manifest.txt", os.str());
  write_text(dir / "config_echo.json", canonical);
}

void write_schema_readme(const fs::path& dir) {
  write_text(dir / "README.md", R"(# Output files

All CSVs use `\n` line endings and locale-independent number formatting; a
rerun with the same config and seed reproduces every file byte for byte.

- `manifest.txt` - tool version, command, config hash, seed.
- `config_echo.json` - the fully defaulted configuration that produced the run.
- `mesh.csv` - `cell,x0,x1,measure,region`.
- `condition_report.csv` (verify-family) -
  `phi1_ok,phi2_ok,phi3_ok,delta2_ok,ratio_min,ratio_max,phi3_sup,delta2_constant,phi_minus,phi_plus,sobolev_zero_ok,sobolev_inf_ok,dominance_checked,dominance_ok`.
- `violations.csv` (verify-family) - `condition,x0,x1,y0,y1,t,quantity`.
- `sobolev_diag.csv` (verify-family) -
  `x0,x1,exponent_near_zero,exponent_near_inf,converges_at_zero,diverges_at_inf`.
- `relations.csv` (verify-space) - `check,index,norm,rho,margin,ok`.
- `norms.csv` (verify-space) -
  `index,seminorm,lux_omega,lux_collar,norm_X,modular_norm,rho`.
- `green.csv` (green-check) - `index,r1,r1_scale,r1_rel,r2,r2_scale,r2_rel`.
- `laplacian.csv`, `neumann.csv` (green-check) - `cell,x0,x1,region,value`.
- `gradcheck.csv` (gradcheck) - `draw,family,grad_norm,max_abs_err,max_rel_err`.
- `result.csv` (solve) - one row:
  `lambda,mode,J,norm_u,grad_norm,iterations,classification,neumann_residual_max,neumann_residual_scale,sphere_min,lambda_star,lambda_star_upper,c_emb,stagnated,regime_warning,seed`.
- `solution.csv` (solve) - `node,x0,x1,region,u`.
- `residuals.csv` (solve) - `cell,x0,x1,r3`.
- `sweep.csv` (sweep) -
  `lambda,mode,J,norm_u,grad_norm,sphere_min,neumann_residual_max,classification,iterations,seed`.
)");
}

void write_mesh_csv(const fs::path& dir, const Mesh& m) {
  CsvWriter w(dir / "mesh.csv", {"cell", "x0", "x1", "measure", "region"});
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    const Cell& cell = m.cells[c];
    w.row({CsvWriter::field(static_cast<int>(c)), CsvWriter::field(cell.center[0]),
           CsvWriter::field(cell.center[1]), CsvWriter::field(cell.measure),
           region_name(cell.region)});
  }
}

void write_operator_csv(const fs::path& path, const OperatorField& f) {
  CsvWriter w(path, {"cell", "x0", "x1", "region", "value"});
  for (std::size_t k = 0; k < f.cell_ids.size(); ++k) {
    const Cell& cell = f.mesh->cells[f.cell_ids[k]];
    w.row({CsvWriter::field(f.cell_ids[k]), CsvWriter::field(cell.center[0]),
           CsvWriter::field(cell.center[1]), region_name(f.region),
           CsvWriter::field(f.value[k])});
  }
}

int cmd_verify_family(const RunConfig& cfg, const fs::path& dir) {
  const MusielakFamily family = cfg.make_family();
  const auto t_grid = log_grid(cfg.verify.t_min, cfg.verify.t_max, cfg.verify.n_t);
  const ConditionReport rep =
      check_conditions(family, cfg.domain.omega_lo, cfg.domain.omega_hi,
                       cfg.verify.tol, t_grid, cfg.verify.n_xy);

  std::vector<Point> xs;
  for (int i = 0; i < 3; ++i) {
    Point p{};
    p[0] = cfg.domain.omega_lo[0] +
           (cfg.domain.omega_hi[0] - cfg.domain.omega_lo[0]) * i / 2.0;
    if (cfg.domain.dim == 2)
      p[1] = cfg.domain.omega_lo[1] +
             (cfg.domain.omega_hi[1] - cfg.domain.omega_lo[1]) * i / 2.0;
    xs.push_back(p);
  }
  const ScalarField q_field = cfg.q_field;
  const int dim = cfg.domain.dim;
  const std::function<double(const Point&, double)> growth_B =
      [&q_field, dim](const Point& x, double t) {
        return std::pow(std::fabs(t), q_field(x, dim));
      };
  const SobolevDiagReport sob =
      sobolev_conjugate_diag(family, cfg.s, cfg.domain.dim, xs, &growth_B);

  {
    CsvWriter w(dir / "condition_report.csv",
                {"phi1_ok", "phi2_ok", "phi3_ok", "delta2_ok", "ratio_min",
                 "ratio_max", "phi3_sup", "delta2_constant", "phi_minus", "phi_plus",
                 "sobolev_zero_ok", "sobolev_inf_ok", "dominance_checked",
                 "dominance_ok"});
    w.row({CsvWriter::field(static_cast<int>(rep.phi1_ok)),
           CsvWriter::field(static_cast<int>(rep.phi2_ok)),
           CsvWriter::field(static_cast<int>(rep.phi3_ok)),
           CsvWriter::field(static_cast<int>(rep.delta2_ok)),
           CsvWriter::field(rep.ratio_min), CsvWriter::field(rep.ratio_max),
           CsvWriter::field(rep.phi3_sup), CsvWriter::field(rep.delta2_constant),
           CsvWriter::field(family.phi_minus()), CsvWriter::field(family.phi_plus()),
           CsvWriter::field(static_cast<int>(sob.all_converge_at_zero())),
           CsvWriter::field(static_cast<int>(sob.all_diverge_at_inf())),
           CsvWriter::field(static_cast<int>(sob.dominance.checked)),
           CsvWriter::field(static_cast<int>(sob.dominance.ok))});
  }
  {
    CsvWriter w(dir / "violations.csv",
                {"condition", "x0", "x1", "y0", "y1", "t", "quantity"});
    for (const auto& v : rep.violations)
      w.row({v.condition, CsvWriter::field(v.x[0]), CsvWriter::field(v.x[1]),
             CsvWriter::field(v.y[0]), CsvWriter::field(v.y[1]),
             CsvWriter::field(v.t), CsvWriter::field(v.quantity)});
  }
  {
    CsvWriter w(dir / "sobolev_diag.csv",
                {"x0", "x1", "exponent_near_zero", "exponent_near_inf",
                 "converges_at_zero", "diverges_at_inf"});
    for (const auto& p : sob.points)
      w.row({CsvWriter::field(p.x[0]), CsvWriter::field(p.x[1]),
             CsvWriter::field(p.exponent_near_zero),
             CsvWriter::field(p.exponent_near_inf),
             CsvWriter::field(static_cast<int>(p.converges_at_zero)),
             CsvWriter::field(static_cast<int>(p.diverges_at_inf))});
  }
  if (!rep.all_ok()) {
    std::cerr << "verify-family: structural conditions violated ("
              << rep.violations.size() << " witnesses in violations.csv)\n";
    return kExitProperty;
  }
  return kExitOk;
}

int cmd_verify_space(const RunConfig& cfg, const fs::path& dir) {
  const ProblemSpec prob = cfg.make_problem();
  write_mesh_csv(dir, prob.m());
  const RelationSuiteReport rep = relation_suite(prob, cfg.verify.n_samples, cfg.seed,
                                                 cfg.verify.tol, cfg.solver.lux_tol);
  {
    CsvWriter w(dir / "relations.csv", {"check", "index", "norm", "rho", "margin", "ok"});
    for (const auto& s : rep.samples)
      w.row({s.check, CsvWriter::field(s.index), CsvWriter::field(s.norm),
             CsvWriter::field(s.rho), CsvWriter::field(s.margin),
             CsvWriter::field(static_cast<int>(s.ok))});
  }
  {
    Rng rng(cfg.seed + 1);
    CsvWriter w(dir / "norms.csv", {"index", "seminorm", "lux_omega", "lux_collar",
                                    "norm_X", "modular_norm", "rho"});
    const int n = std::min(10, cfg.verify.n_samples);
    for (int i = 0; i < n; ++i) {
      DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
      const NormReport nr = norms(u, prob, cfg.solver.lux_tol);
      w.row({CsvWriter::field(i), CsvWriter::field(nr.seminorm),
             CsvWriter::field(nr.lux_omega), CsvWriter::field(nr.lux_collar),
             CsvWriter::field(nr.norm_X), CsvWriter::field(nr.modular_norm),
             CsvWriter::field(nr.rho)});
    }
  }
  if (rep.violations > 0) {
    std::cerr << "verify-space: " << rep.violations
              << " relation violations (worst margin " << rep.worst_margin << ")\n";
    return kExitProperty;
  }
  return kExitOk;
}

int cmd_green_check(const RunConfig& cfg, const fs::path& dir) {
  const ProblemSpec prob = cfg.make_problem();
  write_mesh_csv(dir, prob.m());
  Rng rng(cfg.seed);
  CsvWriter w(dir / "green.csv",
              {"index", "r1", "r1_scale", "r1_rel", "r2", "r2_scale", "r2_rel"});
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < cfg.verify.n_green; ++i) {
    DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
    DiscreteFunction v = DiscreteFunction::random(prob.m(), rng);
    const IdentityResiduals res = identity_residuals(u, v, prob);
    const double r1_rel = res.r1 / std::max(res.r1_scale, 1e-300);
    const double r2_rel = res.r2 / std::max(res.r2_scale, 1e-300);
    worst = std::max({worst, r1_rel, r2_rel});
    if (r1_rel > 1e-12 || r2_rel > 1e-12) ok = false;
    w.row({CsvWriter::field(i), CsvWriter::field(res.r1),
           CsvWriter::field(res.r1_scale), CsvWriter::field(r1_rel),
           CsvWriter::field(res.r2), CsvWriter::field(res.r2_scale),
           CsvWriter::field(r2_rel)});
    if (i == 0) {
      write_operator_csv(dir / "laplacian.csv", apply_fractional_laplacian(u, prob));
      write_operator_csv(dir / "neumann.csv", apply_neumann(u, prob));
    }
  }
  if (!ok) {
    std::cerr << "green-check: identity residuals exceed 1e-12 x scale (worst "
              << worst << ")\n";
    return kExitProperty;
  }
  return kExitOk;
}

int cmd_gradcheck(const RunConfig& cfg, const fs::path& dir) {
  const ProblemSpec prob = cfg.make_problem();
  write_mesh_csv(dir, prob.m());
  Rng rng(cfg.seed);
  const char* family = "";
  switch (cfg.family_kind) {
    case FamilyKind::Power: family = "power"; break;
    case FamilyKind::PowerOverLog: family = "power_over_log"; break;
    case FamilyKind::PowerTimesLog: family = "power_times_log"; break;
    case FamilyKind::Custom: family = "custom"; break;
  }
  CsvWriter w(dir / "gradcheck.csv",
              {"draw", "family", "grad_norm", "max_abs_err", "max_rel_err"});
  bool ok = true;
  for (int i = 0; i < cfg.verify.n_gradcheck; ++i) {
    DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
    u.scale(rng.uniform(0.2, 2.0));
    const auto g = gradient_J(u, prob);
    const double gn = grad_norm2(g);
    const double scale = std::max(gn, 1e-12);
    double max_abs = 0.0;
    for (std::size_t k = 0; k < u.v.size(); ++k) {
      const double step = cfg.verify.fd_step * (1.0 + std::fabs(u.v[k]));
      DiscreteFunction up = u, dn = u;
      up.v[k] += step;
      dn.v[k] -= step;
      const double fd = (energy_J(up, prob) - energy_J(dn, prob)) / (2.0 * step);
      max_abs = std::max(max_abs, std::fabs(fd - g[k]));
    }
    const double max_rel = max_abs / scale;
    if (max_rel > 1e-5) ok = false;
    w.row({CsvWriter::field(i), family, CsvWriter::field(gn),
           CsvWriter::field(max_abs), CsvWriter::field(max_rel)});
  }
  if (!ok) {
    std::cerr << "gradcheck: finite differences disagree with the gradient\n";
    return kExitProperty;
  }
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, const fs::path& dir) {
  const ProblemSpec prob = cfg.make_problem();
  write_mesh_csv(dir, prob.m());
  const ConstantsEstimate est = estimate_constants(prob, cfg.solver.rho, 64,
                                                   cfg.solver.t0, cfg.seed,
                                                   cfg.solver.lux_tol);
  MinimizeOptions mo;
  mo.rho = cfg.solver.rho;
  mo.tol_grad = cfg.solver.tol_grad;
  mo.max_iter = cfg.solver.max_iter;
  mo.t0 = cfg.solver.t0;
  mo.seed = cfg.seed;
  mo.lux_tol = cfg.solver.lux_tol;
  mo.multistart_random = cfg.solver.multistart_random;
  mo.lambda_star = est.lambda_star;
  if (cfg.solver.mode == "ball")
    mo.mode = SolveMode::Ball;
  else if (cfg.solver.mode == "global")
    mo.mode = SolveMode::Global;
  else
    mo.mode = cfg.lambda < est.lambda_star ? SolveMode::Ball : SolveMode::Global;

  const SolveResult res = minimize(prob, mo);

  const DiscreteFunction theta = make_theta(prob.m());
  const LandscapeReport probes =
      landscape_probes(prob, cfg.solver.rho, cfg.verify.n_sphere, theta,
                       log_grid(1e-4, 1.0, 17), {1, 2, 4, 8, 16, 32, 64, 128, 256},
                       cfg.seed, cfg.solver.lux_tol);

  {
    CsvWriter w(dir / "result.csv",
                {"lambda", "mode", "J", "norm_u", "grad_norm", "iterations",
                 "classification", "neumann_residual_max", "neumann_residual_scale",
                 "sphere_min", "lambda_star", "lambda_star_upper", "c_emb",
                 "stagnated", "regime_warning", "seed"});
    w.row({CsvWriter::field(prob.lambda), mode_name(res.mode),
           CsvWriter::field(res.J), CsvWriter::field(res.norm_u),
           CsvWriter::field(res.grad_norm), CsvWriter::field(res.iterations),
           class_name(res.classification),
           CsvWriter::field(res.neumann_residual_max),
           CsvWriter::field(res.neumann_residual_scale),
           CsvWriter::field(probes.sphere_min_J), CsvWriter::field(est.lambda_star),
           CsvWriter::field(est.lambda_star_upper), CsvWriter::field(est.c_emb),
           CsvWriter::field(static_cast<int>(res.stagnated)),
           CsvWriter::field(static_cast<int>(res.regime_warning)),
           CsvWriter::field(cfg.seed)});
  }
  {
    CsvWriter w(dir / "solution.csv", {"node", "x0", "x1", "region", "u"});
    const Mesh& m = prob.m();
    for (std::size_t k = 0; k < m.nodes.size(); ++k)
      w.row({CsvWriter::field(static_cast<int>(k)), CsvWriter::field(m.nodes[k].x[0]),
             CsvWriter::field(m.nodes[k].x[1]), region_name(m.nodes[k].region),
             CsvWriter::field(res.u.v[k])});
  }
  {
    const IdentityResiduals ir = identity_residuals(res.u, res.u, prob);
    CsvWriter w(dir / "residuals.csv", {"cell", "x0", "x1", "r3"});
    for (std::size_t k = 0; k < ir.r3.size(); ++k) {
      const Cell& cell = prob.m().cells[ir.r3_cell_ids[k]];
      w.row({CsvWriter::field(ir.r3_cell_ids[k]), CsvWriter::field(cell.center[0]),
             CsvWriter::field(cell.center[1]), CsvWriter::field(ir.r3[k])});
    }
  }
  if (res.regime_warning)
    std::cerr << "solve: warning: Ball mode run at lambda >= lambda_star\n";
  if (res.stagnated || res.grad_norm > cfg.solver.tol_grad) {
    std::cerr << "solve: did not reach the gradient tolerance (grad_norm = "
              << res.grad_norm << ")\n";
    return kExitProperty;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const fs::path& dir) {
  const ProblemSpec prob = cfg.make_problem();
  write_mesh_csv(dir, prob.m());
  SweepOptions so;
  so.solver.rho = cfg.solver.rho;
  so.solver.tol_grad = cfg.solver.tol_grad;
  so.solver.max_iter = cfg.solver.max_iter;
  so.solver.t0 = cfg.solver.t0;
  so.solver.seed = cfg.seed;
  so.solver.lux_tol = cfg.solver.lux_tol;
  so.solver.multistart_random = cfg.solver.multistart_random;
  so.n_sphere = cfg.verify.n_sphere;

  const auto rows = sweep_lambda(prob, cfg.sweep_lambdas, so);
  CsvWriter w(dir / "sweep.csv",
              {"lambda", "mode", "J", "norm_u", "grad_norm", "sphere_min",
               "neumann_residual_max", "classification", "iterations", "seed"});
  bool ok = true;
  for (const auto& r : rows) {
    if (r.result.stagnated || r.result.grad_norm > so.solver.tol_grad) ok = false;
    w.row({CsvWriter::field(r.lambda), mode_name(r.mode), CsvWriter::field(r.result.J),
           CsvWriter::field(r.result.norm_u), CsvWriter::field(r.result.grad_norm),
           CsvWriter::field(r.sphere_min),
           CsvWriter::field(r.result.neumann_residual_max),
           class_name(r.result.classification),
           CsvWriter::field(r.result.iterations), CsvWriter::field(r.seed)});
  }
  if (!ok) {
    std::cerr << "sweep: at least one row failed to converge\n";
    return kExitProperty;
  }
  return kExitOk;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "verify-family") return Command::VerifyFamily;
  if (name == "verify-space") return Command::VerifySpace;
  if (name == "green-check") return Command::GreenCheck;
  if (name == "gradcheck") return Command::GradCheck;
  if (name == "solve") return Command::Solve;
  if (name == "sweep") return Command::Sweep;
  throw validation_error("unknown command: " + name);
}

std::string command_name(Command cmd) {
  switch (cmd) {
    case Command::VerifyFamily: return "verify-family";
    case Command::VerifySpace: return "verify-space";
    case Command::GreenCheck: return "green-check";
    case Command::GradCheck: return "gradcheck";
    case Command::Solve: return "solve";
    case Command::Sweep: return "sweep";
  }
  return "";
}

int run_command(Command cmd, const RunConfig& cfg, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw io_error("cannot create output directory " + out_dir.string());
  write_manifest(out_dir, cmd, cfg);
  write_schema_readme(out_dir);
  switch (cmd) {
    case Command::VerifyFamily: return cmd_verify_family(cfg, out_dir);
    case Command::VerifySpace: return cmd_verify_space(cfg, out_dir);
    case Command::GreenCheck: return cmd_green_check(cfg, out_dir);
    case Command::GradCheck: return cmd_gradcheck(cfg, out_dir);
    case Command::Solve: return cmd_solve(cfg, out_dir);
    case Command::Sweep: return cmd_sweep(cfg, out_dir);
  }
  throw consistency_error("unhandled command");
}

int run_from_files(const std::string& command, const std::filesystem::path& config_path,
                   const std::filesystem::path& out_dir) noexcept {
  try {
    const Command cmd = parse_command(command);
    const RunConfig cfg = parse_config(config_path);
    return run_command(cmd, cfg, out_dir);
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace muso
