#include "muso/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muso/errors.hpp"
#include "muso/operators.hpp"
#include "muso/space.hpp"
#include "assembly.hpp"

namespace muso {

double energy_I1(const DiscreteFunction& u, const ProblemSpec& prob) {
  return 0.5 * modular_pair_scaled(u, prob, 1.0) +
         modular_mass_omega_scaled(u, prob, 1.0) +
         modular_mass_collar_scaled(u, prob, 1.0);
}

double energy_I2(const DiscreteFunction& u, const ProblemSpec& prob) {
  require_same_mesh(u, prob.m());
  const Mesh& m = prob.m();
  const auto& cq = *prob.cell_q;
  double acc = 0.0;
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    if (m.cells[c].region != Region::Omega) continue;
    const double ub = m.cell_value(u.v, static_cast<int>(c));
    acc += m.cells[c].measure * ReactionFamily::F_q(prob.reaction.kind(), cq[c], ub);
  }
  return acc;
}

double energy_J(const DiscreteFunction& u, const ProblemSpec& prob) {
  return energy_I1(u, prob) - prob.lambda * energy_I2(u, prob);
}

std::vector<double> gradient_J(const DiscreteFunction& u, const ProblemSpec& prob) {
  require_same_mesh(u, prob.m());
  const Mesh& m = prob.m();
  const auto ub = detail::cell_values(u, m);
  const int ncorner = m.corners_per_cell();
  const double wt = 1.0 / ncorner;  // cell-center interpolation weight
  const auto& phat = *prob.cell_phat;
  const auto& cbeta = *prob.cell_beta;
  const auto& cq = *prob.cell_q;

  std::vector<double> g(u.v.size(), 0.0);

  detail::for_pairs(prob, [&](std::size_t, const PairQuadrature::Pair& pr, double p,
                              const Point& xi, const Point& xj) {
    const double dsu = (ub[pr.i] - ub[pr.j]) * pr.inv_ds;
    const double coef = pr.w * pr.inv_ds * prob.family.phi_p(p, xi, xj, dsu) * wt;
    const auto ci = m.cell_corners(pr.i);
    const auto cj = m.cell_corners(pr.j);
    for (int k = 0; k < ncorner; ++k) {
      g[ci[k]] += coef;
      g[cj[k]] -= coef;
    }
  });

  detail::for_self(prob, [&](int, const std::array<int, 4>& corners,
                             const PairQuadrature::SelfSub& ss, double p,
                             const Point& xa, const Point& xb) {
    const double du = detail::self_delta(u.v, corners, ss, ncorner);
    const double coef = ss.w * ss.inv_ds * prob.family.phi_p(p, xa, xb, du * ss.inv_ds);
    for (int k = 0; k < ncorner; ++k) g[corners[k]] += coef * ss.dcoef[k];
  });

  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    const Cell& cell = m.cells[c];
    double coef = prob.family.phi_p(phat[c], cell.center, cell.center, ub[c]);
    if (cell.region == Region::Collar) {
      coef *= cbeta[c];
    } else {
      coef -= prob.lambda * ReactionFamily::f_q(prob.reaction.kind(), cq[c], ub[c]);
    }
    coef *= cell.measure * wt;
    const auto corners = m.cell_corners(static_cast<int>(c));
    for (int k = 0; k < ncorner; ++k) g[corners[k]] += coef;
  }
  return g;
}

double grad_norm2(const std::vector<double>& g) {
  double acc = 0.0;
  for (double x : g) acc += x * x;
  return std::sqrt(acc);
}

DiscreteFunction make_theta(const Mesh& mesh) {
  const DomainSpec& d = mesh.spec;
  Point center{};
  double min_side = std::numeric_limits<double>::infinity();
  for (int k = 0; k < mesh.dim; ++k) {
    center[k] = 0.5 * (d.omega_lo[k] + d.omega_hi[k]);
    min_side = std::min(min_side, d.omega_hi[k] - d.omega_lo[k]);
  }
  const double r_in = min_side / 8.0;
  const ScalarField bump = ScalarField::bump(center, r_in, 2.0 * r_in, 0.0, 1.0);
  const int dim = mesh.dim;
  return DiscreteFunction::from_fn(mesh, [&](const Point& x) { return bump(x, dim); });
}

void validate_theta(const DiscreteFunction& theta, const Mesh& mesh) {
  require_same_mesh(theta, mesh);
  const int ncol = mesh.ncol;
  for (std::size_t k = 0; k < mesh.nodes.size(); ++k) {
    const double v = theta.v[k];
    if (!(v >= 0.0 && v <= 1.0))
      throw invalid_input_error("theta must take values in [0, 1]");
    const int ix = static_cast<int>(k) % mesh.nnode[0];
    const int iy = static_cast<int>(k) / mesh.nnode[0];
    bool strictly_inside = ix > ncol && ix < ncol + mesh.nomega[0];
    if (mesh.dim == 2)
      strictly_inside = strictly_inside && iy > ncol && iy < ncol + mesh.nomega[1];
    if (!strictly_inside && v != 0.0)
      throw invalid_input_error("theta must vanish on and outside the boundary of Omega");
  }
}

namespace {

struct DescentOutcome {
  DiscreteFunction u;
  double J = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool stagnated = false;
};

// Keep the iterate inside the modular-norm ball of radius rho. The ball test
// costs one modular evaluation (rho_s(u / rho) <= 1); the rescale factor
// needs the norm itself.
bool inside_ball(const DiscreteFunction& u, const ProblemSpec& prob, double rho) {
  return modular_rho_s_scaled(u, prob, 1.0 / rho) <= 1.0;
}

void project_ball(DiscreteFunction& u, const ProblemSpec& prob, double rho,
                  double lux_tol) {
  if (inside_ball(u, prob, rho)) return;
  const double nrm = modular_norm(u, prob, lux_tol);
  if (nrm > 0.0) u.scale(rho * (1.0 - 1e-12) / nrm);
}

DescentOutcome descend(const ProblemSpec& prob, DiscreteFunction u,
                       const MinimizeOptions& opts, Rng& rng) {
  const bool ball = opts.mode == SolveMode::Ball;
  if (ball) project_ball(u, prob, opts.rho, opts.lux_tol);

  DescentOutcome out;
  double J = energy_J(u, prob);
  std::vector<double> g = gradient_J(u, prob);
  double gn = grad_norm2(g);

  std::vector<double> prev_u, prev_g;
  double alpha_fallback = 1.0;
  int it = 0;
  for (; it < opts.max_iter && gn > opts.tol_grad; ++it) {
    // Spectral initial step from the last accepted move, Armijo halving below.
    double alpha0 = alpha_fallback;
    if (!prev_u.empty()) {
      double ss = 0.0, sy = 0.0;
      for (std::size_t k = 0; k < u.v.size(); ++k) {
        const double sk = u.v[k] - prev_u[k];
        const double yk = g[k] - prev_g[k];
        ss += sk * sk;
        sy += sk * yk;
      }
      if (sy > 0.0 && ss > 0.0) alpha0 = std::clamp(ss / sy, 1e-14, 1e14);
    }

    bool accepted = false;
    DiscreteFunction trial = u;
    double J_trial = J;
    double alpha = alpha0;
    for (int halve = 0; halve <= 60; ++halve, alpha *= 0.5) {
      trial = u;
      trial.axpy(-alpha, DiscreteFunction{u.mesh, g});
      if (ball && !inside_ball(trial, prob, opts.rho))
        project_ball(trial, prob, opts.rho, opts.lux_tol);
      J_trial = energy_J(trial, prob);
      if (J_trial <= J - 1e-4 * alpha * gn * gn) {
        accepted = true;
        break;
      }
    }

    if (!accepted && ball) {
      // Shallow stagnation: probe a few random directions of small modular
      // norm and keep the best strict decrease.
      const double gamma = 10.0 * opts.tol_grad;
      double best_J = J;
      DiscreteFunction best = u;
      for (int dir = 0; dir < 8; ++dir) {
        DiscreteFunction xi = DiscreteFunction::random(prob.m(), rng);
        const double nx = modular_norm(xi, prob, opts.lux_tol);
        if (nx == 0.0) continue;
        xi.scale(gamma / nx);
        DiscreteFunction cand = u + xi;
        if (!inside_ball(cand, prob, opts.rho))
          project_ball(cand, prob, opts.rho, opts.lux_tol);
        const double Jc = energy_J(cand, prob);
        if (Jc < best_J) {
          best_J = Jc;
          best = cand;
        }
      }
      if (best_J < J) {
        trial = best;
        J_trial = best_J;
        accepted = true;
      }
    }

    if (!accepted) {
      out.stagnated = true;
      break;
    }

    prev_u = u.v;
    prev_g = g;
    alpha_fallback = std::max(alpha * 2.0, 1e-14);
    u = trial;
    J = J_trial;
    g = gradient_J(u, prob);
    gn = grad_norm2(g);
  }

  out.u = std::move(u);
  out.J = J;
  out.grad_norm = gn;
  out.iterations = it;
  return out;
}

}  // namespace

SolveResult minimize(const ProblemSpec& prob, const MinimizeOptions& opts) {
  if (!(opts.tol_grad > 0.0)) throw invalid_input_error("tol_grad must be positive");
  if (opts.mode == SolveMode::Ball && !(opts.rho > 0.0 && opts.rho < 1.0))
    throw invalid_input_error("Ball mode requires rho in (0, 1)");
  const Mesh& m = prob.m();
  Rng rng(opts.seed);

  std::vector<DiscreteFunction> starts;
  if (opts.init) {
    require_same_mesh(*opts.init, m);
    starts.push_back(*opts.init);
  } else {
    const DiscreteFunction theta = make_theta(m);
    if (opts.mode == SolveMode::Global)
      starts.push_back(DiscreteFunction::constant(m, opts.t0));
    for (double t : {0.01, 0.1}) {
      DiscreteFunction b = theta;
      b.scale(t);
      starts.push_back(std::move(b));
    }
    for (int r = 0; r < opts.multistart_random; ++r) {
      DiscreteFunction x = DiscreteFunction::random(m, rng);
      x.scale(0.1);
      starts.push_back(std::move(x));
    }
  }

  SolveResult best;
  bool have = false;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    DescentOutcome o = descend(prob, starts[i], opts, rng);
    if (!have || o.J < best.J) {
      have = true;
      best.u = std::move(o.u);
      best.J = o.J;
      best.grad_norm = o.grad_norm;
      best.iterations = o.iterations;
      best.stagnated = o.stagnated;
      best.start_index = static_cast<int>(i);
    }
  }
  best.starts = static_cast<int>(starts.size());
  best.mode = opts.mode;
  best.norm_u = modular_norm(best.u, prob, opts.lux_tol);
  best.classification = (best.norm_u > 10.0 * opts.tol_grad && best.J < 0.0)
                            ? Classification::Nontrivial
                            : Classification::Trivial;
  const auto res = identity_residuals(best.u, best.u, prob);
  best.neumann_residual_max = res.r3_max;
  best.neumann_residual_scale = res.r3_scale;
  best.regime_warning = opts.mode == SolveMode::Ball && opts.lambda_star >= 0.0 &&
                        prob.lambda >= opts.lambda_star;
  return best;
}

ConstantsEstimate estimate_constants(const ProblemSpec& prob, double rho,
                                     int n_samples, double t0, std::uint64_t seed,
                                     double lux_tol) {
  if (!(rho > 0.0 && rho < 1.0)) throw invalid_input_error("rho must lie in (0, 1)");
  if (!(t0 > 1.0)) throw invalid_input_error("t0 must exceed 1");
  const Mesh& m = prob.m();
  Rng rng(seed);

  ConstantsEstimate est;

  auto ratio_of = [&](const DiscreteFunction& u) {
    const double nq = variable_exponent_norm(u, prob, lux_tol);
    if (nq == 0.0) return 0.0;
    const double nu = modular_norm(u, prob, lux_tol);
    return nu > 0.0 ? nq / nu : 0.0;
  };

  // Random fields, the constant function, the plateau bump, and every nodal
  // basis function; the max over probes is a certified lower bound.
  for (int i = 0; i < n_samples; ++i)
    est.c_emb = std::max(est.c_emb, ratio_of(DiscreteFunction::random(m, rng)));
  est.c_emb = std::max(est.c_emb, ratio_of(DiscreteFunction::constant(m, 1.0)));
  est.c_emb = std::max(est.c_emb, ratio_of(make_theta(m)));
  for (std::size_t k = 0; k < m.nodes.size(); ++k) {
    DiscreteFunction e = DiscreteFunction::zeros(m);
    e.v[k] = 1.0;
    est.c_emb = std::max(est.c_emb, ratio_of(e));
  }

  // Sphere threshold: smaller of the two admissible reaction exponents.
  const double pp = prob.family.phi_plus();
  est.lambda_star = std::numeric_limits<double>::infinity();
  for (double q : {prob.q_minus, prob.q_plus}) {
    const double cand =
        std::pow(rho, pp - q) / (2.0 * prob.reaction.c2() * std::pow(est.c_emb, q));
    if (cand < est.lambda_star) {
      est.lambda_star = cand;
      est.q_exp = q;
    }
  }

  // Constant-probe threshold. The probe u0 = t0 on Omega and collar has zero
  // pair part, so L = I1(u0) exactly (Omega mass plus the beta-weighted
  // collar mass), and J(u0) < 0 whenever lambda > L / (c2 t0^{q-} |Omega|).
  const DiscreteFunction u0 = DiscreteFunction::constant(m, t0);
  est.L = energy_I1(u0, prob);
  est.lambda_star_upper =
      est.L / (prob.reaction.c2() * std::pow(t0, prob.q_minus) * m.omega_measure);
  return est;
}

LandscapeReport landscape_probes(const ProblemSpec& prob, double rho, int n_sphere,
                                 const DiscreteFunction& theta,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& k_grid,
                                 std::uint64_t seed, double lux_tol) {
  if (!(rho > 0.0 && rho < 1.0)) throw invalid_input_error("rho must lie in (0, 1)");
  validate_theta(theta, prob.m());
  const Mesh& m = prob.m();
  Rng rng(seed);

  LandscapeReport rep;

  rep.sphere_min_J = std::numeric_limits<double>::infinity();
  rep.sphere_samples = 0;
  for (int i = 0; i < n_sphere; ++i) {
    DiscreteFunction u = DiscreteFunction::random(m, rng);
    const double nrm = modular_norm(u, prob, lux_tol);
    if (nrm == 0.0) continue;
    u.scale(rho / nrm);
    rep.sphere_min_J = std::min(rep.sphere_min_J, energy_J(u, prob));
    ++rep.sphere_samples;
  }

  rep.small_t_min_J = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    DiscreteFunction b = theta;
    b.scale(t);
    const double J = energy_J(b, prob);
    rep.small_t.emplace_back(t, J);
    if (J < rep.small_t_min_J) {
      rep.small_t_min_J = J;
      rep.small_t_argmin = t;
    }
  }

  DiscreteFunction u = DiscreteFunction::random(m, rng);
  const double nrm = modular_norm(u, prob, lux_tol);
  if (nrm > 0.0) u.scale(1.0 / nrm);
  double prev = 0.0;
  bool first = true;
  rep.coercive_tail = true;
  for (double k : k_grid) {
    DiscreteFunction ku = u;
    ku.scale(k);
    const double J = energy_J(ku, prob);
    rep.coercivity.emplace_back(k, J);
    if (!first && k >= k_grid.back() / 4.0) {
      rep.last_doubling_ratio = prev != 0.0 ? J / prev : 0.0;
      if (J <= prev) rep.coercive_tail = false;
    }
    prev = J;
    first = false;
  }
  return rep;
}

std::vector<SweepRow> sweep_lambda(const ProblemSpec& base,
                                   const std::vector<double>& lambdas,
                                   const SweepOptions& opts) {
  std::vector<SweepRow> rows;
  if (lambdas.empty()) return rows;

  const ConstantsEstimate est = estimate_constants(
      base, opts.solver.rho, 64, opts.solver.t0, opts.solver.seed, opts.solver.lux_tol);
  const DiscreteFunction theta = make_theta(base.m());
  const auto t_grid = log_grid(1e-4, 1.0, 17);

  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    SweepRow row;
    row.lambda = lambdas[i];
    row.seed = opts.solver.seed + i;
    const ProblemSpec prob = base.with_lambda(lambdas[i]);

    MinimizeOptions mo = opts.solver;
    mo.seed = row.seed;
    mo.lambda_star = est.lambda_star;
    mo.mode = lambdas[i] < est.lambda_star ? SolveMode::Ball : SolveMode::Global;
    row.mode = mo.mode;
    row.result = minimize(prob, mo);

    LandscapeReport probes =
        landscape_probes(prob, opts.solver.rho, opts.n_sphere, theta, t_grid,
                         {1.0}, row.seed, opts.solver.lux_tol);
    row.sphere_min = probes.sphere_min_J;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace muso
