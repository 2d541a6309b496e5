#include "muso/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muso/errors.hpp"
#include "assembly.hpp"

namespace muso {

double modular_pair_scaled(const DiscreteFunction& u, const ProblemSpec& prob,
                           double inv_lambda, bool omega_only) {
  require_same_mesh(u, prob.m());
  const Mesh& m = prob.m();
  const auto ub = detail::cell_values(u, m);
  const MusielakFamily& fam = prob.family;
  const int ncorner = m.corners_per_cell();

  double acc = 0.0;
  detail::for_pairs(prob, [&](std::size_t, const PairQuadrature::Pair& pr, double p,
                              const Point& xi, const Point& xj) {
    if (omega_only && (m.cells[pr.i].region == Region::Collar ||
                       m.cells[pr.j].region == Region::Collar))
      return;
    const double t = std::fabs(ub[pr.i] - ub[pr.j]) * pr.inv_ds * inv_lambda;
    acc += pr.w * fam.Phi_p(p, xi, xj, t);
  });
  detail::for_self(prob, [&](int, const std::array<int, 4>& corners,
                             const PairQuadrature::SelfSub& ss, double p,
                             const Point& xa, const Point& xb) {
    const double du = detail::self_delta(u.v, corners, ss, ncorner);
    acc += ss.w * fam.Phi_p(p, xa, xb, std::fabs(du) * ss.inv_ds * inv_lambda);
  });
  return 2.0 * acc;  // ordered double-integral convention
}

double modular_mass_omega_scaled(const DiscreteFunction& u, const ProblemSpec& prob,
                                 double inv_lambda) {
  require_same_mesh(u, prob.m());
  const Mesh& m = prob.m();
  const auto& phat = *prob.cell_phat;
  double acc = 0.0;
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    if (m.cells[c].region != Region::Omega) continue;
    const double ub = m.cell_value(u.v, static_cast<int>(c));
    acc += m.cells[c].measure * prob.family.Phi_p(phat[c], m.cells[c].center,
                                                  m.cells[c].center,
                                                  std::fabs(ub) * inv_lambda);
  }
  return acc;
}

double modular_mass_collar_scaled(const DiscreteFunction& u, const ProblemSpec& prob,
                                  double inv_lambda) {
  require_same_mesh(u, prob.m());
  const Mesh& m = prob.m();
  const auto& phat = *prob.cell_phat;
  const auto& cb = *prob.cell_beta;
  double acc = 0.0;
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    if (m.cells[c].region != Region::Collar) continue;
    const double ub = m.cell_value(u.v, static_cast<int>(c));
    acc += m.cells[c].measure * cb[c] *
           prob.family.Phi_p(phat[c], m.cells[c].center, m.cells[c].center,
                             std::fabs(ub) * inv_lambda);
  }
  return acc;
}

double modular_rho_s_scaled(const DiscreteFunction& u, const ProblemSpec& prob,
                            double inv_lambda) {
  return modular_pair_scaled(u, prob, inv_lambda) +
         modular_mass_omega_scaled(u, prob, inv_lambda) +
         modular_mass_collar_scaled(u, prob, inv_lambda);
}

double modular_rho_s(const DiscreteFunction& u, const ProblemSpec& prob) {
  return modular_rho_s_scaled(u, prob, 1.0);
}

double modular_psi(const DiscreteFunction& u, const ProblemSpec& prob) {
  return modular_pair_scaled(u, prob, 1.0, /*omega_only=*/true) +
         modular_mass_omega_scaled(u, prob, 1.0);
}

double modular_variable_exponent_scaled(const DiscreteFunction& u,
                                        const ProblemSpec& prob, double inv_lambda) {
  require_same_mesh(u, prob.m());
  const Mesh& m = prob.m();
  const auto& cq = *prob.cell_q;
  double acc = 0.0;
  for (std::size_t c = 0; c < m.cells.size(); ++c) {
    if (m.cells[c].region != Region::Omega) continue;
    const double ub = std::fabs(m.cell_value(u.v, static_cast<int>(c))) * inv_lambda;
    acc += m.cells[c].measure * (ub == 0.0 ? 0.0 : std::pow(ub, cq[c]));
  }
  return acc;
}

double luxemburg_norm(const std::function<double(double)>& modular_at, double tol) {
  if (!(tol > 0.0)) throw invalid_input_error("luxemburg_norm requires tol > 0");

  double last_lambda = 0.0, last_value = std::numeric_limits<double>::infinity();
  auto eval = [&](double lam) {
    const double v = modular_at(lam);
    if (!(v >= 0.0)) throw consistency_error("modular returned a negative value");
    // The map must be nonincreasing in lambda.
    if (lam > last_lambda && v > last_value * (1.0 + 1e-9) + 1e-12)
      throw consistency_error("modular increased with lambda");
    last_lambda = lam;
    last_value = v;
    return v;
  };

  double lo, hi;
  if (eval(1.0) > 1.0) {
    lo = 1.0;
    hi = 2.0;
    int guard = 0;
    while (eval(hi) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 4000) throw consistency_error("luxemburg bracket failed to grow");
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (true) {
      last_lambda = 0.0;  // moving downward; reset the monotonicity anchor
      last_value = std::numeric_limits<double>::infinity();
      if (lo < 1e-300) return 0.0;  // zero function
      if (eval(lo) > 1.0) break;
      hi = lo;
      lo *= 0.5;
    }
  }
  // invariant: modular(lo) > 1 >= modular(hi)
  for (int it = 0; it < 400 && hi - lo > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    last_lambda = 0.0;
    last_value = std::numeric_limits<double>::infinity();
    (eval(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double modular_norm(const DiscreteFunction& u, const ProblemSpec& prob, double tol) {
  return luxemburg_norm(
      [&](double lam) { return modular_rho_s_scaled(u, prob, 1.0 / lam); }, tol);
}

double variable_exponent_norm(const DiscreteFunction& u, const ProblemSpec& prob,
                              double tol) {
  return luxemburg_norm(
      [&](double lam) { return modular_variable_exponent_scaled(u, prob, 1.0 / lam); },
      tol);
}

NormReport norms(const DiscreteFunction& u, const ProblemSpec& prob, double tol) {
  NormReport r;
  r.seminorm = luxemburg_norm(
      [&](double lam) { return modular_pair_scaled(u, prob, 1.0 / lam); }, tol);
  r.lux_omega = luxemburg_norm(
      [&](double lam) { return modular_mass_omega_scaled(u, prob, 1.0 / lam); }, tol);
  r.lux_collar = luxemburg_norm(
      [&](double lam) { return modular_mass_collar_scaled(u, prob, 1.0 / lam); }, tol);
  r.norm_X = r.seminorm + r.lux_omega + r.lux_collar;
  r.modular_norm = modular_norm(u, prob, tol);
  r.rho = modular_rho_s(u, prob);
  return r;
}

namespace {

// Conjugate-side Luxemburg norm over Omega for the Hoelder check.
double conjugate_norm(const DiscreteFunction& u, const ProblemSpec& prob, double tol) {
  const Mesh& m = prob.m();
  auto modular = [&](double lam) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cells.size(); ++c) {
      if (m.cells[c].region != Region::Omega) continue;
      const double ub = std::fabs(m.cell_value(u.v, static_cast<int>(c))) / lam;
      acc += m.cells[c].measure *
             prob.family.Phi_bar(m.cells[c].center, m.cells[c].center, ub);
    }
    return acc;
  };
  return luxemburg_norm(modular, tol);
}

double hat_norm_omega(const DiscreteFunction& u, const ProblemSpec& prob, double tol) {
  return luxemburg_norm(
      [&](double lam) { return modular_mass_omega_scaled(u, prob, 1.0 / lam); }, tol);
}

}  // namespace

RelationSuiteReport relation_suite(const ProblemSpec& prob, int n_samples,
                                   std::uint64_t seed, double tol, double bisect_tol) {
  if (n_samples < 1) throw invalid_input_error("relation_suite requires n_samples >= 1");
  RelationSuiteReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  const Mesh& m = prob.m();
  const double pm = prob.family.phi_minus();
  const double pp = prob.family.phi_plus();

  auto record = [&](RelationSample s) {
    s.ok = s.margin >= -tol;
    if (!s.ok) ++rep.violations;
    rep.worst_margin = std::min(rep.worst_margin, s.margin);
    rep.samples.push_back(std::move(s));
  };

  // Modular/norm relations in both regimes plus the pinch at norm 1.
  for (int i = 0; i < n_samples; ++i) {
    for (double target : {2.0, 0.5}) {
      DiscreteFunction u = DiscreteFunction::random(m, rng);
      const double nrm0 = modular_norm(u, prob, bisect_tol);
      if (nrm0 == 0.0) continue;
      u.scale(target / nrm0);
      const double nrm = modular_norm(u, prob, bisect_tol);
      const double rho = modular_rho_s(u, prob);
      RelationSample s;
      s.index = i;
      s.norm = nrm;
      s.rho = rho;
      if (nrm > 1.0) {
        s.check = "norm_gt1";
        const double lo_b = std::pow(nrm, pm), hi_b = std::pow(nrm, pp);
        s.margin = std::min(rho - lo_b, hi_b - rho) / std::max(1.0, rho);
      } else {
        s.check = "norm_lt1";
        const double lo_b = std::pow(nrm, pp), hi_b = std::pow(nrm, pm);
        s.margin = std::min(rho - lo_b, hi_b - rho) / std::max(1.0, rho);
      }
      record(s);
    }
  }

  // Pinch: rescale to norm 1 exactly; the modular must sit at 1.
  for (int i = 0; i < std::max(1, n_samples / 10); ++i) {
    DiscreteFunction u = DiscreteFunction::random(m, rng);
    const double nrm0 = modular_norm(u, prob, bisect_tol);
    if (nrm0 == 0.0) continue;
    u.scale(1.0 / nrm0);
    const double rho = modular_rho_s(u, prob);
    RelationSample s;
    s.check = "pinch";
    s.index = i;
    s.norm = 1.0;
    s.rho = rho;
    s.margin = -std::fabs(rho - 1.0);
    record(s);
  }

  // Hoelder on Omega: |sum u v |c|| <= 2 ||u|| ||v||_conjugate.
  for (int i = 0; i < n_samples; ++i) {
    DiscreteFunction u = DiscreteFunction::random(m, rng);
    DiscreteFunction w = DiscreteFunction::random(m, rng);
    u.scale(rng.uniform(0.1, 10.0));
    w.scale(rng.uniform(0.1, 10.0));
    double inner = 0.0;
    for (std::size_t c = 0; c < m.cells.size(); ++c) {
      if (m.cells[c].region != Region::Omega) continue;
      inner += m.cells[c].measure * m.cell_value(u.v, static_cast<int>(c)) *
               m.cell_value(w.v, static_cast<int>(c));
    }
    const double nu = hat_norm_omega(u, prob, bisect_tol);
    const double nw = conjugate_norm(w, prob, bisect_tol);
    RelationSample s;
    s.check = "hoelder";
    s.index = i;
    s.norm = nu;
    s.rho = nw;
    s.margin = (2.0 * nu * nw - std::fabs(inner)) / std::max(1.0, 2.0 * nu * nw);
    record(s);
  }

  // Convexity inequality for the energy core I1:
  //   1/2 I1(u) + 1/2 I1(v) - I1((u+v)/2) >= I1((u-v)/2).
  auto I1 = [&](const DiscreteFunction& u) {
    return 0.5 * modular_pair_scaled(u, prob, 1.0) +
           modular_mass_omega_scaled(u, prob, 1.0) +
           modular_mass_collar_scaled(u, prob, 1.0);
  };
  for (int i = 0; i < n_samples; ++i) {
    DiscreteFunction u = DiscreteFunction::random(m, rng);
    DiscreteFunction w = DiscreteFunction::random(m, rng);
    u.scale(rng.uniform(0.1, 3.0));
    w.scale(rng.uniform(0.1, 3.0));
    DiscreteFunction mid = u + w;
    mid.scale(0.5);
    DiscreteFunction dif = u - w;
    dif.scale(0.5);
    const double lhs = 0.5 * I1(u) + 0.5 * I1(w) - I1(mid);
    const double rhs = I1(dif);
    RelationSample s;
    s.check = "convexity";
    s.index = i;
    s.margin = (lhs - rhs) / std::max(1.0, std::fabs(lhs) + std::fabs(rhs));
    record(s);
  }
  return rep;
}

}  // namespace muso
