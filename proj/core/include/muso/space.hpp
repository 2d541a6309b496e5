#pragma once

#include <functional>
#include <vector>

#include "muso/function.hpp"
#include "muso/problem.hpp"

namespace muso {

/// Modular of the nonlocal problem:
///   rho_s(u) = pair part (ordered double sum over the quadrature)
///            + sum_Omega |c| hat_Phi(|u|) + sum_Collar |c| beta hat_Phi(|u|).
/// The scaled variants evaluate the modular of u / lambda without copying,
/// via the multiplier inv_lambda = 1 / lambda.
double modular_rho_s(const DiscreteFunction& u, const ProblemSpec& prob);
double modular_rho_s_scaled(const DiscreteFunction& u, const ProblemSpec& prob,
                            double inv_lambda);

/// Pair part only (ordered convention); omega_only restricts to Omega x Omega
/// pairs, which together with the Omega mass gives the interior modular Psi.
double modular_pair_scaled(const DiscreteFunction& u, const ProblemSpec& prob,
                           double inv_lambda, bool omega_only = false);
double modular_mass_omega_scaled(const DiscreteFunction& u, const ProblemSpec& prob,
                                 double inv_lambda);
double modular_mass_collar_scaled(const DiscreteFunction& u, const ProblemSpec& prob,
                                  double inv_lambda);
double modular_psi(const DiscreteFunction& u, const ProblemSpec& prob);

/// Variable-exponent modular over Omega: sum |c| |u/lambda|^{q(x)}.
double modular_variable_exponent_scaled(const DiscreteFunction& u,
                                        const ProblemSpec& prob, double inv_lambda);

/// inf { lambda > 0 : modular_at(lambda) <= 1 } for a map that is
/// nonincreasing in lambda, by bracketing + bisection to relative tolerance
/// tol. Returns 0 for the zero function. Throws consistency_error if the
/// evaluations are observed increasing beyond roundoff.
double luxemburg_norm(const std::function<double(double)>& modular_at, double tol);

double modular_norm(const DiscreteFunction& u, const ProblemSpec& prob, double tol);
double variable_exponent_norm(const DiscreteFunction& u, const ProblemSpec& prob,
                              double tol);

struct NormReport {
  double seminorm = 0.0;     // Luxemburg norm of the pair modular
  double lux_omega = 0.0;    // Luxemburg norm of the Omega mass modular
  double lux_collar = 0.0;   // beta-weighted collar piece
  double norm_X = 0.0;       // sum of the three pieces
  double modular_norm = 0.0; // Luxemburg norm of rho_s
  double rho = 0.0;          // rho_s(u)
};

NormReport norms(const DiscreteFunction& u, const ProblemSpec& prob, double tol);

/// Randomized verification of the modular/norm relations, the Hoelder
/// inequality on Omega, and the parallelogram-type convexity inequality.
struct RelationSample {
  std::string check;  // "norm_gt1", "norm_lt1", "pinch", "hoelder", "convexity"
  int index = 0;
  double norm = 0.0;
  double rho = 0.0;
  double margin = 0.0;  // >= -tol when the relation holds
  bool ok = true;
};

struct RelationSuiteReport {
  std::vector<RelationSample> samples;
  int violations = 0;
  double worst_margin = 0.0;
};

RelationSuiteReport relation_suite(const ProblemSpec& prob, int n_samples,
                                   std::uint64_t seed, double tol, double bisect_tol);

}  // namespace muso
