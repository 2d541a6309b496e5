#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "muso/function.hpp"
#include "muso/problem.hpp"

namespace muso {

/// Energy of the discrete problem:
///   J(u) = sum_pairs w Phi(|D_s u|)            (unordered sum = symmetrized
///                                               1/2 of the ordered integral)
///        + sum_Omega |c| hat_Phi(|u|) + sum_Collar |c| beta hat_Phi(|u|)
///        - lambda sum_Omega |c| F(x, u).
double energy_J(const DiscreteFunction& u, const ProblemSpec& prob);

/// Convex core and reaction integral; J = I1 - lambda I2.
double energy_I1(const DiscreteFunction& u, const ProblemSpec& prob);
double energy_I2(const DiscreteFunction& u, const ProblemSpec& prob);

/// Nodal gradient, component k = directional derivative of J along the k-th
/// nodal basis function. Identical quadrature as energy_J, so central finite
/// differences of the energy reproduce it.
std::vector<double> gradient_J(const DiscreteFunction& u, const ProblemSpec& prob);

double grad_norm2(const std::vector<double>& g);

enum class SolveMode { Ball, Global };
enum class Classification { Trivial, Nontrivial };

struct SolveResult {
  DiscreteFunction u;
  double J = 0.0;
  double grad_norm = 0.0;
  double norm_u = 0.0;
  SolveMode mode = SolveMode::Global;
  Classification classification = Classification::Trivial;
  int iterations = 0;
  double neumann_residual_max = 0.0;
  double neumann_residual_scale = 0.0;
  bool stagnated = false;
  bool regime_warning = false;  // Ball mode run at lambda >= lambda_star
  int start_index = 0;          // which start produced the winner
  int starts = 1;
};

struct MinimizeOptions {
  SolveMode mode = SolveMode::Global;
  double rho = 0.5;             // ball radius (Ball mode)
  double tol_grad = 1e-8;
  int max_iter = 100000;
  double t0 = 2.0;              // constant probe height (Global mode)
  std::uint64_t seed = 0;
  double lux_tol = 1e-9;        // norm bisection tolerance
  std::optional<DiscreteFunction> init;  // single start when set
  int multistart_random = 4;
  double lambda_star = -1.0;    // enables the Ball regime warning when >= 0
};

/// Backtracking gradient descent (Armijo, slope 1e-4, halving; spectral
/// initial step). Ball mode keeps iterates inside the modular-norm ball of
/// radius rho by radial rescaling and escapes shallow stagnation with small
/// random perturbations accepted only on strict decrease. Global mode runs a
/// fixed multi-start set {constant probe, small random fields, small bumps}
/// and returns the lowest energy. Every accepted iteration strictly
/// decreases J.
SolveResult minimize(const ProblemSpec& prob, const MinimizeOptions& opts);

struct ConstantsEstimate {
  double c_emb = 0.0;            // empirical lower bound for ||u||_q <= c ||u||
  double lambda_star = 0.0;      // sphere threshold from the ball radius rho
  double lambda_star_upper = 0.0;// constant-probe threshold
  double L = 0.0;                // I1 of the constant probe of height t0
  double q_exp = 0.0;            // exponent chosen in the lambda_star formula
};

ConstantsEstimate estimate_constants(const ProblemSpec& prob, double rho,
                                     int n_samples, double t0, std::uint64_t seed,
                                     double lux_tol = 1e-9);

/// Plateau bump: 1 on the inner ball, 0 outside the outer ball, centered at
/// the domain center with r_outer = min_side / 4. Supported strictly inside
/// Omega.
DiscreteFunction make_theta(const Mesh& mesh);

/// Throws invalid_input_error unless 0 <= theta <= 1 and theta vanishes on
/// and outside the boundary of Omega.
void validate_theta(const DiscreteFunction& theta, const Mesh& mesh);

struct LandscapeReport {
  double sphere_min_J = 0.0;      // min J over random directions with norm rho
  int sphere_samples = 0;
  std::vector<std::pair<double, double>> small_t;  // (t, J(t theta))
  double small_t_min_J = 0.0;
  double small_t_argmin = 0.0;
  std::vector<std::pair<double, double>> coercivity;  // (k, J(k u))
  double last_doubling_ratio = 0.0;  // J(k_max u) / J(k_max u / 2)
  bool coercive_tail = false;        // J increasing over the last doublings
};

LandscapeReport landscape_probes(const ProblemSpec& prob, double rho, int n_sphere,
                                 const DiscreteFunction& theta,
                                 const std::vector<double>& t_grid,
                                 const std::vector<double>& k_grid,
                                 std::uint64_t seed, double lux_tol = 1e-9);

struct SweepRow {
  double lambda = 0.0;
  SolveMode mode = SolveMode::Global;
  SolveResult result;
  double sphere_min = 0.0;
  std::uint64_t seed = 0;
};

struct SweepOptions {
  MinimizeOptions solver;
  int n_sphere = 200;
};

/// One solve per lambda: Ball mode below the estimated sphere threshold,
/// Global otherwise; each row carries its sphere-probe minimum.
std::vector<SweepRow> sweep_lambda(const ProblemSpec& base,
                                   const std::vector<double>& lambdas,
                                   const SweepOptions& opts);

}  // namespace muso
