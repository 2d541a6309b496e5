#pragma once

#include <functional>
#include <vector>

#include "muso/musielak.hpp"

namespace muso {

/// Per-point verdicts for the integrability conditions on
///   I(x) = integral of hat_Phi_x^{-1}(tau) / tau^{(N+s)/N}
/// near 0 (must converge) and near infinity (must diverge), plus the
/// tabulated inverse conjugate when both hold.
struct SobolevPointDiag {
  Point x;
  double exponent_near_zero = 0.0;  // fitted log-log slope of the integrand at 0
  double exponent_near_inf = 0.0;   // fitted slope at infinity
  bool converges_at_zero = false;   // condition on [0, 1]
  bool diverges_at_inf = false;     // condition on [1, inf)
  std::vector<double> table_t;          // grid where the inverse conjugate is tabulated
  std::vector<double> table_inv_conj;   // (Phi*_{x,s})^{-1}(t)
};

struct DominanceCheck {
  bool checked = false;
  bool ok = false;
  double scale_a = 1.0;       // B(x, t) <= Phi*(x, a t) tested for large t
  double threshold_t0 = 0.0;  // smallest sampled t from which dominance holds
  double worst_margin = 0.0;  // over samples past the threshold
};

struct SobolevDiagReport {
  double s = 0.0;
  int N = 1;
  std::vector<SobolevPointDiag> points;
  DominanceCheck dominance;

  bool all_converge_at_zero() const {
    for (const auto& p : points)
      if (!p.converges_at_zero) return false;
    return !points.empty();
  }
  bool all_diverge_at_inf() const {
    for (const auto& p : points)
      if (!p.diverges_at_inf) return false;
    return !points.empty();
  }
};

/// Numerical test of the integrability pair for the diagonal family, with an
/// optional dominance check of a comparison function B(x, t) against the
/// tabulated conjugate target (B is passed as a callable; the CLI feeds the
/// reaction growth |t|^{q(x)}).
SobolevDiagReport sobolev_conjugate_diag(
    const MusielakFamily& family, double s, int N, const std::vector<Point>& x_samples,
    const std::function<double(const Point&, double)>* dominance_B = nullptr,
    double dominance_scale = 1.0);

}  // namespace muso
