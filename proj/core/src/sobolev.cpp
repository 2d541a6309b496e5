#include "muso/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muso/errors.hpp"
#include "gauss.hpp"

namespace muso {

namespace {

// Local log-log slope of f at tau (two-point fit over one decade).
double log_slope(const std::function<double(double)>& f, double tau) {
  const double a = f(tau), b = f(tau * 10.0);
  return (std::log(b) - std::log(a)) / std::log(10.0);
}

}  // namespace

SobolevDiagReport sobolev_conjugate_diag(
    const MusielakFamily& family, double s, int N, const std::vector<Point>& x_samples,
    const std::function<double(const Point&, double)>* dominance_B,
    double dominance_scale) {
  if (!(s > 0.0 && s < 1.0)) throw invalid_input_error("s must lie in (0, 1)");
  if (N < 1) throw invalid_input_error("N must be >= 1");

  SobolevDiagReport rep;
  rep.s = s;
  rep.N = N;
  const double kexp = (static_cast<double>(N) + s) / N;
  // A fitted integrand exponent e makes the integral converge at 0 iff
  // e > -1 and diverge at infinity iff e >= -1. The margin keeps exact
  // boundary cases (s p = N) on the divergent side.
  const double margin = 1e-6;

  for (const Point& x : x_samples) {
    SobolevPointDiag d;
    d.x = x;
    auto integrand = [&](double tau) {
      return family.hat_Phi_inv(x, tau) / std::pow(tau, kexp);
    };
    d.exponent_near_zero = log_slope(integrand, 1e-12);
    d.exponent_near_inf = log_slope(integrand, 1e8);
    d.converges_at_zero = d.exponent_near_zero > -1.0 + margin;
    d.diverges_at_inf = d.exponent_near_inf >= -1.0 - margin;

    if (d.converges_at_zero && d.diverges_at_inf) {
      // Tabulate (Phi*_{x,s})^{-1}(t) = integral_0^t of the integrand. The
      // stub below 1e-8 uses the fitted power law; above it, composite Gauss
      // panels per decade in log space.
      const double tau0 = 1e-8;
      const double e0 = d.exponent_near_zero;
      double acc = integrand(tau0) * tau0 / (e0 + 1.0);
      d.table_t = log_grid(1e-4, 1e4, 33);
      double prev = tau0;
      for (double t : d.table_t) {
        acc += detail::integrate_panels(integrand, prev, t,
                                        std::max(2, static_cast<int>(4 * std::log10(t / prev) + 1)));
        prev = t;
        d.table_inv_conj.push_back(acc);
      }
    }
    rep.points.push_back(std::move(d));
  }

  if (dominance_B && rep.all_converge_at_zero() && rep.all_diverge_at_inf()) {
    rep.dominance.checked = true;
    rep.dominance.scale_a = dominance_scale;
    rep.dominance.ok = true;
    rep.dominance.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& d : rep.points) {
      if (d.table_t.empty()) continue;
      // Phi*(x, u): invert the tabulated monotone map (Phi*)^{-1} by log-log
      // interpolation; y = (Phi*)^{-1}(t) increasing in t, so
      // Phi*(u) = t such that y(t) = u.
      auto conj_of = [&](double u) {
        const auto& ys = d.table_inv_conj;
        const auto& ts = d.table_t;
        if (u <= ys.front()) {
          const double sl = (std::log(ts[1]) - std::log(ts[0])) /
                            (std::log(ys[1]) - std::log(ys[0]));
          return std::exp(std::log(ts.front()) + sl * (std::log(u) - std::log(ys.front())));
        }
        if (u >= ys.back()) {
          const std::size_t n = ys.size();
          const double sl = (std::log(ts[n - 1]) - std::log(ts[n - 2])) /
                            (std::log(ys[n - 1]) - std::log(ys[n - 2]));
          return std::exp(std::log(ts.back()) + sl * (std::log(u) - std::log(ys.back())));
        }
        auto it = std::lower_bound(ys.begin(), ys.end(), u);
        const std::size_t i = static_cast<std::size_t>(it - ys.begin());
        const double sl = (std::log(ts[i]) - std::log(ts[i - 1])) /
                          (std::log(ys[i]) - std::log(ys[i - 1]));
        return std::exp(std::log(ts[i - 1]) + sl * (std::log(u) - std::log(ys[i - 1])));
      };
      // Dominance only needs to hold from some threshold on: find the
      // smallest grid point past which every sample satisfies it.
      const auto ts = log_grid(10.0, 1e6, 13);
      std::size_t first_bad_suffix = 0;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const double lhs = (*dominance_B)(d.x, ts[k]);
        const double rhs = conj_of(dominance_scale * ts[k]);
        if (lhs > rhs) first_bad_suffix = k + 1;
      }
      if (first_bad_suffix >= ts.size()) {
        rep.dominance.ok = false;
      } else {
        rep.dominance.threshold_t0 =
            std::max(rep.dominance.threshold_t0, ts[first_bad_suffix]);
        for (std::size_t k = first_bad_suffix; k < ts.size(); ++k) {
          const double lhs = (*dominance_B)(d.x, ts[k]);
          const double rhs = conj_of(dominance_scale * ts[k]);
          rep.dominance.worst_margin = std::min(rep.dominance.worst_margin, rhs - lhs);
        }
      }
    }
  }
  return rep;
}

}  // namespace muso
