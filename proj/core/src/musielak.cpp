#include "muso/musielak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muso/errors.hpp"
#include "gauss.hpp"

namespace muso {

namespace {

// |t|^e with fast paths for the small integer exponents that dominate the
// assembly hot loops.
double pow_abs(double t, double e) {
  const double a = std::fabs(t);
  if (e == 1.0) return a;
  if (e == 2.0) return a * a;
  if (e == 3.0) return a * a * a;
  if (e == 0.0) return 1.0;
  if (a == 0.0) return 0.0;
  return std::pow(a, e);
}

double phi_power(double p, double t) {
  if (t == 0.0) return 0.0;
  return p * pow_abs(t, p - 2.0) * t;
}

double phi_power_over_log(double p, double t) {
  if (t == 0.0) return 0.0;
  return p * pow_abs(t, p - 2.0) * t / std::log1p(std::fabs(t));
}

double phi_power_times_log(double p, double alpha, double t) {
  if (t == 0.0) return 0.0;
  return p * std::log1p(alpha + std::fabs(t)) * pow_abs(t, p - 2.0) * t;
}

}  // namespace

MusielakFamily MusielakFamily::power(ScalarField p_diag, int dim) {
  MusielakFamily f;
  f.kind_ = FamilyKind::Power;
  f.dim_ = dim;
  f.p_ = PairExponentField(p_diag);
  return f;
}

MusielakFamily MusielakFamily::power_over_log(ScalarField p_diag, int dim) {
  MusielakFamily f;
  f.kind_ = FamilyKind::PowerOverLog;
  f.dim_ = dim;
  f.p_ = PairExponentField(p_diag);
  return f;
}

MusielakFamily MusielakFamily::power_times_log(ScalarField p_diag, double alpha, int dim) {
  if (alpha < 0.0) throw validation_error("power_times_log requires alpha >= 0");
  MusielakFamily f;
  f.kind_ = FamilyKind::PowerTimesLog;
  f.dim_ = dim;
  f.p_ = PairExponentField(p_diag);
  f.alpha_ = alpha;
  return f;
}

MusielakFamily MusielakFamily::custom(KernelFn a, double phi_minus, double phi_plus, int dim) {
  MusielakFamily f;
  f.kind_ = FamilyKind::Custom;
  f.dim_ = dim;
  f.custom_a_ = std::move(a);
  f.set_declared_bounds(phi_minus, phi_plus);
  return f;
}

void MusielakFamily::set_declared_bounds(double lo, double hi) {
  if (!(lo > 1.0) || !(hi >= lo) || !std::isfinite(hi))
    throw validation_error("growth bounds must satisfy 1 < phi_minus <= phi_plus < inf");
  phi_minus_ = lo;
  phi_plus_ = hi;
}

void MusielakFamily::check_t(double t) const {
  if (!std::isfinite(t)) throw invalid_input_error("non-finite argument t");
}

double MusielakFamily::kernel(const Point& x, const Point& y, double t) const {
  check_t(t);
  if (kind_ == FamilyKind::Custom) return custom_a_(x, y, t);
  // a(x, y, t) = phi(x, y, t) / t for t > 0
  const double ph = phi_p(exponent(x, y), x, y, t);
  return ph / t;
}

double MusielakFamily::phi_p(double p, const Point& x, const Point& y, double t) const {
  switch (kind_) {
    case FamilyKind::Power:
      return phi_power(p, t);
    case FamilyKind::PowerOverLog:
      return phi_power_over_log(p, t);
    case FamilyKind::PowerTimesLog:
      return phi_power_times_log(p, alpha_, t);
    case FamilyKind::Custom:
      return t == 0.0 ? 0.0 : custom_a_(x, y, std::fabs(t)) * t;
  }
  return 0.0;
}

double MusielakFamily::Phi_p(double p, const Point& x, const Point& y, double t) const {
  switch (kind_) {
    case FamilyKind::Power:
      return pow_abs(t, p);
    case FamilyKind::PowerOverLog:
      return detail::integrate_graded(
          [&](double tau) { return phi_power_over_log(p, tau); }, t);
    case FamilyKind::PowerTimesLog:
      return detail::integrate_graded(
          [&](double tau) { return phi_power_times_log(p, alpha_, tau); }, t);
    case FamilyKind::Custom:
      return detail::integrate_graded(
          [&](double tau) { return tau == 0.0 ? 0.0 : custom_a_(x, y, tau) * tau; }, t);
  }
  return 0.0;
}

double MusielakFamily::phi(const Point& x, const Point& y, double t) const {
  check_t(t);
  return phi_p(exponent(x, y), x, y, t);
}

double MusielakFamily::Phi(const Point& x, const Point& y, double t) const {
  check_t(t);
  if (t < 0.0) throw invalid_input_error("Phi expects t >= 0 (pass |t|)");
  return Phi_p(exponent(x, y), x, y, t);
}

double MusielakFamily::phi_bar(const Point& x, const Point& y, double t) const {
  check_t(t);
  if (t < 0.0) throw invalid_input_error("phi_bar expects t >= 0");
  if (t == 0.0) return 0.0;
  const double p = exponent(x, y);
  if (kind_ == FamilyKind::Power) return std::pow(t / p, 1.0 / (p - 1.0));
  // Generalized inverse of the increasing homeomorphism phi, by bracketed
  // bisection.
  double hi = 1.0;
  int guard = 0;
  while (phi_p(p, x, y, hi) < t) {
    hi *= 2.0;
    if (++guard > 2000) throw consistency_error("phi_bar bracket failed to grow");
  }
  double lo = 0.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi_p(p, x, y, mid) < t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double MusielakFamily::Phi_bar(const Point& x, const Point& y, double t) const {
  check_t(t);
  if (t < 0.0) throw invalid_input_error("Phi_bar expects t >= 0");
  if (t == 0.0) return 0.0;
  const double p = exponent(x, y);
  if (kind_ == FamilyKind::Power) {
    const double q = p / (p - 1.0);
    return (p - 1.0) / p * std::pow(p, -1.0 / (p - 1.0)) * std::pow(t, q);
  }
  // Legendre form of the conjugate: the sup of s t - Phi(s) is attained where
  // phi(s) = t, i.e. at s = phi_bar(t).
  const double s_star = phi_bar(x, y, t);
  return t * s_star - Phi_p(p, x, y, s_star);
}

double MusielakFamily::hat_Phi_inv(const Point& x, double y) const {
  if (!(y >= 0.0)) throw invalid_input_error("hat_Phi_inv expects y >= 0");
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (hat_Phi(x, hi) < y) {
    hi *= 2.0;
    if (++guard > 2000) throw consistency_error("hat_Phi_inv bracket failed to grow");
  }
  double lo = 0.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (hat_Phi(x, mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> log_grid(double t_min, double t_max, int n) {
  if (!(t_min > 0.0) || !(t_max > t_min) || n < 2)
    throw invalid_input_error("log_grid requires 0 < t_min < t_max and n >= 2");
  std::vector<double> g(n);
  const double la = std::log(t_min), lb = std::log(t_max);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(la + (lb - la) * i / (n - 1));
  return g;
}

std::vector<std::pair<Point, Point>> box_point_pairs(const Point& lo, const Point& hi,
                                                     int dim, int per_axis) {
  std::vector<Point> pts;
  if (dim == 1) {
    for (int i = 0; i < per_axis; ++i)
      pts.push_back(make_point(lo[0] + (hi[0] - lo[0]) * i / (per_axis - 1)));
  } else {
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < per_axis; ++j)
        pts.push_back(make_point(lo[0] + (hi[0] - lo[0]) * i / (per_axis - 1),
                                 lo[1] + (hi[1] - lo[1]) * j / (per_axis - 1)));
  }
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a; b < pts.size(); ++b)
      pairs.emplace_back(pts[a], pts[b]);
  return pairs;
}

std::pair<double, double> estimate_phi_bounds(
    const MusielakFamily& family, const std::vector<double>& t_grid,
    const std::vector<std::pair<Point, Point>>& xy_samples) {
  if (t_grid.empty() || xy_samples.empty())
    throw invalid_input_error("estimate_phi_bounds requires nonempty sample grids");
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = -rmin;
  for (const auto& [x, y] : xy_samples) {
    for (double t : t_grid) {
      if (!(t > 0.0)) throw invalid_input_error("t_grid must lie in (0, inf)");
      const double ph = family.phi(x, y, t);
      const double Ph = family.Phi(x, y, t);
      if (Ph <= 0.0) continue;
      const double ratio = t * ph / Ph;
      rmin = std::min(rmin, ratio);
      rmax = std::max(rmax, ratio);
    }
  }
  return {rmin, rmax};
}

ConditionReport check_conditions(const MusielakFamily& family, const Point& box_lo,
                                 const Point& box_hi, double tol,
                                 const std::vector<double>& t_grid, int xy_per_axis) {
  if (!(tol > 0.0)) throw invalid_input_error("check_conditions requires tol > 0");
  ConditionReport rep;
  const auto pairs = box_point_pairs(box_lo, box_hi, family.dim(), xy_per_axis);

  auto [rmin, rmax] = estimate_phi_bounds(family, t_grid, pairs);
  rep.ratio_min = rmin;
  rep.ratio_max = rmax;
  rep.phi1_ok = rmin >= family.phi_minus() - tol && rmax <= family.phi_plus() + tol &&
                rmin > 1.0;
  if (!rep.phi1_ok) {
    for (const auto& [x, y] : pairs) {
      for (double t : t_grid) {
        const double Ph = family.Phi(x, y, t);
        if (Ph <= 0.0) continue;
        const double ratio = t * family.phi(x, y, t) / Ph;
        if (ratio < family.phi_minus() - tol || ratio > family.phi_plus() + tol)
          rep.violations.push_back({"phi1", x, y, t, ratio});
      }
    }
  }

  // (Phi2): t -> Phi(sqrt(t)) convex, tested by second divided differences on
  // the squared grid.
  rep.phi2_ok = true;
  for (const auto& [x, y] : pairs) {
    std::vector<double> tau(t_grid.size()), g(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      tau[i] = t_grid[i] * t_grid[i];
      g[i] = family.Phi(x, y, t_grid[i]);
    }
    for (std::size_t i = 0; i + 2 < tau.size(); ++i) {
      const double d1 = (g[i + 1] - g[i]) / (tau[i + 1] - tau[i]);
      const double d2 = (g[i + 2] - g[i + 1]) / (tau[i + 2] - tau[i + 1]);
      const double dd = (d2 - d1) / (tau[i + 2] - tau[i]);
      const double scale = std::max({std::fabs(g[i]), std::fabs(g[i + 2]),
                                     std::numeric_limits<double>::min()});
      const double span = tau[i + 2] - tau[i];
      if (dd * span * span < -tol * scale) {
        rep.phi2_ok = false;
        rep.violations.push_back({"phi2", x, y, t_grid[i + 1], dd});
      }
    }
  }

  // (Phi3): sup over samples of Phi(x, y, 1) finite.
  rep.phi3_sup = 0.0;
  rep.phi3_ok = true;
  for (const auto& [x, y] : pairs) {
    const double v = family.Phi(x, y, 1.0);
    rep.phi3_sup = std::max(rep.phi3_sup, v);
    if (!std::isfinite(v)) {
      rep.phi3_ok = false;
      rep.violations.push_back({"phi3", x, y, 1.0, v});
    }
  }

  // Doubling: Phi(2t) <= 2^phi_plus Phi(t) on samples.
  rep.delta2_constant = 0.0;
  const double limit = std::pow(2.0, family.phi_plus());
  rep.delta2_ok = true;
  for (const auto& [x, y] : pairs) {
    for (double t : t_grid) {
      const double lo_v = family.Phi(x, y, t);
      if (lo_v <= 0.0) continue;
      const double ratio = family.Phi(x, y, 2.0 * t) / lo_v;
      rep.delta2_constant = std::max(rep.delta2_constant, ratio);
      if (ratio > limit + tol) {
        rep.delta2_ok = false;
        rep.violations.push_back({"delta2", x, y, t, ratio});
      }
    }
  }
  return rep;
}

}  // namespace muso
