#include "muso/reaction.hpp"

#include <cmath>
#include <sstream>

#include "muso/errors.hpp"
#include "muso/musielak.hpp"

namespace muso {

namespace {

double pow_abs(double t, double e) {
  const double a = std::fabs(t);
  if (a == 0.0) return e == 0.0 ? 1.0 : 0.0;
  if (e == 1.0) return a;
  if (e == 2.0) return a * a;
  return std::pow(a, e);
}

// |t|^(e-1) t, odd in t.
double pow_signed(double t, double e) {
  if (t == 0.0) return 0.0;
  return pow_abs(t, e - 1.0) * t;
}

}  // namespace

double ReactionFamily::F_q(ReactionKind kind, double q, double t) {
  switch (kind) {
    case ReactionKind::PurePower:
      return pow_abs(t, q);
    case ReactionKind::PowerPlusLog:
      return pow_abs(t, q) + std::log1p(t * t) * pow_abs(t, q - 2.0);
    case ReactionKind::PowerPlusSinSin:
      return pow_abs(t, q) + std::sin(std::sin(t)) * pow_abs(t, q - 1.0);
  }
  return 0.0;
}

double ReactionFamily::f_q(ReactionKind kind, double q, double t) {
  switch (kind) {
    case ReactionKind::PurePower:
      return q * pow_signed(t, q - 1.0);
    case ReactionKind::PowerPlusLog:
      if (t == 0.0) return 0.0;
      return q * pow_signed(t, q - 1.0) +
             (q - 2.0) * std::log1p(t * t) * pow_signed(t, q - 3.0) +
             2.0 * t / (1.0 + t * t) * pow_abs(t, q - 2.0);
    case ReactionKind::PowerPlusSinSin:
      if (t == 0.0) return 0.0;
      return q * pow_signed(t, q - 1.0) +
             (q - 1.0) * std::sin(std::sin(t)) * pow_signed(t, q - 2.0) +
             std::cos(std::sin(t)) * std::cos(t) * pow_abs(t, q - 1.0);
  }
  return 0.0;
}

std::pair<double, double> ReactionFamily::eval(const Point& x, double t) const {
  if (!std::isfinite(t)) throw invalid_input_error("non-finite argument t");
  const double qq = q(x);
  return {f_q(kind_, qq, t), F_q(kind_, qq, t)};
}

std::pair<double, double> default_growth_constants(ReactionKind kind, double q_max) {
  switch (kind) {
    case ReactionKind::PurePower:
      return {q_max, 1.0};
    case ReactionKind::PowerPlusLog:
      // |f| / |t|^(q-1) <= q + (q-2) log(1+t^2)/t^2 + 2/(1+t^2) <= 2q
      return {2.0 * q_max, 1.0};
    case ReactionKind::PowerPlusSinSin:
      return {2.0 * q_max + 1.0, 1.0};
  }
  return {1.0, 1.0};
}

ReactionFamily ReactionFamily::unchecked(ReactionKind kind, ScalarField q, double c1,
                                         double c2, int dim) {
  ReactionFamily r;
  r.kind_ = kind;
  r.q_ = q;
  r.c1_ = c1;
  r.c2_ = c2;
  r.dim_ = dim;
  return r;
}

ReactionFamily ReactionFamily::make(ReactionKind kind, ScalarField q, double c1,
                                    double c2, int dim, const Point& omega_lo,
                                    const Point& omega_hi) {
  if (!(c1 > 0.0) || !(c2 > 0.0))
    throw validation_error("growth constants c1, c2 must be positive");
  ReactionFamily r = unchecked(kind, q, c1, c2, dim);
  if (!(r.q_min(omega_lo, omega_hi) > 1.0))
    throw validation_error("reaction exponent must satisfy q > 1 on Omega");

  // Sampled validation of the declared growth bounds on a symmetric t-grid.
  const auto ts = log_grid(1e-6, 1e6, 49);
  std::vector<Point> xs;
  const int nx = 5;
  for (int i = 0; i < nx; ++i) {
    Point p{};
    p[0] = omega_lo[0] + (omega_hi[0] - omega_lo[0]) * i / (nx - 1);
    if (dim == 2) {
      for (int j = 0; j < nx; ++j) {
        p[1] = omega_lo[1] + (omega_hi[1] - omega_lo[1]) * j / (nx - 1);
        xs.push_back(p);
      }
    } else {
      xs.push_back(p);
    }
  }
  const double slack = 1e-9;  // relative, absorbs rounding between pow paths
  for (const Point& x : xs) {
    const double qq = r.q(x);
    for (double ta : ts) {
      for (double t : {ta, -ta}) {
        const auto [fv, Fv] = r.eval(x, t);
        const double tq1 = std::pow(std::fabs(t), qq - 1.0);
        const double tq = std::pow(std::fabs(t), qq);
        if (std::fabs(fv) > c1 * tq1 * (1.0 + slack)) {
          std::ostringstream os;
          os << "reaction growth bound |f| <= c1 |t|^(q-1) fails at t = " << t
             << ": |f| = " << std::fabs(fv) << ", bound = " << c1 * tq1;
          throw validation_error(os.str());
        }
        if (Fv < c2 * tq * (1.0 - slack)) {
          std::ostringstream os;
          os << "reaction lower bound F >= c2 |t|^q fails at t = " << t
             << ": F = " << Fv << ", bound = " << c2 * tq;
          throw validation_error(os.str());
        }
      }
    }
  }
  return r;
}

}  // namespace muso
