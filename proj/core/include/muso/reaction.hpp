#pragma once

#include <string>
#include <utility>

#include "muso/fields.hpp"
#include "muso/point.hpp"

namespace muso {

enum class ReactionKind { PurePower, PowerPlusLog, PowerPlusSinSin };

/// Reaction term f(x, t) with exact antiderivative F(x, t), exponent field
/// q(x) and declared growth constants c1, c2:
///
///   PurePower:       F = |t|^q
///   PowerPlusLog:    F = |t|^q + log(1 + t^2) |t|^(q-2)
///   PowerPlusSinSin: F = |t|^q + sin(sin t) |t|^(q-1)
///
/// f is the exact t-derivative of F in every case. make() validates the
/// growth bounds |f| <= c1 |t|^(q-1) and F >= c2 |t|^q on a sampled grid and
/// refuses families that break them.
class ReactionFamily {
 public:
  ReactionFamily() = default;

  static ReactionFamily make(ReactionKind kind, ScalarField q, double c1, double c2,
                             int dim, const Point& omega_lo, const Point& omega_hi);

  /// Unvalidated construction for direct evaluation of the formulas.
  static ReactionFamily unchecked(ReactionKind kind, ScalarField q, double c1,
                                  double c2, int dim);

  ReactionKind kind() const { return kind_; }
  const ScalarField& q_field() const { return q_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  int dim() const { return dim_; }

  double q(const Point& x) const { return q_(x, dim_); }
  double q_min(const Point& lo, const Point& hi) const { return q_.min_on_box(lo, hi, dim_); }
  double q_max(const Point& lo, const Point& hi) const { return q_.max_on_box(lo, hi, dim_); }

  /// (f(x, t), F(x, t)).
  std::pair<double, double> eval(const Point& x, double t) const;

  double f(const Point& x, double t) const { return eval(x, t).first; }
  double F(const Point& x, double t) const { return eval(x, t).second; }

  /// f and F at a cached exponent value (assembly fast path).
  static double f_q(ReactionKind kind, double q, double t);
  static double F_q(ReactionKind kind, double q, double t);

 private:
  ReactionKind kind_ = ReactionKind::PurePower;
  ScalarField q_;
  double c1_ = 0.0;
  double c2_ = 0.0;
  int dim_ = 1;
};

/// Conservative default growth constants for a built-in kind.
std::pair<double, double> default_growth_constants(ReactionKind kind, double q_max);

}  // namespace muso
