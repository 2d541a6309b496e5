#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "muso/fields.hpp"
#include "muso/point.hpp"

namespace muso {

enum class FamilyKind { Power, PowerOverLog, PowerTimesLog, Custom };

/// Spatially dependent kernel family. The building block is
///   phi(x, y, t) = a(x, y, |t|) t   (odd, increasing, phi(0) = 0)
/// with antiderivative Phi(x, y, t) = integral_0^t phi, its generalized
/// inverse phi_bar, and the conjugate Phi_bar. The diagonal restriction
/// hat_* fixes y = x. Built-in kinds with exponent field p(x, y):
///
///   Power:         phi = p |t|^(p-2) t
///   PowerOverLog:  phi = p |t|^(p-2) t / log(1 + |t|)
///   PowerTimesLog: phi = p log(1 + alpha + |t|) |t|^(p-2) t
///
/// Power has closed-form Phi and conjugate; the others integrate phi with a
/// fixed graded Gauss rule whose error is smooth in t.
class MusielakFamily {
 public:
  using KernelFn = std::function<double(const Point&, const Point&, double)>;

  MusielakFamily() = default;

  static MusielakFamily power(ScalarField p_diag, int dim);
  static MusielakFamily power_over_log(ScalarField p_diag, int dim);
  static MusielakFamily power_times_log(ScalarField p_diag, double alpha, int dim);
  /// a(x, y, t) callable for t > 0 plus declared growth bounds.
  static MusielakFamily custom(KernelFn a, double phi_minus, double phi_plus, int dim);

  FamilyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  const PairExponentField& exponent_field() const { return p_; }

  /// Declared growth bounds for the ratio t phi / Phi.
  double phi_minus() const { return phi_minus_; }
  double phi_plus() const { return phi_plus_; }
  void set_declared_bounds(double lo, double hi);

  double exponent(const Point& x, const Point& y) const { return p_(x, y, dim_); }

  // -- pointwise evaluation ------------------------------------------------
  double kernel(const Point& x, const Point& y, double t) const;  // a(x,y,t), t > 0
  double phi(const Point& x, const Point& y, double t) const;     // odd in t
  double Phi(const Point& x, const Point& y, double t) const;     // t >= 0
  double phi_bar(const Point& x, const Point& y, double t) const; // t >= 0
  double Phi_bar(const Point& x, const Point& y, double t) const; // t >= 0

  double hat_phi(const Point& x, double t) const { return phi(x, x, t); }
  double hat_Phi(const Point& x, double t) const { return Phi(x, x, t); }
  double hat_phi_bar(const Point& x, double t) const { return phi_bar(x, x, t); }
  double hat_Phi_bar(const Point& x, double t) const { return Phi_bar(x, x, t); }
  /// Inverse of the increasing map t -> hat_Phi(x, t), by bisection.
  double hat_Phi_inv(const Point& x, double y) const;

  // -- exponent-parameterized fast path (built-in kinds) --------------------
  // The pair exponent p(x, y) is the only spatial dependence of the built-in
  // kinds, so assemblies cache p per quadrature pair and call these. Custom
  // falls back to the positional evaluators.
  double phi_p(double p, const Point& x, const Point& y, double t) const;
  double Phi_p(double p, const Point& x, const Point& y, double t) const;

 private:
  void check_t(double t) const;

  FamilyKind kind_ = FamilyKind::Power;
  int dim_ = 1;
  PairExponentField p_;
  double alpha_ = 0.0;
  double phi_minus_ = 0.0;
  double phi_plus_ = 0.0;
  KernelFn custom_a_;
};

/// Verification report for the structural conditions imposed on a family:
/// ratio bounds, convexity of t -> Phi(sqrt(t)), boundedness of Phi(., 1),
/// and the doubling condition.
struct ConditionReport {
  bool phi1_ok = false;
  bool phi2_ok = false;
  bool phi3_ok = false;
  bool delta2_ok = false;
  double ratio_min = 0.0;  // sampled range of t phi / Phi
  double ratio_max = 0.0;
  double phi3_sup = 0.0;   // sup over (x, y) samples of Phi(x, y, 1)
  double delta2_constant = 0.0;

  struct Violation {
    std::string condition;
    Point x, y;
    double t;
    double quantity;
  };
  std::vector<Violation> violations;

  bool all_ok() const { return phi1_ok && phi2_ok && phi3_ok && delta2_ok; }
};

/// Sampled range of the growth ratio t phi(x,y,t) / Phi(x,y,t).
std::pair<double, double> estimate_phi_bounds(
    const MusielakFamily& family, const std::vector<double>& t_grid,
    const std::vector<std::pair<Point, Point>>& xy_samples);

/// Log-spaced grid helper, n points from t_min to t_max inclusive.
std::vector<double> log_grid(double t_min, double t_max, int n);

/// Unordered point pairs (including diagonal) from a per-axis grid over the
/// box [lo, hi].
std::vector<std::pair<Point, Point>> box_point_pairs(const Point& lo, const Point& hi,
                                                     int dim, int per_axis);

ConditionReport check_conditions(const MusielakFamily& family, const Point& box_lo,
                                 const Point& box_hi, double tol,
                                 const std::vector<double>& t_grid,
                                 int xy_per_axis = 4);

}  // namespace muso
