#pragma once

#include <string>

#include "muso/point.hpp"

namespace muso {

enum class FieldKind { Constant, Affine, Bump };

/// Closed-form scalar field over spatial points: constant, affine, or a
/// radial plateau bump (1 inside an inner ball, 0 outside an outer ball,
/// C1 polynomial blend between). Evaluation is exact, and extrema over
/// axis-aligned boxes are computed per kind rather than sampled.
class ScalarField {
 public:
  ScalarField() : kind_(FieldKind::Constant), c0_(0.0) {}

  static ScalarField constant(double c);
  static ScalarField affine(double c0, Point gradient);
  /// base + amplitude * B(|x - center|), B = 1 on [0, r_inner],
  /// 0 on [r_outer, inf), smoothstep blend between. Requires 0 < r_inner < r_outer.
  static ScalarField bump(Point center, double r_inner, double r_outer,
                          double base, double amplitude);

  double operator()(const Point& x, int dim) const;

  double min_on_box(const Point& lo, const Point& hi, int dim) const;
  double max_on_box(const Point& lo, const Point& hi, int dim) const;

  FieldKind kind() const { return kind_; }
  double c0() const { return c0_; }
  Point gradient() const { return grad_; }
  Point center() const { return center_; }
  double r_inner() const { return r_inner_; }
  double r_outer() const { return r_outer_; }
  double amplitude() const { return amp_; }

  bool operator==(const ScalarField& o) const;

 private:
  FieldKind kind_;
  double c0_ = 0.0;        // constant value / affine offset / bump base
  Point grad_{};           // affine
  Point center_{};         // bump
  double r_inner_ = 0.0;   // bump
  double r_outer_ = 0.0;   // bump
  double amp_ = 0.0;       // bump
};

/// Symmetric two-point exponent field p(x, y) = (g(x) + g(y)) / 2. Symmetry
/// in (x, y) holds exactly, including in floating point.
class PairExponentField {
 public:
  PairExponentField() = default;
  explicit PairExponentField(ScalarField g) : g_(g) {}

  double operator()(const Point& x, const Point& y, int dim) const {
    return 0.5 * (g_(x, dim) + g_(y, dim));
  }

  double min_on_box(const Point& lo, const Point& hi, int dim) const {
    return g_.min_on_box(lo, hi, dim);
  }
  double max_on_box(const Point& lo, const Point& hi, int dim) const {
    return g_.max_on_box(lo, hi, dim);
  }

  const ScalarField& diagonal() const { return g_; }

 private:
  ScalarField g_;
};

}  // namespace muso
