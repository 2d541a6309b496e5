#include "muso/fields.hpp"

#include <algorithm>
#include <cmath>

#include "muso/errors.hpp"

namespace muso {

ScalarField ScalarField::constant(double c) {
  ScalarField f;
  f.kind_ = FieldKind::Constant;
  f.c0_ = c;
  return f;
}

ScalarField ScalarField::affine(double c0, Point gradient) {
  ScalarField f;
  f.kind_ = FieldKind::Affine;
  f.c0_ = c0;
  f.grad_ = gradient;
  return f;
}

ScalarField ScalarField::bump(Point center, double r_inner, double r_outer,
                              double base, double amplitude) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner))
    throw validation_error("bump field requires 0 < r_inner < r_outer");
  ScalarField f;
  f.kind_ = FieldKind::Bump;
  f.center_ = center;
  f.r_inner_ = r_inner;
  f.r_outer_ = r_outer;
  f.c0_ = base;
  f.amp_ = amplitude;
  return f;
}

namespace {

// 1 on [0, r_in], 0 on [r_out, inf), cubic smoothstep between.
double plateau(double r, double r_in, double r_out) {
  if (r <= r_in) return 1.0;
  if (r >= r_out) return 0.0;
  const double t = (r_out - r) / (r_out - r_in);
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

double ScalarField::operator()(const Point& x, int dim) const {
  switch (kind_) {
    case FieldKind::Constant:
      return c0_;
    case FieldKind::Affine: {
      double v = c0_;
      for (int k = 0; k < dim; ++k) v += grad_[k] * x[k];
      return v;
    }
    case FieldKind::Bump: {
      const double r = distance(x, center_, dim);
      return c0_ + amp_ * plateau(r, r_inner_, r_outer_);
    }
  }
  return c0_;
}

double ScalarField::min_on_box(const Point& lo, const Point& hi, int dim) const {
  switch (kind_) {
    case FieldKind::Constant:
      return c0_;
    case FieldKind::Affine: {
      double v = c0_;
      for (int k = 0; k < dim; ++k) v += grad_[k] * (grad_[k] >= 0.0 ? lo[k] : hi[k]);
      return v;
    }
    case FieldKind::Bump: {
      // plateau is nonincreasing in r; extreme radii over the box are attained
      // at the clamped nearest point and the farthest corner.
      Point near{}, far{};
      for (int k = 0; k < dim; ++k) {
        near[k] = std::clamp(center_[k], lo[k], hi[k]);
        far[k] = (center_[k] - lo[k] > hi[k] - center_[k]) ? lo[k] : hi[k];
      }
      const double b_near = plateau(distance(near, center_, dim), r_inner_, r_outer_);
      const double b_far = plateau(distance(far, center_, dim), r_inner_, r_outer_);
      return c0_ + (amp_ >= 0.0 ? amp_ * b_far : amp_ * b_near);
    }
  }
  return c0_;
}

double ScalarField::max_on_box(const Point& lo, const Point& hi, int dim) const {
  switch (kind_) {
    case FieldKind::Constant:
      return c0_;
    case FieldKind::Affine: {
      double v = c0_;
      for (int k = 0; k < dim; ++k) v += grad_[k] * (grad_[k] >= 0.0 ? hi[k] : lo[k]);
      return v;
    }
    case FieldKind::Bump: {
      Point near{}, far{};
      for (int k = 0; k < dim; ++k) {
        near[k] = std::clamp(center_[k], lo[k], hi[k]);
        far[k] = (center_[k] - lo[k] > hi[k] - center_[k]) ? lo[k] : hi[k];
      }
      const double b_near = plateau(distance(near, center_, dim), r_inner_, r_outer_);
      const double b_far = plateau(distance(far, center_, dim), r_inner_, r_outer_);
      return c0_ + (amp_ >= 0.0 ? amp_ * b_near : amp_ * b_far);
    }
  }
  return c0_;
}

bool ScalarField::operator==(const ScalarField& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case FieldKind::Constant:
      return c0_ == o.c0_;
    case FieldKind::Affine:
      return c0_ == o.c0_ && grad_[0] == o.grad_[0] && grad_[1] == o.grad_[1];
    case FieldKind::Bump:
      return c0_ == o.c0_ && amp_ == o.amp_ && r_inner_ == o.r_inner_ &&
             r_outer_ == o.r_outer_ && center_[0] == o.center_[0] &&
             center_[1] == o.center_[1];
  }
  return false;
}

}  // namespace muso
