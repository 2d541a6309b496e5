#pragma once

// Shared problem builders for the test suites.

#include "muso/problem.hpp"

namespace testing_helpers {

inline muso::DomainSpec unit_interval(double h = 1.0 / 64.0, double collar = 0.5) {
  muso::DomainSpec d;
  d.dim = 1;
  d.omega_lo = muso::make_point(0.0);
  d.omega_hi = muso::make_point(1.0);
  d.h = h;
  d.collar_width = collar;
  return d;
}

inline muso::DomainSpec unit_square(double h = 0.25, double collar = 0.25) {
  muso::DomainSpec d;
  d.dim = 2;
  d.omega_lo = muso::make_point(0.0, 0.0);
  d.omega_hi = muso::make_point(1.0, 1.0);
  d.h = h;
  d.collar_width = collar;
  return d;
}

inline muso::MusielakFamily power_family(double p, int dim = 1) {
  muso::MusielakFamily f =
      muso::MusielakFamily::power(muso::ScalarField::constant(p), dim);
  f.set_declared_bounds(p, p);
  return f;
}

// 1D problem on Omega = (0,1): Power family p, PurePower reaction q.
inline muso::ProblemSpec power_problem(double h = 1.0 / 64.0, double s = 0.3,
                                       double lambda = 0.1, double p = 3.0,
                                       double q = 2.0, double beta = 1.0) {
  const muso::DomainSpec dom = unit_interval(h);
  muso::ReactionFamily reaction = muso::ReactionFamily::make(
      muso::ReactionKind::PurePower, muso::ScalarField::constant(q), q, 1.0, 1,
      dom.omega_lo, dom.omega_hi);
  return muso::ProblemSpec::make(s, lambda, power_family(p),
                                 muso::ScalarField::constant(beta), reaction, dom);
}

inline muso::ProblemSpec square_problem(double h = 0.25, double s = 0.5,
                                        double lambda = 0.1, double p = 3.0,
                                        double q = 2.0, double beta = 1.0) {
  const muso::DomainSpec dom = unit_square(h, h);
  muso::ReactionFamily reaction = muso::ReactionFamily::make(
      muso::ReactionKind::PurePower, muso::ScalarField::constant(q), q, 1.0, 2,
      dom.omega_lo, dom.omega_hi);
  return muso::ProblemSpec::make(s, lambda, power_family(p, 2),
                                 muso::ScalarField::constant(beta), reaction, dom);
}

}  // namespace testing_helpers
