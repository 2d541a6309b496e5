#include <cmath>

#include "doctest.h"

#include "muso/errors.hpp"
#include "muso/musielak.hpp"
#include "oracles.hpp"

using namespace muso;

namespace {
const Point O = make_point(0.3);
const Point Y = make_point(0.7);

MusielakFamily power3() {
  auto f = MusielakFamily::power(ScalarField::constant(3.0), 1);
  f.set_declared_bounds(3.0, 3.0);
  return f;
}
MusielakFamily power_over_log3() {
  auto f = MusielakFamily::power_over_log(ScalarField::constant(3.0), 1);
  f.set_declared_bounds(2.0, 3.0);
  return f;
}
MusielakFamily power_times_log(double p, double alpha) {
  auto f = MusielakFamily::power_times_log(ScalarField::constant(p), alpha, 1);
  f.set_declared_bounds(p, p + 1.0);
  return f;
}
}  // namespace

TEST_CASE("phi pointwise values") {
  CHECK(power3().phi(O, Y, 2.0) == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(power3().phi(O, Y, 0.0) == 0.0);
  CHECK(power_over_log3().phi(O, Y, 0.0) == 0.0);
  // p |t|^{p-2} t / log(1+t) at t = e-1 has unit logarithm
  const double t = std::expm1(1.0);
  CHECK(power_over_log3().phi(O, Y, t) ==
        doctest::Approx(3.0 * t * t).epsilon(1e-13));
  CHECK_THROWS_AS(power3().phi(O, Y, std::nan("")), invalid_input_error);
}

TEST_CASE("phi is odd and symmetric in (x, y)") {
  for (const auto& fam : {power3(), power_over_log3(), power_times_log(2.0, 1.0)}) {
    for (double t : {1e-4, 0.3, 2.0, 50.0}) {
      CHECK(fam.phi(O, Y, -t) == -fam.phi(O, Y, t));
      CHECK(fam.phi(O, Y, t) == fam.phi(Y, O, t));
    }
  }
  // symmetry of the kernel itself for a nonconstant exponent field
  auto aff = MusielakFamily::power(ScalarField::affine(2.0, make_point(0.9)), 1);
  aff.set_declared_bounds(2.0, 2.9);
  CHECK(aff.kernel(O, Y, 0.7) == aff.kernel(Y, O, 0.7));
}

TEST_CASE("Phi closed form and quadrature") {
  CHECK(power3().Phi(O, Y, 2.0) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(power3().Phi(O, Y, 0.0) == 0.0);
  CHECK_THROWS_AS(power3().Phi(O, Y, -1.0), invalid_input_error);

  // integral of 2 tau log(1+tau) on [0,1] is 1/2
  auto ptl = power_times_log(2.0, 0.0);
  const double expected = oracle::simpson(
      [&](double tau) { return ptl.phi(O, Y, tau); }, 0.0, 1.0, 1e-12);
  CHECK(expected == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ptl.Phi(O, Y, 1.0) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("Phi integral consistency against adaptive Simpson") {
  for (const auto& fam : {power3(), power_over_log3(), power_times_log(2.0, 1.0)}) {
    for (auto [t1, t2] : {std::pair{0.0, 0.7}, {0.5, 2.0}, {1.0, 30.0}}) {
      const double lhs = fam.Phi(O, Y, t2) - fam.Phi(O, Y, t1);
      const double rhs =
          oracle::simpson([&](double tau) { return fam.phi(O, Y, tau); }, t1, t2);
      CHECK(std::fabs(lhs - rhs) <= 1e-9 * fam.Phi(O, Y, t2));
    }
  }
  // a non-integer exponent exercises the branch point at 0
  auto frac = MusielakFamily::power_over_log(ScalarField::constant(2.5), 1);
  frac.set_declared_bounds(1.5, 2.5);
  const double lhs = frac.Phi(O, Y, 1.5);
  const double rhs =
      oracle::simpson([&](double tau) { return frac.phi(O, Y, tau); }, 0.0, 1.5);
  CHECK(std::fabs(lhs - rhs) <= 1e-9 * lhs);
}

TEST_CASE("phi is strictly increasing on sampled grids") {
  for (const auto& fam : {power3(), power_over_log3(), power_times_log(2.0, 1.0)}) {
    double prev = 0.0;  // phi(0) = 0
    for (double t : log_grid(1e-6, 1e6, 49)) {
      const double v = fam.phi(O, Y, t);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("Phi monotone and convex on sampled grids") {
  for (const auto& fam : {power3(), power_over_log3(), power_times_log(2.0, 1.0)}) {
    const auto grid = log_grid(1e-3, 1e3, 31);
    double prev = 0.0;
    for (double t : grid) {
      const double v = fam.Phi(O, Y, t);
      CHECK(v > prev);
      prev = v;
    }
    for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
      const double d1 = (fam.Phi(O, Y, grid[i + 1]) - fam.Phi(O, Y, grid[i])) /
                        (grid[i + 1] - grid[i]);
      const double d2 = (fam.Phi(O, Y, grid[i + 2]) - fam.Phi(O, Y, grid[i + 1])) /
                        (grid[i + 2] - grid[i + 1]);
      CHECK(d2 - d1 >= -1e-12 * std::max(1.0, d2));
    }
  }
}

TEST_CASE("conjugate values and Young inequality") {
  auto p2 = MusielakFamily::power(ScalarField::constant(2.0), 1);
  p2.set_declared_bounds(2.0, 2.0);
  // phi = 2t, inverse t/2, conjugate t^2/4
  CHECK(p2.phi_bar(O, Y, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p2.Phi_bar(O, Y, 1.0) == doctest::Approx(0.25).epsilon(1e-12));

  // phi = 3 t^2, inverse sqrt(t/3); the conjugate at 3 integrates to 2
  const double expected = oracle::simpson(
      [](double tau) { return std::sqrt(tau / 3.0); }, 0.0, 3.0, 1e-13);
  CHECK(expected == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(power3().Phi_bar(O, Y, 3.0) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(power3().Phi_bar(O, Y, 0.0) == 0.0);
  CHECK_THROWS_AS(power3().Phi_bar(O, Y, -0.5), invalid_input_error);

  // numeric inverse agrees with the closed form on the power kind
  auto pol = power_over_log3();
  for (double u : {0.1, 0.8, 2.0, 7.0}) {
    const double s = pol.phi_bar(O, Y, u);
    CHECK(pol.phi(O, Y, s) == doctest::Approx(u).epsilon(1e-9));
  }

  for (const auto& fam : {power3(), power_over_log3(), power_times_log(2.0, 1.0)}) {
    for (double u : {0.0, 0.3, 1.7, 4.0}) {
      for (double v : {0.0, 0.2, 2.5, 6.0}) {
        CHECK(u * v <= fam.Phi(O, Y, u) + fam.Phi_bar(O, Y, v) + 1e-10);
      }
    }
  }
}

TEST_CASE("growth ratio bounds per family") {
  const auto pairs = box_point_pairs(make_point(0.0), make_point(1.0), 1, 4);
  const auto grid = log_grid(1e-6, 1e6, 49);

  SUBCASE("power: ratio is the exponent") {
    auto [lo, hi] = estimate_phi_bounds(power3(), grid, pairs);
    CHECK(std::fabs(lo - 3.0) <= 1e-12);
    CHECK(std::fabs(hi - 3.0) <= 1e-12);
  }
  SUBCASE("power over log: ratio in [p-1, p]") {
    auto [lo, hi] = estimate_phi_bounds(power_over_log3(), grid, pairs);
    CHECK(lo >= 2.0 - 1e-9);
    CHECK(hi <= 3.0 + 1e-9);
  }
  SUBCASE("power times log, no shift: limits p+1 at zero") {
    auto fam = power_times_log(2.0, 0.0);
    auto [lo, hi] = estimate_phi_bounds(fam, {1e-6}, pairs);
    CHECK(std::fabs(hi - 3.0) <= 1e-3);
    CHECK(std::fabs(lo - 3.0) <= 1e-3);
    // the approach to the exponent at infinity is logarithmically slow;
    // frozen from the closed form t^2 L - (t^2/2 - t + L), L = log(1+t)
    const double t = 1e6;
    const double L = std::log1p(t);
    const double frozen = 2.0 * t * t * L / (t * t * L - (t * t / 2.0 - t + L));
    auto [lo6, hi6] = estimate_phi_bounds(fam, {t}, pairs);
    CHECK(lo6 == doctest::Approx(frozen).epsilon(1e-9));
    CHECK(frozen == doctest::Approx(2.0751002258).epsilon(1e-9));
  }
  SUBCASE("power times log with shift: ratio tends to p at both ends") {
    auto fam = power_times_log(2.0, 1.0);
    auto [lo, hi] = estimate_phi_bounds(fam, {1e-6}, pairs);
    CHECK(std::fabs(lo - 2.0) <= 1e-3);
    auto [lo6, hi6] = estimate_phi_bounds(fam, {1e6}, pairs);
    CHECK(std::fabs(lo6 - 2.0) <= 0.1);
    CHECK(lo6 > 2.0);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(estimate_phi_bounds(power3(), {}, pairs), invalid_input_error);
    CHECK_THROWS_AS(estimate_phi_bounds(power3(), {0.0, 1.0}, pairs),
                    invalid_input_error);
  }
}

TEST_CASE("condition report") {
  const auto grid = log_grid(1e-6, 1e6, 41);
  const Point lo = make_point(0.0), hi = make_point(1.0);

  SUBCASE("affine power exponent in [2,3]") {
    auto fam = MusielakFamily::power(ScalarField::affine(2.0, make_point(1.0)), 1);
    fam.set_declared_bounds(2.0, 3.0);
    const auto rep = check_conditions(fam, lo, hi, 1e-8, grid);
    CHECK(rep.phi1_ok);
    CHECK(rep.phi2_ok);
    CHECK(rep.phi3_ok);
    CHECK(rep.delta2_ok);
    CHECK(rep.delta2_constant <= 8.0 + 1e-8);
    CHECK(rep.all_ok());
  }
  SUBCASE("quadratic power: Phi(sqrt(t)) is linear, hence convex") {
    auto fam = MusielakFamily::power(ScalarField::constant(2.0), 1);
    fam.set_declared_bounds(2.0, 2.0);
    CHECK(check_conditions(fam, lo, hi, 1e-8, grid).phi2_ok);
  }
  SUBCASE("log-augmented family passes the convexity check") {
    const auto rep = check_conditions(power_times_log(2.0, 1.0), lo, hi, 1e-8, grid);
    CHECK(rep.phi2_ok);
    CHECK(rep.delta2_ok);
  }
  SUBCASE("wrong declared bounds are reported with witnesses") {
    auto fam = MusielakFamily::power(ScalarField::constant(3.0), 1);
    fam.set_declared_bounds(3.5, 4.0);
    const auto rep = check_conditions(fam, lo, hi, 1e-8, grid);
    CHECK_FALSE(rep.phi1_ok);
    CHECK(rep.violations.size() > 0);
  }
  SUBCASE("diagonal family inherits the ratio bounds") {
    auto fam = power_over_log3();
    std::vector<std::pair<Point, Point>> diag;
    for (double x : {0.0, 0.25, 0.5, 1.0})
      diag.emplace_back(make_point(x), make_point(x));
    auto [rlo, rhi] = estimate_phi_bounds(fam, grid, diag);
    CHECK(rlo >= fam.phi_minus() - 1e-9);
    CHECK(rhi <= fam.phi_plus() + 1e-9);
  }
}
