#include <cmath>

#include "doctest.h"

#include "muso/errors.hpp"
#include "muso/sobolev.hpp"

using namespace muso;

namespace {
MusielakFamily power(double p) {
  auto f = MusielakFamily::power(ScalarField::constant(p), 1);
  f.set_declared_bounds(p, p);
  return f;
}
const std::vector<Point> xs = {make_point(0.0), make_point(0.5), make_point(1.0)};
}  // namespace

TEST_CASE("integrability verdicts follow the s p < N rule") {
  for (double p : {2.0, 3.0}) {
    for (double s : {0.3, 0.6, 0.9}) {
      const auto rep = sobolev_conjugate_diag(power(p), s, 1, xs);
      const bool expect = s * p < 1.0;
      CHECK(rep.all_converge_at_zero() == expect);
      // for the power kind both conditions flip together
      CHECK(rep.all_diverge_at_inf() == expect);
    }
  }
  // 2D: p = 3, s = 0.5 -> s p = 1.5 < 2 holds
  const auto rep2 = sobolev_conjugate_diag(power(3.0), 0.5, 2, xs);
  CHECK(rep2.all_converge_at_zero());
}

TEST_CASE("fitted exponents match the closed form") {
  // inverse of t^p is t^{1/p}; integrand exponent near 0 is 1/p - (1+s)
  const double p = 3.0, s = 0.3;
  const auto rep = sobolev_conjugate_diag(power(p), s, 1, {make_point(0.25)});
  REQUIRE(rep.points.size() == 1);
  CHECK(rep.points[0].exponent_near_zero ==
        doctest::Approx(1.0 / p - (1.0 + s)).epsilon(1e-6));
  CHECK(rep.points[0].exponent_near_inf ==
        doctest::Approx(1.0 / p - (1.0 + s)).epsilon(1e-6));
}

TEST_CASE("conjugate table is positive and increasing when defined") {
  const auto rep = sobolev_conjugate_diag(power(3.0), 0.3, 1, {make_point(0.5)});
  REQUIRE(rep.points.size() == 1);
  const auto& tab = rep.points[0].table_inv_conj;
  REQUIRE(tab.size() > 10);
  for (std::size_t i = 1; i < tab.size(); ++i) {
    CHECK(tab[i] > 0.0);
    CHECK(tab[i] > tab[i - 1]);
  }
}

TEST_CASE("the reaction growth is dominated by the conjugate target") {
  const std::function<double(const Point&, double)> B = [](const Point&, double t) {
    return t * t;
  };
  const auto rep = sobolev_conjugate_diag(power(3.0), 0.3, 1, xs, &B);
  CHECK(rep.dominance.checked);
  CHECK(rep.dominance.ok);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(sobolev_conjugate_diag(power(2.0), 1.5, 1, xs), invalid_input_error);
  CHECK_THROWS_AS(sobolev_conjugate_diag(power(2.0), 0.5, 0, xs), invalid_input_error);
}
