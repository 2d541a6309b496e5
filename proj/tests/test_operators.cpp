#include <cmath>

#include "doctest.h"

#include "muso/errors.hpp"
#include "muso/operators.hpp"
#include "muso/solver.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace muso;
namespace th = testing_helpers;

TEST_CASE("operators vanish on constants") {
  const ProblemSpec prob = th::power_problem(1.0 / 8.0, 0.5, 0.0, 2.0, 1.5, 1.0);
  const DiscreteFunction u = DiscreteFunction::constant(prob.m(), 4.2);
  for (double v : apply_fractional_laplacian(u, prob).value) CHECK(v == 0.0);
  for (double v : apply_neumann(u, prob).value) CHECK(v == 0.0);
}

TEST_CASE("operators are odd under sign flip") {
  const ProblemSpec prob = th::power_problem(1.0 / 8.0, 0.5, 0.0);
  Rng rng(17);
  DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  DiscreteFunction minus = u;
  minus.scale(-1.0);
  const auto a = apply_fractional_laplacian(u, prob);
  const auto b = apply_fractional_laplacian(minus, prob);
  for (std::size_t k = 0; k < a.value.size(); ++k) CHECK(a.value[k] == -b.value[k]);
}

TEST_CASE("operators match the brute-force double loop") {
  const ProblemSpec prob = th::power_problem(1.0 / 8.0, 0.5, 0.0, 2.0, 1.5, 1.0);
  SUBCASE("hat function, quadratic family") {
    const DiscreteFunction u = DiscreteFunction::from_fn(prob.m(), [](const Point& x) {
      return std::max(0.0, 1.0 - 2.0 * std::fabs(x[0] - 0.5));
    });
    const auto fast = apply_fractional_laplacian(u, prob);
    const auto slow = oracle::bf_laplacian(u, prob);
    REQUIRE(fast.value.size() == slow.size());
    for (std::size_t k = 0; k < slow.size(); ++k)
      CHECK(fast.value[k] == doctest::Approx(slow[k]).epsilon(1e-12));
  }
  SUBCASE("random fields, cubic family") {
    const ProblemSpec prob3 = th::power_problem(1.0 / 8.0, 0.3, 0.0);
    Rng rng(23);
    const DiscreteFunction u = DiscreteFunction::random(prob3.m(), rng);
    const auto fast = apply_neumann(u, prob3);
    const auto slow = oracle::bf_neumann(u, prob3);
    REQUIRE(fast.value.size() == slow.size());
    for (std::size_t k = 0; k < slow.size(); ++k)
      CHECK(fast.value[k] == doctest::Approx(slow[k]).epsilon(1e-12));
  }
}

TEST_CASE("collar cell above the Omega range has positive flux") {
  const ProblemSpec prob = th::power_problem(1.0 / 8.0, 0.5, 0.0);
  // 1 at every collar node, 0 on Omega: each collar-cell summand is positive
  const DiscreteFunction u = DiscreteFunction::from_fn(
      prob.m(), [](const Point& x) { return (x[0] < 0.0 || x[0] > 1.0) ? 1.0 : 0.0; });
  const auto flux = apply_neumann(u, prob);
  const Mesh& m = prob.m();
  for (std::size_t k = 0; k < flux.value.size(); ++k) {
    const double ub = m.cell_value(u.v, flux.cell_ids[k]);
    if (ub > 0.0) CHECK(flux.value[k] > 0.0);
  }
}

TEST_CASE("form: linearity, sign, and brute force") {
  const ProblemSpec prob = th::power_problem(1.0 / 8.0, 0.3, 0.0);
  Rng rng(29);
  const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  const DiscreteFunction v = DiscreteFunction::random(prob.m(), rng);
  const DiscreteFunction w = DiscreteFunction::random(prob.m(), rng);

  SUBCASE("zero left argument annihilates") {
    CHECK(form_A_s(DiscreteFunction::zeros(prob.m()), v, prob) == 0.0);
  }
  SUBCASE("constant left argument reduces to the mass pairing") {
    const double c = 1.3;
    const DiscreteFunction uc = DiscreteFunction::constant(prob.m(), c);
    double expected = 0.0;
    const Mesh& m = prob.m();
    for (std::size_t i = 0; i < m.cells.size(); ++i) {
      const double mass = prob.family.hat_phi(m.cells[i].center, c) *
                          m.cell_value(v.v, static_cast<int>(i)) * m.cells[i].measure;
      expected += m.cells[i].region == Region::Omega ? mass : 1.0 * mass;
    }
    CHECK(form_A_s(uc, v, prob) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("linear in the test argument") {
    DiscreteFunction av = v;
    av.scale(2.0);
    av.axpy(-3.0, w);
    const double lhs = form_A_s(u, av, prob);
    const double rhs = 2.0 * form_A_s(u, v, prob) - 3.0 * form_A_s(u, w, prob);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  SUBCASE("nonnegative on the diagonal") {
    Rng r2(31);
    for (int i = 0; i < 100; ++i) {
      DiscreteFunction x = DiscreteFunction::random(prob.m(), r2);
      x.scale(r2.uniform(0.1, 4.0));
      CHECK(form_A_s(x, x, prob) >= 0.0);
    }
  }
  SUBCASE("matches the ordered brute force") {
    CHECK(form_A_s(u, v, prob) ==
          doctest::Approx(oracle::bf_form(u, v, prob)).epsilon(1e-12));
  }
}

TEST_CASE("identity residuals vanish to roundoff") {
  const ProblemSpec prob = th::power_problem(1.0 / 16.0, 0.3, 0.0);
  Rng rng(37);
  for (int i = 0; i < 5; ++i) {
    const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
    const DiscreteFunction v = DiscreteFunction::random(prob.m(), rng);
    const auto res = identity_residuals(u, v, prob);
    CHECK(res.r1 <= 1e-12 * res.r1_scale);
    CHECK(res.r2 <= 1e-12 * res.r2_scale);
  }
}

TEST_CASE("identity residuals vanish on a 2D mesh as well") {
  const ProblemSpec prob = th::square_problem(0.25, 0.5, 0.0);
  Rng rng(39);
  const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  const DiscreteFunction v = DiscreteFunction::random(prob.m(), rng);
  const auto res = identity_residuals(u, v, prob);
  CHECK(res.r1 <= 1e-12 * res.r1_scale);
  CHECK(res.r2 <= 1e-12 * res.r2_scale);
  CHECK(form_A_s(u, v, prob) ==
        doctest::Approx(oracle::bf_form(u, v, prob)).epsilon(1e-12));
}

TEST_CASE("constant field: flux balance reduces to the Robin term") {
  const double c = 2.0, b = 0.7;
  const ProblemSpec prob = th::power_problem(1.0 / 8.0, 0.3, 0.0, 3.0, 2.0, b);
  const DiscreteFunction u = DiscreteFunction::constant(prob.m(), c);
  const auto res = identity_residuals(u, u, prob);
  CHECK(res.r1 == 0.0);
  CHECK(res.r2 == 0.0);
  const Point any = prob.m().cells[0].center;
  for (double r : res.r3)
    CHECK(r == doctest::Approx(b * prob.family.hat_phi(any, c)).epsilon(1e-12));
}

TEST_CASE("gradient components reproduce the form against nodal basis functions") {
  const ProblemSpec prob = th::power_problem(1.0 / 8.0, 0.3, 0.7);
  Rng rng(41);
  const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  const auto g = gradient_J(u, prob);
  const Mesh& m = prob.m();
  for (std::size_t k = 0; k < m.nodes.size(); k += 3) {
    DiscreteFunction e = DiscreteFunction::zeros(m);
    e.v[k] = 1.0;
    double reaction = 0.0;
    for (std::size_t c = 0; c < m.cells.size(); ++c) {
      if (m.cells[c].region != Region::Omega) continue;
      reaction += m.cells[c].measure *
                  prob.reaction.f(m.cells[c].center,
                                  m.cell_value(u.v, static_cast<int>(c))) *
                  m.cell_value(e.v, static_cast<int>(c));
    }
    const double expected = form_A_s(u, e, prob) - prob.lambda * reaction;
    CHECK(g[k] == doctest::Approx(expected).epsilon(1e-11));
  }
}
