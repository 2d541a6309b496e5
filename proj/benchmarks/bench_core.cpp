#include <benchmark/benchmark.h>

#include "muso/operators.hpp"
#include "muso/solver.hpp"
#include "muso/space.hpp"

using namespace muso;

namespace {

ProblemSpec make_problem(int cells_per_unit) {
  DomainSpec dom;
  dom.dim = 1;
  dom.omega_lo = make_point(0.0);
  dom.omega_hi = make_point(1.0);
  dom.h = 1.0 / cells_per_unit;
  dom.collar_width = 0.5;
  auto family = MusielakFamily::power(ScalarField::constant(3.0), 1);
  family.set_declared_bounds(3.0, 3.0);
  auto reaction = ReactionFamily::make(ReactionKind::PurePower,
                                       ScalarField::constant(2.0), 2.0, 1.0, 1,
                                       dom.omega_lo, dom.omega_hi);
  return ProblemSpec::make(0.3, 0.5, family, ScalarField::constant(1.0), reaction, dom);
}

void bm_pair_quadrature(benchmark::State& state) {
  DomainSpec dom;
  dom.dim = 1;
  dom.omega_lo = make_point(0.0);
  dom.omega_hi = make_point(1.0);
  dom.h = 1.0 / state.range(0);
  dom.collar_width = 0.5;
  const Mesh mesh = build_mesh(dom);
  for (auto _ : state) {
    PairQuadrature q = pair_quadrature(mesh, 0.3);
    benchmark::DoNotOptimize(q.pairs.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(pair_quadrature(mesh, 0.3).pairs.size()));
}
BENCHMARK(bm_pair_quadrature)->Arg(32)->Arg(64)->Arg(128);

void bm_modular(benchmark::State& state) {
  const ProblemSpec prob = make_problem(static_cast<int>(state.range(0)));
  Rng rng(1);
  const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(modular_rho_s(u, prob));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(prob.pq().pairs.size()));
}
BENCHMARK(bm_modular)->Arg(32)->Arg(64)->Arg(128);

void bm_luxemburg_norm(benchmark::State& state) {
  const ProblemSpec prob = make_problem(static_cast<int>(state.range(0)));
  Rng rng(2);
  const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(modular_norm(u, prob, 1e-9));
}
BENCHMARK(bm_luxemburg_norm)->Arg(32)->Arg(64);

void bm_energy(benchmark::State& state) {
  const ProblemSpec prob = make_problem(static_cast<int>(state.range(0)));
  Rng rng(3);
  const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(energy_J(u, prob));
}
BENCHMARK(bm_energy)->Arg(32)->Arg(64)->Arg(128);

void bm_gradient(benchmark::State& state) {
  const ProblemSpec prob = make_problem(static_cast<int>(state.range(0)));
  Rng rng(4);
  const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  for (auto _ : state) {
    auto g = gradient_J(u, prob);
    benchmark::DoNotOptimize(g.data());
  }
}
BENCHMARK(bm_gradient)->Arg(32)->Arg(64)->Arg(128);

void bm_identity_residuals(benchmark::State& state) {
  const ProblemSpec prob = make_problem(64);
  Rng rng(5);
  const DiscreteFunction u = DiscreteFunction::random(prob.m(), rng);
  const DiscreteFunction v = DiscreteFunction::random(prob.m(), rng);
  for (auto _ : state) {
    auto r = identity_residuals(u, v, prob);
    benchmark::DoNotOptimize(r.r2);
  }
}
BENCHMARK(bm_identity_residuals);

}  // namespace

BENCHMARK_MAIN();
