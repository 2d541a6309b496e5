#pragma once

#include <memory>
#include <vector>

#include "muso/fields.hpp"
#include "muso/mesh.hpp"
#include "muso/musielak.hpp"
#include "muso/reaction.hpp"

namespace muso {

/// Everything a discrete evaluation needs: fractional order, reaction weight
/// lambda, kernel family, collar weight beta, reaction, mesh and the shared
/// pair quadrature, plus per-pair and per-cell caches of the spatial fields.
/// Mesh and quadrature are shared immutably so per-lambda copies are cheap.
struct ProblemSpec {
  double s = 0.3;
  double lambda = 0.0;
  MusielakFamily family;
  ScalarField beta;
  ReactionFamily reaction;
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const PairQuadrature> quad;

  // caches aligned with quad->pairs / quad->self_cells x quad->self_subs /
  // mesh->cells
  std::shared_ptr<const std::vector<double>> pair_p;
  std::shared_ptr<const std::vector<double>> self_p;    // [cell-block][sub]
  std::shared_ptr<const std::vector<double>> cell_phat; // p(x_i, x_i)
  std::shared_ptr<const std::vector<double>> cell_beta;
  std::shared_ptr<const std::vector<double>> cell_q;    // reaction exponent

  double q_minus = 0.0;
  double q_plus = 0.0;

  static ProblemSpec make(double s, double lambda, MusielakFamily family,
                          ScalarField beta, ReactionFamily reaction,
                          const DomainSpec& domain);

  ProblemSpec with_lambda(double lam) const {
    ProblemSpec p = *this;
    p.lambda = lam;
    return p;
  }

  const Mesh& m() const { return *mesh; }
  const PairQuadrature& pq() const { return *quad; }
};

}  // namespace muso
