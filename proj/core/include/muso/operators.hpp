#pragma once

#include <vector>

#include "muso/function.hpp"
#include "muso/problem.hpp"

namespace muso {

/// Per-cell values of a nonlocal operator, restricted to one region.
struct OperatorField {
  const Mesh* mesh = nullptr;
  Region region = Region::Omega;
  std::vector<int> cell_ids;
  std::vector<double> value;  // aligned with cell_ids
};

/// Nonlocal elliptic operator at Omega cell centers:
///   value_i = (1/|c_i|) sum_{j != i} w_ij phi_{x_i,x_j}(D_s u) / |x_i-x_j|^s
/// with the sum over all quadrature partners (Omega and collar). The
/// within-cell block is omitted: for the piecewise-linear interpolant its
/// symmetric principal value cancels exactly at the cell center. Sharing the
/// pair list with the modulars makes the discrete Green and form identities
/// hold to roundoff.
OperatorField apply_fractional_laplacian(const DiscreteFunction& u,
                                         const ProblemSpec& prob);

/// Nonlocal flux at collar cell centers; partners range over Omega cells only.
OperatorField apply_neumann(const DiscreteFunction& u, const ProblemSpec& prob);

/// Symmetric weak form:
///   A_s(u, v) = sum_pairs w phi(D_s u) D_s v   (unordered sum; this realizes
///               the symmetrized 1/2 convention of the ordered double integral)
///             + sum_Omega |c| hat_phi(u) v + sum_Collar |c| beta hat_phi(u) v.
/// Linear in v, and A_s(u, u) >= 0.
double form_A_s(const DiscreteFunction& u, const DiscreteFunction& v,
                const ProblemSpec& prob);

struct IdentityResiduals {
  double r1 = 0.0;        // | integral of the operator + integral of the flux |
  double r1_scale = 0.0;  // sum of absolute summands
  double r2 = 0.0;        // | distinct-pair form part - operator pairing |
  double r2_scale = 0.0;
  std::vector<double> r3;        // per collar cell: flux + beta hat_phi(u)
  std::vector<int> r3_cell_ids;
  double r3_max = 0.0;
  double r3_scale = 0.0;  // max |flux| + |beta hat_phi(u)| over collar cells
};

/// Residuals of the discrete Green identity, the form/operator identity, and
/// the collar flux balance (meaningful at solver outputs).
IdentityResiduals identity_residuals(const DiscreteFunction& u,
                                     const DiscreteFunction& v,
                                     const ProblemSpec& prob);

}  // namespace muso
