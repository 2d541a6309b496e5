#pragma once

#include <vector>

#include "muso/function.hpp"
#include "muso/problem.hpp"

namespace muso::detail {

inline std::vector<double> cell_values(const DiscreteFunction& u, const Mesh& m) {
  std::vector<double> ub(m.cells.size());
  for (std::size_t c = 0; c < m.cells.size(); ++c)
    ub[c] = m.cell_value(u.v, static_cast<int>(c));
  return ub;
}

/// Visit stored distinct pairs: f(pair_index, pair, p_ij, x_i, x_j).
template <class F>
inline void for_pairs(const ProblemSpec& prob, F&& f) {
  const auto& pairs = prob.pq().pairs;
  const auto& pp = *prob.pair_p;
  const auto& cells = prob.m().cells;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    f(k, pairs[k], pp[k], cells[pairs[k].i].center, cells[pairs[k].j].center);
}

/// Visit self-block subpairs: f(cell_id, corner_ids, sub, p_ab, x_a, x_b).
template <class F>
inline void for_self(const ProblemSpec& prob, F&& f) {
  const auto& q = prob.pq();
  const auto& sp = *prob.self_p;
  const Mesh& m = prob.m();
  const int nsub = static_cast<int>(q.self_subs.size());
  for (std::size_t b = 0; b < q.self_cells.size(); ++b) {
    const int ci = q.self_cells[b];
    const auto corners = m.cell_corners(ci);
    const Point c = m.cells[ci].center;
    for (int k = 0; k < nsub; ++k) {
      const auto& ss = q.self_subs[k];
      Point xa = c, xb = c;
      for (int d = 0; d < m.dim; ++d) {
        xa[d] += ss.off_a[d];
        xb[d] += ss.off_b[d];
      }
      f(ci, corners, ss, sp[b * nsub + k], xa, xb);
    }
  }
}

/// Difference of interpolated values across a self subpair.
inline double self_delta(const std::vector<double>& nodal,
                         const std::array<int, 4>& corners,
                         const PairQuadrature::SelfSub& ss, int ncorner) {
  double du = 0.0;
  for (int k = 0; k < ncorner; ++k) du += ss.dcoef[k] * nodal[corners[k]];
  return du;
}

}  // namespace muso::detail
