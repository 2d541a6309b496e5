#include "muso/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "muso/errors.hpp"

namespace muso {

namespace {

int exact_cell_count(double length, double h, const char* what) {
  const double ratio = length / h;
  const int n = static_cast<int>(std::lround(ratio));
  if (n < 1 || std::fabs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    throw invalid_input_error(std::string(what) +
                              " is not an integer multiple of the mesh size h");
  return n;
}

}  // namespace

Mesh build_mesh(const DomainSpec& spec) {
  if (spec.dim != 1 && spec.dim != 2)
    throw invalid_input_error("dimension must be 1 or 2");
  if (!(spec.h > 0.0)) throw invalid_input_error("mesh size h must be positive");
  if (!(spec.collar_width >= spec.h))
    throw invalid_input_error("collar width must be at least h");

  Mesh m;
  m.spec = spec;
  m.dim = spec.dim;

  double min_side = spec.omega_hi[0] - spec.omega_lo[0];
  if (spec.dim == 2) min_side = std::min(min_side, spec.omega_hi[1] - spec.omega_lo[1]);
  if (!(spec.h < min_side))
    throw invalid_input_error("mesh size h must be smaller than the shortest side of Omega");

  // Collar truncated to whole cells inside the requested width.
  m.ncol = static_cast<int>(std::floor(spec.collar_width / spec.h + 1e-9));

  for (int k = 0; k < spec.dim; ++k) {
    m.nomega[k] = exact_cell_count(spec.omega_hi[k] - spec.omega_lo[k], spec.h,
                                   "Omega side length");
    m.ncell[k] = m.nomega[k] + 2 * m.ncol;
    m.nnode[k] = m.ncell[k] + 1;
    m.origin[k] = spec.omega_lo[k] - m.ncol * spec.h;
  }
  if (spec.dim == 1) {
    m.ncell[1] = 1;
    m.nnode[1] = 1;
  }

  const double h = spec.h;
  const double cell_measure = spec.dim == 1 ? h : h * h;
  auto axis_region = [&](int idx, int k) {
    return idx >= m.ncol && idx < m.ncol + m.nomega[k];
  };

  for (int iy = 0; iy < m.ncell[1]; ++iy) {
    for (int ix = 0; ix < m.ncell[0]; ++ix) {
      Cell c;
      c.center[0] = m.origin[0] + (ix + 0.5) * h;
      c.center[1] = spec.dim == 2 ? m.origin[1] + (iy + 0.5) * h : 0.0;
      c.measure = cell_measure;
      const bool in_omega =
          axis_region(ix, 0) && (spec.dim == 1 || axis_region(iy, 1));
      c.region = in_omega ? Region::Omega : Region::Collar;
      m.cells.push_back(c);
      if (in_omega) {
        ++m.omega_cell_count;
        m.omega_measure += cell_measure;
      } else {
        ++m.collar_cell_count;
        m.collar_measure += cell_measure;
      }
    }
  }

  auto node_in_omega_axis = [&](int idx, int k) {
    return idx >= m.ncol && idx <= m.ncol + m.nomega[k];
  };
  for (int iy = 0; iy < m.nnode[1]; ++iy) {
    for (int ix = 0; ix < m.nnode[0]; ++ix) {
      Node n;
      n.x[0] = m.origin[0] + ix * h;
      n.x[1] = spec.dim == 2 ? m.origin[1] + iy * h : 0.0;
      const bool in_omega =
          node_in_omega_axis(ix, 0) && (spec.dim == 1 || node_in_omega_axis(iy, 1));
      n.region = in_omega ? Region::Omega : Region::Collar;
      m.nodes.push_back(n);
    }
  }
  return m;
}

std::array<int, 4> Mesh::cell_corners(int c) const {
  const int ix = c % ncell[0];
  const int iy = c / ncell[0];
  if (dim == 1) return {ix, ix + 1, -1, -1};
  const int base = iy * nnode[0] + ix;
  return {base, base + 1, base + nnode[0], base + nnode[0] + 1};
}

double Mesh::cell_value(const std::vector<double>& nodal, int c) const {
  const auto corners = cell_corners(c);
  if (dim == 1) return 0.5 * (nodal[corners[0]] + nodal[corners[1]]);
  return 0.25 * (nodal[corners[0]] + nodal[corners[1]] + nodal[corners[2]] +
                 nodal[corners[3]]);
}

PairQuadrature pair_quadrature(const Mesh& mesh, double s) {
  if (!(s > 0.0 && s < 1.0)) throw invalid_input_error("s must lie in (0, 1)");

  PairQuadrature q;
  q.s = s;
  const int n = static_cast<int>(mesh.cells.size());
  const int dim = mesh.dim;

  for (int i = 0; i < n; ++i) {
    const Cell& ci = mesh.cells[i];
    for (int j = i + 1; j < n; ++j) {
      const Cell& cj = mesh.cells[j];
      if (ci.region == Region::Collar && cj.region == Region::Collar) continue;
      const double d = distance(ci.center, cj.center, dim);
      PairQuadrature::Pair p;
      p.i = i;
      p.j = j;
      p.w = ci.measure * cj.measure / (dim == 1 ? d : d * d);
      p.inv_ds = std::pow(d, -s);
      q.pairs.push_back(p);
    }
  }

  // Self blocks: 4 / 16 subcells; interpolation is linear within a cell, so
  // the subcell value difference is a fixed corner-weight combination.
  const double h = mesh.spec.h;
  const double hs = h / 4.0;
  const double m_sub = dim == 1 ? hs : hs * hs;
  struct Sub {
    Point off;
    double wt[4];  // interpolation weights at the subcell center
  };
  std::vector<Sub> subs;
  if (dim == 1) {
    for (int a = 0; a < 4; ++a) {
      const double xi = (2 * a + 1) / 8.0;  // unit-cell coordinate of the subcenter
      Sub sc;
      sc.off = make_point((xi - 0.5) * h);
      sc.wt[0] = 1.0 - xi;
      sc.wt[1] = xi;
      sc.wt[2] = sc.wt[3] = 0.0;
      subs.push_back(sc);
    }
  } else {
    for (int ay = 0; ay < 4; ++ay) {
      for (int ax = 0; ax < 4; ++ax) {
        const double xi = (2 * ax + 1) / 8.0;
        const double eta = (2 * ay + 1) / 8.0;
        Sub sc;
        sc.off = make_point((xi - 0.5) * h, (eta - 0.5) * h);
        sc.wt[0] = (1.0 - xi) * (1.0 - eta);
        sc.wt[1] = xi * (1.0 - eta);
        sc.wt[2] = (1.0 - xi) * eta;
        sc.wt[3] = xi * eta;
        subs.push_back(sc);
      }
    }
  }
  for (std::size_t a = 0; a < subs.size(); ++a) {
    for (std::size_t b = a + 1; b < subs.size(); ++b) {
      const double d = distance(subs[a].off, subs[b].off, dim);
      PairQuadrature::SelfSub ss;
      ss.off_a = subs[a].off;
      ss.off_b = subs[b].off;
      ss.w = m_sub * m_sub / (dim == 1 ? d : d * d);
      ss.inv_ds = std::pow(d, -s);
      for (int k = 0; k < 4; ++k) ss.dcoef[k] = subs[a].wt[k] - subs[b].wt[k];
      q.self_subs.push_back(ss);
    }
  }
  for (int i = 0; i < n; ++i)
    if (mesh.cells[i].region == Region::Omega) q.self_cells.push_back(i);
  return q;
}

double PairQuadrature::weight(int i, int j) const {
  if (i == j) return 0.0;
  const std::int32_t a = std::min(i, j), b = std::max(i, j);
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, b),
                             [](const Pair& p, const std::pair<int, int>& key) {
                               return p.i < key.first ||
                                      (p.i == key.first && p.j < key.second);
                             });
  if (it != pairs.end() && it->i == a && it->j == b) return it->w;
  return 0.0;
}

}  // namespace muso
