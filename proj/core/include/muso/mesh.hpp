#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "muso/point.hpp"

namespace muso {

enum class Region { Omega, Collar };

/// Geometry of the computation: an axis-aligned box Omega plus a truncated
/// exterior collar of width collar_width (box distance), both meshed by one
/// uniform structured grid of size h.
struct DomainSpec {
  int dim = 1;
  Point omega_lo{};
  Point omega_hi{};
  double h = 1.0 / 64.0;
  double collar_width = 0.5;
};

struct Cell {
  Point center;
  double measure;
  Region region;
};

struct Node {
  Point x;
  Region region;
};

/// Uniform structured mesh over Omega and the collar. Nodal degrees of
/// freedom live at grid vertices; cell values are obtained by linear (1D) or
/// bilinear (2D) interpolation at cell centers. Index-based region tagging
/// keeps the Omega/Collar split exact.
struct Mesh {
  DomainSpec spec;
  int dim = 1;
  int ncell[2] = {0, 0};    // cells per axis over the expanded box
  int nnode[2] = {0, 0};
  int ncol = 0;             // collar cells per side per axis
  int nomega[2] = {0, 0};   // Omega cells per axis
  Point origin{};           // lower corner of the expanded box

  std::vector<Cell> cells;  // row-major
  std::vector<Node> nodes;  // row-major

  int omega_cell_count = 0;
  int collar_cell_count = 0;
  double omega_measure = 0.0;
  double collar_measure = 0.0;

  int corners_per_cell() const { return dim == 1 ? 2 : 4; }

  /// Node ids of a cell's corners; unused slots are -1 in 1D.
  std::array<int, 4> cell_corners(int c) const;

  /// Interpolated value at the center of cell c from nodal values.
  double cell_value(const std::vector<double>& nodal, int c) const;

  bool same_shape(const Mesh& o) const {
    return dim == o.dim && ncell[0] == o.ncell[0] && ncell[1] == o.ncell[1] &&
           spec.h == o.spec.h && origin[0] == o.origin[0] && origin[1] == o.origin[1];
  }
};

Mesh build_mesh(const DomainSpec& spec);

/// Symmetric pairwise quadrature for integrals against
/// d(mu) = |x - y|^{-N} dx dy over pairs with at least one Omega endpoint.
/// Distinct cells use the midpoint rule; each Omega cell additionally carries
/// a self block subdivided into 4 (1D) / 16 (2D) subcells, midpoint rule over
/// distinct subcell pairs. Weights store w = |c_i||c_j| / dist^N, and
/// inv_ds = dist^{-s} is cached for the difference quotients.
struct PairQuadrature {
  double s = 0.5;

  struct Pair {
    std::int32_t i, j;  // cell ids, i < j
    double w;
    double inv_ds;
  };
  std::vector<Pair> pairs;  // sorted by (i, j)

  /// Shared relative geometry of one self block (identical for every cell).
  struct SelfSub {
    Point off_a, off_b;          // subcell center offsets from the cell center
    double w;                    // m_sub^2 / dist^N
    double inv_ds;
    double dcoef[4];             // corner weights of (value_a - value_b)
  };
  std::vector<SelfSub> self_subs;
  std::vector<int> self_cells;   // Omega cell ids owning a self block

  /// Weight of the unordered distinct pair {i, j}; 0 if not stored.
  double weight(int i, int j) const;
};

PairQuadrature pair_quadrature(const Mesh& mesh, double s);

}  // namespace muso
