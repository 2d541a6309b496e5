#pragma once

#include <functional>
#include <vector>

#include "muso/mesh.hpp"
#include "muso/rng.hpp"

namespace muso {

/// Nodal values on Omega and collar nodes of a mesh, interpreted through the
/// mesh's piecewise (multi)linear interpolation. Functions are undefined
/// beyond the collar and never sampled there.
struct DiscreteFunction {
  const Mesh* mesh = nullptr;
  std::vector<double> v;

  static DiscreteFunction zeros(const Mesh& m);
  static DiscreteFunction constant(const Mesh& m, double c);
  static DiscreteFunction from_fn(const Mesh& m,
                                  const std::function<double(const Point&)>& f);
  /// t0 on Omega-tagged nodes, 0 on collar nodes.
  static DiscreteFunction omega_indicator(const Mesh& m, double t0);
  /// I.i.d. nodal values uniform in [-1, 1).
  static DiscreteFunction random(const Mesh& m, Rng& rng);

  std::size_t size() const { return v.size(); }
  double cell_value(int c) const { return mesh->cell_value(v, c); }

  DiscreteFunction& scale(double a);
  DiscreteFunction& axpy(double a, const DiscreteFunction& x);  // *this += a x
};

DiscreteFunction operator+(const DiscreteFunction& a, const DiscreteFunction& b);
DiscreteFunction operator-(const DiscreteFunction& a, const DiscreteFunction& b);
DiscreteFunction operator*(double a, const DiscreteFunction& u);

/// Throws invalid_input_error unless u lives on mesh m.
void require_same_mesh(const DiscreteFunction& u, const Mesh& m);

}  // namespace muso
