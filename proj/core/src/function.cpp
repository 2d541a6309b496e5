#include "muso/function.hpp"

#include "muso/errors.hpp"

namespace muso {

DiscreteFunction DiscreteFunction::zeros(const Mesh& m) {
  return {&m, std::vector<double>(m.nodes.size(), 0.0)};
}

DiscreteFunction DiscreteFunction::constant(const Mesh& m, double c) {
  return {&m, std::vector<double>(m.nodes.size(), c)};
}

DiscreteFunction DiscreteFunction::from_fn(
    const Mesh& m, const std::function<double(const Point&)>& f) {
  DiscreteFunction u = zeros(m);
  for (std::size_t k = 0; k < m.nodes.size(); ++k) u.v[k] = f(m.nodes[k].x);
  return u;
}

DiscreteFunction DiscreteFunction::omega_indicator(const Mesh& m, double t0) {
  DiscreteFunction u = zeros(m);
  for (std::size_t k = 0; k < m.nodes.size(); ++k)
    u.v[k] = m.nodes[k].region == Region::Omega ? t0 : 0.0;
  return u;
}

DiscreteFunction DiscreteFunction::random(const Mesh& m, Rng& rng) {
  DiscreteFunction u = zeros(m);
  for (auto& x : u.v) x = rng.symmetric();
  return u;
}

DiscreteFunction& DiscreteFunction::scale(double a) {
  for (auto& x : v) x *= a;
  return *this;
}

DiscreteFunction& DiscreteFunction::axpy(double a, const DiscreteFunction& x) {
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += a * x.v[k];
  return *this;
}

DiscreteFunction operator+(const DiscreteFunction& a, const DiscreteFunction& b) {
  DiscreteFunction r = a;
  return r.axpy(1.0, b);
}

DiscreteFunction operator-(const DiscreteFunction& a, const DiscreteFunction& b) {
  DiscreteFunction r = a;
  return r.axpy(-1.0, b);
}

DiscreteFunction operator*(double a, const DiscreteFunction& u) {
  DiscreteFunction r = u;
  return r.scale(a);
}

void require_same_mesh(const DiscreteFunction& u, const Mesh& m) {
  if (u.mesh == nullptr || u.v.size() != m.nodes.size() ||
      (u.mesh != &m && !u.mesh->same_shape(m)))
    throw invalid_input_error("discrete function does not live on this mesh");
}

}  // namespace muso
