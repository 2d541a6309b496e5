#include "muso/problem.hpp"

#include <cmath>
#include <sstream>

#include "muso/errors.hpp"

namespace muso {

ProblemSpec ProblemSpec::make(double s, double lambda, MusielakFamily family,
                              ScalarField beta, ReactionFamily reaction,
                              const DomainSpec& domain) {
  if (!(s > 0.0 && s < 1.0)) throw validation_error("s in (0,1) violated");
  if (!(lambda >= 0.0)) throw validation_error("lambda >= 0 violated");
  if (family.dim() != domain.dim || reaction.dim() != domain.dim)
    throw validation_error("family/reaction dimension does not match the domain");

  ProblemSpec p;
  p.s = s;
  p.lambda = lambda;
  p.family = std::move(family);
  p.beta = beta;
  p.reaction = std::move(reaction);

  auto mesh = std::make_shared<Mesh>(build_mesh(domain));

  // Cross-field constraints. The reaction exponent must stay strictly below
  // the kernel's lower growth bound; the boundary case is rejected rather
  // than guessed.
  p.q_minus = p.reaction.q_min(domain.omega_lo, domain.omega_hi);
  p.q_plus = p.reaction.q_max(domain.omega_lo, domain.omega_hi);
  if (!(p.q_plus < p.family.phi_minus())) {
    std::ostringstream os;
    os << "q_plus < phi_minus violated (q_plus = " << p.q_plus
       << ", phi_minus = " << p.family.phi_minus() << ")";
    throw validation_error(os.str());
  }

  Point box_lo = mesh->origin;
  Point box_hi{};
  for (int k = 0; k < domain.dim; ++k)
    box_hi[k] = mesh->origin[k] + mesh->ncell[k] * domain.h;
  if (beta.min_on_box(box_lo, box_hi, domain.dim) < 0.0)
    throw validation_error("beta >= 0 on the collar violated");

  auto quad = std::make_shared<PairQuadrature>(pair_quadrature(*mesh, s));

  auto pair_p = std::make_shared<std::vector<double>>();
  pair_p->reserve(quad->pairs.size());
  for (const auto& pr : quad->pairs)
    pair_p->push_back(p.family.exponent(mesh->cells[pr.i].center,
                                        mesh->cells[pr.j].center));

  auto self_p = std::make_shared<std::vector<double>>();
  self_p->reserve(quad->self_cells.size() * quad->self_subs.size());
  for (int ci : quad->self_cells) {
    const Point c = mesh->cells[ci].center;
    for (const auto& ss : quad->self_subs) {
      Point a = c, b = c;
      for (int k = 0; k < domain.dim; ++k) {
        a[k] += ss.off_a[k];
        b[k] += ss.off_b[k];
      }
      self_p->push_back(p.family.exponent(a, b));
    }
  }

  auto cell_phat = std::make_shared<std::vector<double>>();
  auto cell_beta = std::make_shared<std::vector<double>>();
  auto cell_q = std::make_shared<std::vector<double>>();
  cell_phat->reserve(mesh->cells.size());
  cell_beta->reserve(mesh->cells.size());
  cell_q->reserve(mesh->cells.size());
  for (const auto& c : mesh->cells) {
    cell_phat->push_back(p.family.exponent(c.center, c.center));
    cell_beta->push_back(c.region == Region::Collar ? beta(c.center, domain.dim) : 0.0);
    cell_q->push_back(c.region == Region::Omega ? p.reaction.q(c.center) : 0.0);
  }

  p.mesh = std::move(mesh);
  p.quad = std::move(quad);
  p.pair_p = std::move(pair_p);
  p.self_p = std::move(self_p);
  p.cell_phat = std::move(cell_phat);
  p.cell_beta = std::move(cell_beta);
  p.cell_q = std::move(cell_q);
  return p;
}

}  // namespace muso
