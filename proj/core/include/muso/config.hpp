#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "muso/fields.hpp"
#include "muso/mesh.hpp"
#include "muso/musielak.hpp"
#include "muso/problem.hpp"
#include "muso/reaction.hpp"

namespace muso {

struct SolverConfig {
  std::string mode = "auto";  // auto | ball | global
  double rho = 0.5;
  double tol_grad = 1e-8;
  int max_iter = 100000;
  double t0 = 2.0;
  int multistart_random = 4;
  double lux_tol = 1e-9;
};

struct VerifyConfig {
  int n_samples = 100;
  double tol = 1e-8;
  int n_green = 50;
  int n_gradcheck = 20;
  double fd_step = 1e-6;
  double t_min = 1e-6;
  double t_max = 1e6;
  int n_t = 49;
  int n_xy = 4;
  int n_sphere = 200;
};

/// Fully validated run configuration; a run is a pure function of
/// (RunConfig, seed). Parsing fills documented defaults and echoes them back
/// through canonical_json().
struct RunConfig {
  DomainSpec domain;  // default: 1D Omega = (0,1), h = 1/64, collar 0.5

  FamilyKind family_kind = FamilyKind::Power;
  ScalarField p_field = ScalarField::constant(3.0);
  double alpha = 0.0;
  double phi_minus = 3.0;  // derived from the kind when not given
  double phi_plus = 3.0;

  ReactionKind reaction_kind = ReactionKind::PurePower;
  ScalarField q_field = ScalarField::constant(2.0);
  double c1 = 2.0;  // derived when not given
  double c2 = 1.0;

  ScalarField beta = ScalarField::constant(1.0);

  double s = 0.3;
  double lambda = 0.1;
  std::uint64_t seed = 0;

  SolverConfig solver;
  VerifyConfig verify;
  std::vector<double> sweep_lambdas;

  MusielakFamily make_family() const;
  ReactionFamily make_reaction() const;  // growth bounds validated
  ProblemSpec make_problem() const;      // full cross-field validation

  /// Canonical serialized form (sorted keys, defaults included).
  std::string canonical_json() const;

  bool operator==(const RunConfig& o) const {
    return canonical_json() == o.canonical_json();
  }
};

/// Throws io_error for a missing/unreadable/malformed file and
/// validation_error for a constraint violation.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_json(const std::string& text);

}  // namespace muso
