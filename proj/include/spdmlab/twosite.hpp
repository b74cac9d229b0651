#pragma once

// Two-site GKLS + Hartree model in component form,
//   V = [[n1, c], [c*, n2]],  h1 = U n2,  h2 = U n1.

#include <cstddef>
#include <string>
#include <vector>

#include "spdmlab/dynamics.hpp"
#include "spdmlab/model.hpp"
#include "spdmlab/steady.hpp"

namespace spdm::twosite {

struct Params {
  double eps1 = 0.0;
  double eps2 = 0.5;
  double hopping = 0.3;  // J
  double gamma1 = 0.5;
  double gamma2 = 0.5;
  double f1 = 0.2;
  double f2 = 0.8;
  double u = 0.0;

  void validate() const;

  ComplexMatrix hamiltonian() const;
  /// U Adj on two sites: h1 = U V22, h2 = U V11.
  InteractionSpec interaction() const;
  BathSpec bath() const;
};

/// Resonant regime: eps1 = -0.4, eps2 = +0.4, J = 0.25.
Params resonant_params();

struct State {
  double n1 = 0.0;
  double n2 = 0.0;
  Complex c{0.0, 0.0};

  ComplexMatrix assemble() const;
  static State from_matrix(const ComplexMatrix& v);
};

/// Default initial condition [[0, 0.1], [0.1, 1]] before projection.
State default_initial_state();

/// Time derivative (n1', n2', c').
State rhs(const State& s, const Params& p);

struct Sample {
  double t = 0.0;
  double n1 = 0.0, n2 = 0.0;
  double re_c = 0.0, im_c = 0.0;
};

struct Run {
  std::vector<Sample> samples;
  State final_state;
  IntegrationStats stats;
};

/// Integrates the component equations; after every step the state is
/// assembled into a matrix and projected (when spec.clip). The initial state
/// is projected before the first step.
Run run(const Params& p, const State& s0, const IntegratorSpec& spec);

/// Long-time steady occupations from the time route and the fixed-point route.
struct SteadyPoint {
  double u = 0.0;
  double n1 = 0.0, n2 = 0.0;          // value at t_final
  double residual = 0.0;               // max|rhs| at t_final
  double n1_fixed = 0.0, n2_fixed = 0.0;
  double route_gap = 0.0;              // max over |n_i - n_i_fixed|
  bool steady = false;                 // residual < 1e-6
  bool fixed_point_ok = false;
  bool bistable = false;
  std::string flag;                    // empty when everything checked out
};

SteadyPoint steady_point(const Params& p, const State& s0, const IntegratorSpec& spec,
                         const FixedPointSpec& fp = {});

/// n1ss(U), n2ss(U) over an ascending grid. Points are independent and
/// evaluated on up to `jobs` threads; output order follows the grid.
std::vector<SteadyPoint> sweep_u(const Params& base, const std::vector<double>& u_grid,
                                 const State& s0, const IntegratorSpec& spec,
                                 const FixedPointSpec& fp = {}, unsigned jobs = 1);

struct DeltaPoint {
  double u = 0.0;
  double f2 = 0.0;
  double delta_n1 = 0.0;
  std::string flag;
};

/// Delta n1ss(U, f2) = n1ss(U, f2) - n1ss(0, f2), rows in (U, f2)
/// lexicographic order. The baseline is computed once per f2 value.
std::vector<DeltaPoint> sweep_delta_n1(const Params& base, const std::vector<double>& u_grid,
                                       const std::vector<double>& f2_grid, const State& s0,
                                       const IntegratorSpec& spec, unsigned jobs = 1);

/// Inclusive grid lo, lo+step, ... up to hi (within step/1e6).
std::vector<double> make_grid(double lo, double hi, double step);

}  // namespace spdm::twosite
