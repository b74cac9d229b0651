#pragma once

// Right-hand sides and fixed-step integrators for the SPDM flow
//   dV/dt = i [V, M_eff(V)] - 1/2 {Gamma, V} + Gamma f      (hbar = 1)
// together with the Hermitize-and-clip projection onto physical SPDMs.

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "spdmlab/errors.hpp"
#include "spdmlab/linalg.hpp"
#include "spdmlab/model.hpp"

namespace spdm {

/// i [V, M] - 1/2 {Gamma, V} + Gamma f
ComplexMatrix rhs_affine(const ComplexMatrix& v, const ComplexMatrix& m,
                         const BathSpec& bath);

/// rhs_affine with M replaced by M + diag(h(V)).
ComplexMatrix rhs_hartree(const ComplexMatrix& v, const ComplexMatrix& m,
                          const InteractionSpec& u, const BathSpec& bath);

struct Projection {
  ComplexMatrix v;
  double min_eigenvalue = 0.0;  // spectrum of the Hermitized input
  double max_eigenvalue = 0.0;
  /// How far the input spectrum reached outside [0, 1]; zero when no
  /// eigenvalue had to move.
  double excursion() const;
};

/// V -> (V + V^dagger)/2, then clip the spectrum to [0, 1]. Inputs whose
/// spectrum already lies in [0, 1] (to 1e-13) come back only Hermitized.
Projection project_physical_report(const ComplexMatrix& v);
ComplexMatrix project_physical(const ComplexMatrix& v);

enum class Method { euler, rk4 };

Method parse_method(const std::string& name);
std::string to_string(Method m);

struct IntegratorSpec {
  Method method = Method::rk4;
  double dt = 1e-2;
  double t_final = 1.0;
  std::size_t sample_every = 1;
  bool clip = true;
  /// Compute the pre-projection spectrum every step even without clipping.
  bool track_spectrum = false;

  void validate() const;
  /// Number of steps; the final time steps() * dt is within dt/2 of t_final.
  std::size_t steps() const;
};

using Rhs = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Per-run numerical diagnostics.
struct IntegrationStats {
  std::size_t steps = 0;
  std::size_t clipped_steps = 0;
  double max_excursion = 0.0;
  /// Extremes of the pre-projection spectrum (NaN when never computed).
  double min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double max_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double max_antihermitian = 0.0;
};

template <class Record>
struct Trajectory {
  std::vector<double> times;
  std::vector<Record> records;
  ComplexMatrix final_state;
  IntegrationStats stats;
};

/// One explicit step of size dt (no projection).
ComplexMatrix step_explicit(const Rhs& rhs, const ComplexMatrix& v, double dt,
                            Method method);

namespace detail {
void check_state(const ComplexMatrix& v, std::size_t step);
void account_projection(const Projection& p, IntegrationStats& stats);
}  // namespace detail

/// Integrates from V0, recording observe(V) at t = 0, at every
/// `sample_every`-th step, and at the final step.
template <class Record, class Observe>
Trajectory<Record> integrate_observed(const Rhs& rhs, const ComplexMatrix& v0,
                                      const IntegratorSpec& spec, Observe&& observe) {
  spec.validate();
  require_square(v0, "integrate");
  detail::check_state(v0, 0);
  const std::size_t n_steps = spec.steps();

  Trajectory<Record> traj;
  traj.times.push_back(0.0);
  traj.records.push_back(observe(v0));

  ComplexMatrix v = v0;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    v = step_explicit(rhs, v, spec.dt, spec.method);
    detail::check_state(v, k);
    if (spec.clip || spec.track_spectrum) {
      Projection p = project_physical_report(v);
      detail::account_projection(p, traj.stats);
      if (spec.clip) v = std::move(p.v);
    }
    traj.stats.max_antihermitian =
        std::max(traj.stats.max_antihermitian, hermiticity_residual(v));
    if (k % spec.sample_every == 0 || k == n_steps) {
      traj.times.push_back(static_cast<double>(k) * spec.dt);
      traj.records.push_back(observe(v));
    }
  }
  traj.stats.steps = n_steps;
  traj.final_state = std::move(v);
  return traj;
}

/// Full-snapshot trajectory.
Trajectory<ComplexMatrix> integrate(const Rhs& rhs, const ComplexMatrix& v0,
                                    const IntegratorSpec& spec);

/// Final state only (no intermediate records).
ComplexMatrix integrate_to_end(const Rhs& rhs, const ComplexMatrix& v0,
                               const IntegratorSpec& spec,
                               IntegrationStats* stats = nullptr);

}  // namespace spdm
