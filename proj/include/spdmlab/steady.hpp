#pragma once

// Steady states of the SPDM flows.
//
//  * steady_affine   zero of i[V,M] - {Gamma,V}/2 + Gamma f (continuous Lyapunov)
//  * steady_ri       fixed point of V = A V A^dagger + B (Stein)
//  * steady_hartree  damped Picard iteration on the Hartree-shifted Lyapunov problem

#include <cstddef>
#include <optional>
#include <vector>

#include "spdmlab/linalg.hpp"
#include "spdmlab/model.hpp"
#include "spdmlab/resetting.hpp"

namespace spdm {

/// Vectorized (Kronecker) solves are used up to this many sites; larger
/// problems go through a complex Schur (Bartels-Stewart) solve.
inline constexpr Index kVectorizedSteadyLimit = 32;

enum class LyapunovRoute { automatic, vectorized, schur };

/// Solves A V + V A^dagger = -Gamma f with A = -iM - Gamma/2.
/// Throws SingularError when the steady state is not unique (an undamped
/// component of M, or a dark mode).
ComplexMatrix steady_affine(const ComplexMatrix& m, const BathSpec& bath,
                            LyapunovRoute route = LyapunovRoute::automatic);

/// Solves V = A V A^dagger + B. Throws SingularError if the spectral radius
/// of A is not below one.
ComplexMatrix steady_ri(const AffineMap& map);

struct FixedPointSpec {
  double eta = 0.5;     // damping, in (0, 1]
  double tol = 1e-10;   // on max|V_{k+1} - V_k|
  std::size_t max_iter = 500;
  /// Starting point; diag(f) when empty.
  std::optional<ComplexMatrix> init;

  void validate() const;
};

struct HartreeFixedPoint {
  ComplexMatrix v;
  std::size_t iterations = 0;
  double step = 0.0;       // last max|V_{k+1} - V_k|
  double residual = 0.0;   // max|rhs_hartree(V*)|
  std::vector<double> history;
};

/// Damped Picard iteration V <- (1-eta) V + eta * steady_affine(M_eff(V), bath).
/// Raises ConvergenceError (carrying the step history) after max_iter.
HartreeFixedPoint steady_hartree(const ComplexMatrix& m, const InteractionSpec& u,
                                 const BathSpec& bath, const FixedPointSpec& spec = {});

struct ContinuationPoint {
  double u = 0.0;
  HartreeFixedPoint from_target;     // started at diag(f)
  HartreeFixedPoint from_previous;   // started at the previous grid point
  double disagreement = 0.0;
  bool bistable = false;             // disagreement > 1e-6
};

/// Sweeps U (ascending) over `unit.scaled(U)`, solving each point from the
/// bath target and by continuation, and flags disagreements.
std::vector<ContinuationPoint> hartree_continuation_sweep(
    const ComplexMatrix& m, const InteractionSpec& unit, const BathSpec& bath,
    const std::vector<double>& u_grid, const FixedPointSpec& spec = {});

struct EcCalibration {
  double gamma = 0.0;      // uniform environment rate
  double rms_mismatch = 0.0;
};

/// Fits a uniform environment damping rate gamma (targets f = diag F_E on
/// E, zero rate on S) so that the continuous flow sampled at multiples of
/// tau reproduces the EC stroboscopic subsystem occupation over
/// `n_strokes` strokes from `v0`. Golden-section search in log(gamma) on
/// [1e-3, 1e2].
EcCalibration calibrate_ec_rate(const ComplexMatrix& m, const ComplexMatrix& f_e,
                                const Partition& p, double tau, std::size_t n_strokes,
                                const ComplexMatrix& v0);

}  // namespace spdm
