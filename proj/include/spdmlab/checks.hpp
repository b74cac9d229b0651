#pragma once

// Verification checks shared by `spdmlab verify` and the acceptance runner.
// Each check computes one number, compares it against a fixed bound and
// never throws for a numerical mismatch; library errors are reported as a
// failed check with the message in `detail`.

#include <cstdint>
#include <string>
#include <vector>

#include "spdmlab/dynamics.hpp"
#include "spdmlab/experiments.hpp"
#include "spdmlab/twosite.hpp"

namespace spdm::checks {

struct CheckResult {
  std::string name;
  double value = 0.0;
  std::string bound;   // human-readable comparison, e.g. "<= 1e-08"
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

CheckResult car_identities();
CheckResult unitary_commutator_consistency(std::uint64_t seed);
CheckResult hartree_commutator_identity(std::uint64_t seed);

/// dn/dt = -gamma (n - f), gamma = 1, f = 0.5, n0 = 0, rk4 dt = 1e-3;
/// max error at t in {0.5, 1, 2}, bound 1e-8.
CheckResult single_mode_relaxation();

/// Off-diagonal decay rate fitted from M = 0 trajectories equals
/// (gamma_a + gamma_b)/2 to 1e-4 for three random rate pairs.
CheckResult decoherence_rates(std::uint64_t seed);

/// Exact many-body Lindblad vs the affine SPDM flow, t in [0, 20],
/// dt = 1e-3, bound 1e-6. n = 2 uses the two-site model from its default
/// initial SPDM; n = 3 a ring with a random bath from a random pure state.
CheckResult embedding(Index n, std::uint64_t seed);
/// Both of the above; value is the larger deviation.
CheckResult embedding_suite(std::uint64_t seed);

/// One RI stroke on Fock space vs ri_reset + conjugation at N = 3, N_S = 1.
CheckResult reset_map_oracle(std::uint64_t seed);

/// Two-site Lyapunov solution (U = 0) and Hartree fixed point (U = 2)
/// against rk4 integration to t = 200 with dt = 1e-3; bound 1e-6.
CheckResult steady_cross_validation();

/// Component right-hand side vs rhs_hartree on random states; bound 1e-12.
CheckResult component_matrix_equivalence(std::uint64_t seed, std::size_t samples = 1000);

/// Opposite monotone trends of n1ss(U) and n2ss(U) over `u_grid`.
CheckResult steady_monotonicity(const twosite::Params& base, const std::vector<double>& u_grid,
                                const IntegratorSpec& spec, unsigned jobs);

/// Delta n1ss >= -1e-9 over the grid (default regime).
CheckResult delta_nonnegative(const twosite::Params& base, const std::vector<double>& u_grid,
                              const std::vector<double>& f2_grid, const IntegratorSpec& spec,
                              unsigned jobs);

/// Delta n1ss takes both signs beyond 1e-4 somewhere on the grid.
CheckResult delta_sign_change(const twosite::Params& base, const std::vector<double>& u_grid,
                              const std::vector<double>& f2_grid, const IntegratorSpec& spec,
                              unsigned jobs);

/// RI and GKLS plateaus within 10% relative, both monotone in U, same
/// direction of shift.
CheckResult ring_agreement(const RingResult& ri, const RingResult& gkls);

/// Successive differences of every <n_S> series keep one sign (beyond
/// 1e-12) after the first `skip` entries.
CheckResult monotone_approach(const RingResult& res, std::size_t skip = 5);

/// Pre-projection spectra at U = 0 within [-1e-8, 1 + 1e-8] for the ring
/// reset, ring GKLS and two-site runs (all run with spectrum tracking).
CheckResult physicality_unprojected(const RingResult& ri, const RingResult& gkls,
                                    const std::vector<twosite::Run>& two_site_u0);

/// Post-projection spectra of every final state within [0, 1] (to 1e-12).
CheckResult physicality_projected(const std::vector<ComplexMatrix>& finals);

/// trace V(t) = trace V(0) under Gamma = 0 (rk4, dt = 1e-3, t = 10).
CheckResult trace_conservation(const ComplexMatrix& m, const ComplexMatrix& v0);

/// err(0.2)/err(0.1) for the N = 2 oracle scan at t_probe = 0.5, required
/// in [3, 5].
CheckResult hartree_error_scaling();

/// The fast invariant suite run by `spdmlab verify`.
std::vector<CheckResult> verify_suite(std::uint64_t seed);

/// check_name, value, bound, pass (plus detail, seconds).
void write_report(const std::vector<CheckResult>& results, const std::string& path);

/// One line per check: "PASS|FAIL  name  value (bound)  [detail]".
std::string format_line(const CheckResult& r);

}  // namespace spdm::checks
