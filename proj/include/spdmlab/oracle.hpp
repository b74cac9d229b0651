#pragma once

// Exact Fock-space reference for small lattices (N <= 4 sites).
//
// Fermion operators follow the Jordan-Wigner construction with site 0 as
// the leftmost tensor factor (most significant bit of the basis index);
// the sign string counts occupied sites to the left of the target.
//
// SPDM convention: element (alpha, beta) of the extracted matrix is
// <a_beta^dagger a_alpha>. For a single particle in orbital psi this is
// psi psi^dagger, and under H0 = sum a^dagger M a the matrix evolves as
// U V U^dagger with U = exp(-i M t), matching the SPDM flow in `dynamics`.

#include <cstddef>
#include <optional>
#include <vector>

#include "spdmlab/dynamics.hpp"
#include "spdmlab/linalg.hpp"
#include "spdmlab/model.hpp"

namespace spdm::oracle {

inline constexpr Index kMaxSites = 4;

class FockOperators {
 public:
  /// Builds a_0..a_{n-1} and checks the anticommutation relations;
  /// throws DomainError for n outside [1, 4].
  explicit FockOperators(Index n);

  Index sites() const { return n_; }
  Index dim() const { return Index{1} << n_; }
  const ComplexMatrix& annihilate(Index alpha) const { return a_[static_cast<std::size_t>(alpha)]; }
  ComplexMatrix create(Index alpha) const { return annihilate(alpha).adjoint(); }
  ComplexMatrix number(Index alpha) const { return create(alpha) * annihilate(alpha); }

  /// max entry of {a_i, a_j^dagger} - delta_ij and {a_i, a_j} over all pairs.
  double car_residual() const;

 private:
  Index n_;
  std::vector<ComplexMatrix> a_;
};

/// sum M_{mu nu} a_mu^dagger a_nu + 1/2 sum U_{gd} n_g n_d
ComplexMatrix build_hamiltonian_many_body(const ComplexMatrix& m, const InteractionSpec& u,
                                          const FockOperators& ops);

/// -i[H, rho] + sum_alpha (D[L-](rho) + D[L+](rho)) with
/// L- = sqrt(gamma (1 - f)) a, L+ = sqrt(gamma f) a^dagger.
ComplexMatrix lindblad_rhs_many_body(const ComplexMatrix& rho, const ComplexMatrix& h,
                                     const BathSpec& bath, const FockOperators& ops);

ComplexMatrix extract_spdm(const ComplexMatrix& rho, const FockOperators& ops);

/// Product state with independent site occupations n_alpha.
ComplexMatrix product_state(const RealVector& occupations);

/// Quasi-free state with SPDM V: with V = Q diag(lambda) Q^dagger and
/// b_k^dagger = sum_alpha Q_{alpha k} a_alpha^dagger, the product over k of
/// lambda_k n_k + (1 - lambda_k)(1 - n_k). V must be physical.
ComplexMatrix gaussian_state(const ComplexMatrix& v, const FockOperators& ops);

/// |psi><psi| / <psi|psi> for a Fock-space vector.
ComplexMatrix pure_state(const ComplexVector& psi);

/// Fock vector with the given sites occupied, in ascending site order:
/// a_{s_1}^dagger ... a_{s_k}^dagger |0>.
ComplexVector fock_state(const std::vector<Index>& occupied, const FockOperators& ops);

struct EmbeddingReport {
  std::vector<double> times;
  std::vector<double> deviation;  // max|V_exact - V_affine| per sample
  double max_deviation = 0.0;
  double max_trace_error = 0.0;   // |tr rho - 1|
  double min_eigenvalue = 0.0;    // smallest eigenvalue of rho seen at samples
};

/// Integrates the many-body master equation and the affine SPDM flow (rk4,
/// no projection) from matching initial data and compares the SPDMs every
/// `sample_every` steps.
EmbeddingReport verify_embedding(const ComplexMatrix& m, const BathSpec& bath,
                                 const ComplexMatrix& rho0, double t_final, double dt,
                                 std::size_t sample_every = 100);

struct HartreeErrorPoint {
  double u = 0.0;
  double error = 0.0;  // max|V_exact - V_hartree| at t_probe
};

/// Exact interacting dynamics (H0 + H_int with unit.scaled(U)) against the
/// Hartree SPDM flow, both rk4 with step dt, compared at t_probe.
std::vector<HartreeErrorPoint> hartree_error_scan(const ComplexMatrix& m,
                                                  const InteractionSpec& unit,
                                                  const BathSpec& bath,
                                                  const ComplexMatrix& rho0,
                                                  const std::vector<double>& u_grid,
                                                  double t_probe, double dt = 1e-3);

/// Many-body reset: rho -> tr_E(rho) (x) rho_E with rho_E the product state
/// of the diagonal occupations of F_E. Only diagonal F_E is supported.
ComplexMatrix reset_environment(const ComplexMatrix& rho, const ComplexMatrix& f_e,
                                const Partition& p);

struct ResetMapCheck {
  /// many-body stroke vs conjugate_by(U, ri_reset(V)) on the full SPDM
  double full_deviation = 0.0;
  /// S block vs U_SS V_S U_SS^dagger + U_SE F_E U_SE^dagger
  double hermitian_source_deviation = 0.0;
  /// S block vs U_SS V_S U_SS^dagger + U_SE F_E U_ES^dagger; that product
  /// only conforms when n_s == n_e, otherwise empty.
  std::optional<double> transposed_index_deviation;
};

/// One RI stroke computed on Fock space and at the SPDM level.
ResetMapCheck check_reset_stroke(const ComplexMatrix& m, const ComplexMatrix& f_e,
                                 const Partition& p, double tau, const ComplexMatrix& rho0);

}  // namespace spdm::oracle
