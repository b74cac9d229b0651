#pragma once

// Model construction: tight-binding Hamiltonians, baths, thermal targets,
// interaction matrices and the Hartree effective Hamiltonian.

#include <limits>
#include <string>
#include <vector>

#include "spdmlab/linalg.hpp"

namespace spdm {

struct RingSpec {
  Index n = 2;
  double hopping = 1.0;       // J
  std::vector<double> onsite; // epsilon_mu, length n
  bool periodic = true;

  void validate() const;
};

/// Symmetric real density-density interaction matrix U_{gamma delta}.
class InteractionSpec {
 public:
  InteractionSpec() = default;
  /// Symmetrizes the input; throws DomainError on non-finite entries.
  explicit InteractionSpec(const RealMatrix& u);

  /// U delta_{gamma delta}
  static InteractionSpec onsite(Index n, double u);
  /// U Adj_{gamma delta} for a chain/ring. For n == 2 there is a single bond
  /// regardless of `periodic`.
  static InteractionSpec nearest_neighbor(Index n, double u, bool periodic);
  static InteractionSpec zero(Index n);

  const RealMatrix& matrix() const { return u_; }
  Index size() const { return u_.rows(); }
  bool is_zero() const { return u_.size() == 0 || u_.cwiseAbs().maxCoeff() == 0.0; }
  InteractionSpec scaled(double factor) const;

 private:
  RealMatrix u_;
};

/// Local Lindblad baths: rates gamma_alpha >= 0 and targets f_alpha in [0,1].
struct BathSpec {
  RealVector gamma;
  RealVector f;

  void validate() const;
  Index size() const { return gamma.size(); }
  static BathSpec none(Index n);
};

enum class FermiBasis { site, env_eigenbasis };

struct ThermalTarget {
  double beta = 1.0;  // +infinity means zero temperature
  double mu = 0.0;
  FermiBasis basis = FermiBasis::site;

  void validate() const;
};

constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// M_{mu nu} = eps_mu delta_{mu nu} - J (delta_{mu,nu+1} + delta_{mu,nu-1}),
/// with the wrap-around bond only when `periodic` and n > 2.
ComplexMatrix build_ring_hamiltonian(const RingSpec& spec);

/// Two-site matrix [[eps1, -J], [-J, eps2]].
ComplexMatrix two_site_hamiltonian(double eps1, double eps2, double hopping);

/// Occupation 1 / (exp(beta (e - mu)) + 1); a step function at beta = inf
/// with value 1/2 within 1e-12 of mu.
double fermi_function(double energy, double beta, double mu);

/// Thermal SPDM for the environment block. In the site basis the on-site
/// energies (diagonal of M_EE) are occupied independently; in the
/// eigenbasis the Fermi function is applied to the spectrum of M_EE.
ComplexMatrix fermi_dirac_target(const ComplexMatrix& m_ee, const ThermalTarget& t);

/// h_gamma = sum_delta U_{gamma delta} Re V_{delta delta}
RealVector hartree_potential(const ComplexMatrix& v, const InteractionSpec& u);

/// diag(h(V))
ComplexMatrix hartree_matrix(const ComplexMatrix& v, const InteractionSpec& u);

/// M + diag(h(V)); returns M unchanged when the interaction is zero.
ComplexMatrix m_eff(const ComplexMatrix& m, const ComplexMatrix& v,
                    const InteractionSpec& u);

/// Reads a CSV file of plain real rows (no header). Blank lines and lines
/// starting with '#' are skipped.
RealMatrix load_real_matrix_csv(const std::string& path);

/// Reads reals from a CSV file, flattening all rows.
std::vector<double> load_real_sequence_csv(const std::string& path);

}  // namespace spdm
