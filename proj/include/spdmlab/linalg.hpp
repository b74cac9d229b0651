#pragma once

// Dense complex linear algebra shared by every other module. Matrices are
// Eigen dynamic-size containers; all functions are pure.

#include <complex>

#include <Eigen/Dense>

namespace spdm {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Split of the site index range into a leading subsystem block S of
/// `n_s` sites and a trailing environment block E of `n_e` sites.
struct Partition {
  Index n_s = 1;
  Index n_e = 1;

  /// Validating constructor; both blocks must be non-empty.
  static Partition make(Index n_s, Index n_e);
  Index size() const { return n_s + n_e; }
};

struct HermitianEig {
  RealVector eigenvalues;       // ascending
  ComplexMatrix eigenvectors;   // orthonormal columns

  /// Q diag(lambda) Q^dagger
  ComplexMatrix reconstruct() const;
};

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues come back ascending. Each eigenvector is phase-fixed so that
/// its largest-magnitude component (first one on ties) is real and positive,
/// which makes the output reproducible. Degenerate subspaces are returned in
/// whatever basis the solver produced; callers should only rely on
/// functions of the spectrum there.
///
/// Throws DimensionError for non-square input, DomainError if
/// max|H - H^dagger| >= 1e-9 (relative to max(1, max|H|)), and
/// ConvergenceError if the solver fails or the reconstruction residual
/// exceeds `tol * max(1, max|H|)`.
HermitianEig hermitian_eig(const ComplexMatrix& h, double tol = 1e-10);

/// Spectrum only; cheaper than hermitian_eig when no vectors are needed.
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

/// exp(-i M tau) for Hermitian M (hbar = 1), built from the spectral
/// decomposition of M.
ComplexMatrix propagator(const ComplexMatrix& m, double tau);

/// U V U^dagger
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& v);

/// Solves A x = b by LU with partial pivoting.
///
/// Rejects systems above 4096 unknowns. Raises SingularError when a pivot
/// falls below 1e-13 times the largest initial |A_ij|, or when the final
/// residual max|Ax - b| exceeds 1e-9 max|b|.
ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b);

struct Blocks {
  ComplexMatrix ss, se, es, ee;
};

Blocks block_split(const ComplexMatrix& v, const Partition& p);
ComplexMatrix block_join(const Blocks& b);

/// (H + H^dagger) / 2
ComplexMatrix hermitize(const ComplexMatrix& h);

/// max_ij |A_ij|; zero for empty matrices.
double max_abs(const ComplexMatrix& a);

/// max_ij |H - H^dagger|_ij
double hermiticity_residual(const ComplexMatrix& h);

/// A B - B A
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

void require_square(const ComplexMatrix& a, const char* what);
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what);

}  // namespace spdm
