#include "spdmlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spdmlab/errors.hpp"

namespace spdm {

namespace {

constexpr Index kMaxLinearSystem = 4096;

double scale_of(const ComplexMatrix& a) { return std::max(1.0, max_abs(a)); }

void fix_phases(ComplexMatrix& q) {
  for (Index k = 0; k < q.cols(); ++k) {
    auto col = q.col(k);
    double best = 0.0;
    for (Index i = 0; i < col.size(); ++i) best = std::max(best, std::abs(col(i)));
    for (Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag >= best - 1e-12) {
        col *= std::conj(col(i)) / mag;
        col(i) = Complex(mag, 0.0);
        break;
      }
    }
  }
}

}  // namespace

Partition Partition::make(Index n_s, Index n_e) {
  if (n_s < 1 || n_e < 1) {
    throw DimensionError("partition needs n_s >= 1 and n_e >= 1, got n_s=" +
                         std::to_string(n_s) + " n_e=" + std::to_string(n_e));
  }
  return Partition{n_s, n_e};
}

ComplexMatrix HermitianEig::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix& h) {
  return max_abs(h - h.adjoint());
}

ComplexMatrix hermitize(const ComplexMatrix& h) {
  require_square(h, "hermitize");
  return 0.5 * (h + h.adjoint());
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

HermitianEig hermitian_eig(const ComplexMatrix& h, double tol) {
  require_square(h, "hermitian_eig");
  const double scale = scale_of(h);
  const double asym = hermiticity_residual(h);
  if (asym >= 1e-9 * scale) {
    throw DomainError("hermitian_eig: input is not Hermitian (max|H-H^dagger| = " +
                      std::to_string(asym) + ")");
  }
  if (h.rows() == 0) return {};

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(h),
                                                      Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian_eig: eigensolver did not converge",
                           std::numeric_limits<double>::infinity());
  }
  HermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(out.eigenvectors);

  const double residual = max_abs(out.reconstruct() - h);
  if (!(residual <= tol * scale)) {
    throw ConvergenceError("hermitian_eig: reconstruction residual " +
                               std::to_string(residual) + " above tolerance",
                           residual);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigenvalues");
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(h),
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian_eigenvalues: eigensolver did not converge",
                           std::numeric_limits<double>::infinity());
  }
  return solver.eigenvalues();
}

ComplexMatrix propagator(const ComplexMatrix& m, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw DomainError("propagator: tau must be finite and >= 0");
  }
  const HermitianEig eig = hermitian_eig(m);
  ComplexVector phases(eig.eigenvalues.size());
  for (Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k) * tau));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_square(u, "conjugate_by");
  require_same_shape(u, v, "conjugate_by");
  return u * v * u.adjoint();
}

ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b) {
  require_square(a, "solve_linear");
  if (a.rows() != b.size()) {
    throw DimensionError("solve_linear: right-hand side has " +
                         std::to_string(b.size()) + " entries, system has " +
                         std::to_string(a.rows()) + " rows");
  }
  if (a.rows() > kMaxLinearSystem) {
    throw DimensionError("solve_linear: system of " + std::to_string(a.rows()) +
                         " unknowns exceeds the dense limit of 4096");
  }
  if (a.rows() == 0) return {};

  const double entry_scale = max_abs(a);
  const Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const auto& packed = lu.matrixLU();
  for (Index k = 0; k < packed.rows(); ++k) {
    if (!(std::abs(packed(k, k)) >= 1e-13 * entry_scale) || entry_scale == 0.0) {
      throw SingularError("solve_linear: pivot " + std::to_string(k) +
                          " is zero to working tolerance");
    }
  }
  ComplexVector x = lu.solve(b);
  const double b_scale = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
  const double residual = (a * x - b).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-9 * b_scale) && residual > 0.0) {
    throw SingularError("solve_linear: residual " + std::to_string(residual) +
                        " too large; system is ill-conditioned");
  }
  return x;
}

Blocks block_split(const ComplexMatrix& v, const Partition& p) {
  require_square(v, "block_split");
  if (v.rows() != p.size()) {
    throw DimensionError("block_split: matrix of size " + std::to_string(v.rows()) +
                         " does not match partition " + std::to_string(p.n_s) +
                         "+" + std::to_string(p.n_e));
  }
  return Blocks{v.topLeftCorner(p.n_s, p.n_s), v.topRightCorner(p.n_s, p.n_e),
                v.bottomLeftCorner(p.n_e, p.n_s), v.bottomRightCorner(p.n_e, p.n_e)};
}

ComplexMatrix block_join(const Blocks& b) {
  const Index ns = b.ss.rows();
  const Index ne = b.ee.rows();
  if (b.ss.cols() != ns || b.ee.cols() != ne || b.se.rows() != ns ||
      b.se.cols() != ne || b.es.rows() != ne || b.es.cols() != ns) {
    throw DimensionError("block_join: inconsistent block shapes");
  }
  ComplexMatrix v(ns + ne, ns + ne);
  v << b.ss, b.se, b.es, b.ee;
  return v;
}

}  // namespace spdm
