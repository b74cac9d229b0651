#include "spdmlab/random.hpp"

#include <Eigen/QR>

namespace spdm {

ComplexMatrix Rng::hermitian(Index n) {
  ComplexMatrix a(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) a(r, c) = complex_uniform();
  }
  return hermitize(a);
}

ComplexMatrix Rng::unitary(Index n) {
  ComplexMatrix a(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) a(r, c) = complex_uniform();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

ComplexMatrix Rng::spdm(Index n) {
  const ComplexMatrix q = unitary(n);
  RealVector lambda(n);
  for (Index k = 0; k < n; ++k) lambda(k) = uniform();
  return hermitize(q * lambda.cast<Complex>().asDiagonal() * q.adjoint());
}

ComplexVector Rng::unit_vector(Index n) {
  ComplexVector v(n);
  for (Index k = 0; k < n; ++k) v(k) = complex_uniform();
  return v / v.norm();
}

}  // namespace spdm
