#include <cmath>

#include <doctest.h>

#include "spdmlab/dynamics.hpp"
#include "spdmlab/errors.hpp"
#include "spdmlab/oracle.hpp"
#include "spdmlab/random.hpp"
#include "spdmlab/resetting.hpp"
#include "spdmlab/twosite.hpp"
#include "test_support.hpp"

using namespace spdm;
using spdm::test::max_diff;

namespace {

BathSpec random_bath(Rng& rng, Index n) {
  BathSpec b = BathSpec::none(n);
  for (Index a = 0; a < n; ++a) {
    b.gamma(a) = rng.uniform(0.2, 1.0);
    b.f(a) = rng.uniform(0.1, 0.9);
  }
  return b;
}

IntegratorSpec plain_rk4(double dt, double t_final) {
  IntegratorSpec s;
  s.method = Method::rk4;
  s.dt = dt;
  s.t_final = t_final;
  s.sample_every = 1;
  s.clip = false;
  return s;
}

}  // namespace

TEST_CASE("Fock operators satisfy the anticommutation relations") {
  for (Index n = 1; n <= 4; ++n) {
    const oracle::FockOperators ops(n);
    CHECK(ops.dim() == (Index{1} << n));
    CHECK(ops.car_residual() == 0.0);
  }
  CHECK_THROWS_AS(oracle::FockOperators(5), DomainError);
  CHECK_THROWS_AS(oracle::FockOperators(0), DomainError);
}

TEST_CASE("extract_spdm on simple states") {
  const oracle::FockOperators ops(2);
  const ComplexMatrix occupied0 = oracle::pure_state(oracle::fock_state({0}, ops));
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_diff(oracle::extract_spdm(occupied0, ops), expected) < 1e-15);

  RealVector occ(2);
  occ << 0.3, 0.8;
  const ComplexMatrix prod = oracle::product_state(occ);
  CHECK(std::abs(prod.trace() - 1.0) < 1e-15);
  const ComplexMatrix v = oracle::extract_spdm(prod, ops);
  CHECK(std::abs(v(0, 0) - 0.3) < 1e-15);
  CHECK(std::abs(v(1, 1) - 0.8) < 1e-15);
  CHECK(std::abs(v(0, 1)) < 1e-15);

  // one particle in psi = (|1,0> + i|0,1>)/sqrt 2 gives V = psi psi^dagger
  const ComplexVector psi =
      (oracle::fock_state({0}, ops) + Complex(0.0, 1.0) * oracle::fock_state({1}, ops)) /
      std::sqrt(2.0);
  const ComplexMatrix w = oracle::extract_spdm(oracle::pure_state(psi), ops);
  CHECK(std::abs(w(0, 1) - Complex(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(w(1, 0) - Complex(0.0, 0.5)) < 1e-15);

  // two particles: fully occupied
  const ComplexMatrix full = oracle::pure_state(oracle::fock_state({0, 1}, ops));
  CHECK(max_diff(oracle::extract_spdm(full, ops), ComplexMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("gaussian_state reproduces its SPDM") {
  Rng rng(9);
  for (Index n = 1; n <= 4; ++n) {
    const oracle::FockOperators ops(n);
    const ComplexMatrix v = rng.spdm(n);
    const ComplexMatrix rho = oracle::gaussian_state(v, ops);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-13);
    CHECK(hermitian_eigenvalues(rho).minCoeff() > -1e-13);
    CHECK(max_diff(oracle::extract_spdm(rho, ops), v) < 1e-13);
  }
  const oracle::FockOperators ops(2);
  CHECK_THROWS_AS(oracle::gaussian_state(2.0 * ComplexMatrix::Identity(2, 2), ops), DomainError);
}

TEST_CASE("many-body Hamiltonian: single-particle sector reproduces M") {
  Rng rng(12);
  const oracle::FockOperators ops(3);
  const ComplexMatrix m = rng.hermitian(3);
  const ComplexMatrix h = oracle::build_hamiltonian_many_body(m, InteractionSpec::zero(3), ops);
  CHECK(hermiticity_residual(h) < 1e-15);
  for (Index a = 0; a < 3; ++a)
    for (Index b = 0; b < 3; ++b) {
      const Complex elem = oracle::fock_state({a}, ops).dot(h * oracle::fock_state({b}, ops));
      CHECK(std::abs(elem - m(a, b)) < 1e-14);
    }
  // density-density energy of a doubly occupied pair
  RealMatrix u = RealMatrix::Zero(3, 3);
  u(0, 1) = u(1, 0) = 0.7;
  const ComplexMatrix hu =
      oracle::build_hamiltonian_many_body(ComplexMatrix::Zero(3, 3), InteractionSpec(u), ops);
  const ComplexVector pair = oracle::fock_state({0, 1}, ops);
  CHECK(std::abs(pair.dot(hu * pair) - 0.7) < 1e-15);
}

TEST_CASE("embedding: exact and SPDM flows agree at U = 0") {
  Rng rng(31);
  SUBCASE("two sites, default model") {
    const twosite::Params p;
    const oracle::FockOperators ops(2);
    const ComplexMatrix v0 = project_physical(twosite::default_initial_state().assemble());
    const auto rep = oracle::verify_embedding(p.hamiltonian(), p.bath(),
                                              oracle::gaussian_state(v0, ops), 5.0, 1e-3);
    CHECK(rep.max_deviation < 1e-10);
    CHECK(rep.max_trace_error < 1e-10);
  }
  SUBCASE("three sites, complex hopping, entangled start") {
    ComplexMatrix m = rng.hermitian(3);
    const BathSpec bath = random_bath(rng, 3);
    const ComplexMatrix rho0 = oracle::pure_state(rng.unit_vector(8));
    const auto rep = oracle::verify_embedding(m, bath, rho0, 5.0, 1e-3);
    CHECK(rep.max_deviation < 1e-10);
    CHECK(rep.min_eigenvalue > -1e-10);
  }
  SUBCASE("four sites, partial damping") {
    const ComplexMatrix m = rng.hermitian(4);
    BathSpec bath = random_bath(rng, 4);
    bath.gamma(0) = 0.0;
    const ComplexMatrix rho0 = oracle::pure_state(rng.unit_vector(16));
    const auto rep = oracle::verify_embedding(m, bath, rho0, 3.0, 1e-3);
    CHECK(rep.max_deviation < 1e-10);
  }
}

TEST_CASE("a wrong-sign dissipator is caught by the exact reference") {
  Rng rng(44);
  const oracle::FockOperators ops(2);
  const ComplexMatrix m = rng.hermitian(2);
  const BathSpec bath = random_bath(rng, 2);
  const ComplexMatrix v0 = rng.spdm(2);
  const ComplexMatrix rho0 = oracle::gaussian_state(v0, ops);
  const ComplexMatrix h = oracle::build_hamiltonian_many_body(m, InteractionSpec::zero(2), ops);
  const ComplexMatrix rho_t = integrate_to_end(
      [&](const ComplexMatrix& r) { return oracle::lindblad_rhs_many_body(r, h, bath, ops); },
      rho0, plain_rk4(1e-3, 2.0));
  const ComplexMatrix exact = oracle::extract_spdm(rho_t, ops);

  const ComplexMatrix good = integrate_to_end(
      [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); }, v0, plain_rk4(1e-3, 2.0));
  const ComplexMatrix g = bath.gamma.cast<Complex>().asDiagonal();
  const ComplexMatrix mutated = integrate_to_end(
      [&](const ComplexMatrix& v) {
        return ComplexMatrix(rhs_affine(v, m, bath) + (g * v + v * g));
      },
      v0, plain_rk4(1e-3, 2.0));
  CHECK(max_diff(good, exact) < 1e-10);
  CHECK(max_diff(mutated, exact) > 1e-2);
}

TEST_CASE("one reset stroke on Fock space") {
  Rng rng(50);
  const ComplexMatrix m = rng.hermitian(3);
  const Partition p = Partition::make(1, 2);
  ComplexMatrix f_e = ComplexMatrix::Zero(2, 2);
  f_e(0, 0) = 0.3;
  f_e(1, 1) = 0.8;
  const oracle::FockOperators ops(3);
  const auto check = oracle::check_reset_stroke(m, f_e, p, 0.7,
                                                oracle::gaussian_state(rng.spdm(3), ops));
  CHECK(check.full_deviation < 1e-12);
  CHECK(check.hermitian_source_deviation < 1e-12);

  ComplexMatrix coherent = f_e;
  coherent(0, 1) = coherent(1, 0) = 0.1;
  CHECK_THROWS_AS(oracle::reset_environment(oracle::product_state(RealVector::Constant(3, 0.5)),
                                            coherent, p),
                  DomainError);
}

TEST_CASE("Hartree error grows from zero with U") {
  const twosite::Params p;
  const oracle::FockOperators ops(2);
  const ComplexMatrix rho0 =
      oracle::gaussian_state(project_physical(twosite::default_initial_state().assemble()), ops);
  twosite::Params unit = p;
  unit.u = 1.0;
  const auto scan = oracle::hartree_error_scan(p.hamiltonian(), unit.interaction(), p.bath(), rho0,
                                               {0.0, 0.1, 0.2}, 0.5);
  REQUIRE(scan.size() == 3);
  CHECK(scan[0].error < 1e-12);
  CHECK(scan[1].error > scan[0].error);
  CHECK(scan[2].error > scan[1].error);
}
