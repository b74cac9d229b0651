#include <cmath>
#include <limits>

#include <doctest.h>

#include "spdmlab/dynamics.hpp"
#include "spdmlab/errors.hpp"
#include "spdmlab/random.hpp"
#include "test_support.hpp"

using namespace spdm;
using spdm::test::max_diff;

namespace {

BathSpec single_bath(double gamma, double f) {
  BathSpec b = BathSpec::none(1);
  b.gamma(0) = gamma;
  b.f(0) = f;
  return b;
}

BathSpec random_bath(Rng& rng, Index n) {
  BathSpec b = BathSpec::none(n);
  for (Index a = 0; a < n; ++a) {
    b.gamma(a) = rng.uniform(0.2, 1.0);
    b.f(a) = rng.uniform(0.1, 0.9);
  }
  return b;
}

IntegratorSpec spec(Method method, double dt, double t_final) {
  IntegratorSpec s;
  s.method = method;
  s.dt = dt;
  s.t_final = t_final;
  s.sample_every = 1;
  s.clip = false;
  return s;
}

}  // namespace

TEST_CASE("rhs_affine is Hermitian and matches the closed form") {
  Rng rng(1);
  const ComplexMatrix v = rng.spdm(5);
  const ComplexMatrix m = rng.hermitian(5);
  const BathSpec bath = random_bath(rng, 5);
  const ComplexMatrix r = rhs_affine(v, m, bath);
  CHECK(hermiticity_residual(r) < 1e-14);
  const ComplexMatrix g = bath.gamma.cast<Complex>().asDiagonal();
  const ComplexMatrix gf = bath.gamma.cwiseProduct(bath.f).cast<Complex>().asDiagonal();
  const ComplexMatrix expected =
      Complex(0.0, 1.0) * commutator(v, m) - 0.5 * (g * v + v * g) + gf;
  CHECK(max_diff(r, expected) < 1e-14);
  CHECK_THROWS_AS(rhs_affine(v, m, BathSpec::none(4)), DimensionError);
}

TEST_CASE("single-mode relaxation") {
  const ComplexMatrix m = ComplexMatrix::Zero(1, 1);
  const BathSpec bath = single_bath(1.0, 0.5);
  const Rhs rhs = [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); };
  const auto traj = integrate(rhs, ComplexMatrix::Zero(1, 1), spec(Method::rk4, 1e-3, 1.0));
  CHECK(std::abs(traj.final_state(0, 0).real() - 0.31606027941427883) < 1e-8);
  CHECK(traj.times.size() == 1001);
  CHECK(traj.times.back() == doctest::Approx(1.0));
}

TEST_CASE("off-diagonal decay without a source") {
  const ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  BathSpec bath = BathSpec::none(2);
  bath.gamma << 0.4, 1.0;
  ComplexMatrix v0 = 0.5 * ComplexMatrix::Identity(2, 2);
  v0(0, 1) = Complex(0.2, 0.1);
  v0(1, 0) = std::conj(v0(0, 1));
  const Rhs rhs = [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); };
  const ComplexMatrix v = integrate_to_end(rhs, v0, spec(Method::rk4, 1e-3, 2.0));
  CHECK(std::abs(v(0, 1) - v0(0, 1) * std::exp(-0.7 * 2.0)) < 1e-12);
}

TEST_CASE("projection onto physical SPDMs") {
  ComplexMatrix physical(2, 2);
  physical << 0.3, 0.0, 0.0, 0.7;
  CHECK(max_diff(project_physical(physical), physical) < 1e-15);

  ComplexMatrix clipped(2, 2);
  clipped << -0.1, 0.0, 0.0, 1.2;
  ComplexMatrix expected(2, 2);
  expected << 0.0, 0.0, 0.0, 1.0;
  CHECK(max_diff(project_physical(clipped), expected) < 1e-15);

  ComplexMatrix v0(2, 2);
  v0 << 0.0, 0.1, 0.1, 1.0;
  const Projection p = project_physical_report(v0);
  CHECK(p.min_eigenvalue == doctest::Approx(0.5 * (1.0 - std::sqrt(1.04))).epsilon(1e-12));
  CHECK(p.max_eigenvalue == doctest::Approx(0.5 * (1.0 + std::sqrt(1.04))).epsilon(1e-12));
  CHECK(p.excursion() == doctest::Approx(0.5 * (std::sqrt(1.04) - 1.0)).epsilon(1e-12));
  const RealVector ev = hermitian_eigenvalues(p.v);
  CHECK(std::abs(ev(0)) < 1e-14);
  CHECK(std::abs(ev(1) - 1.0) < 1e-14);
  // same eigenbasis
  CHECK(max_abs(commutator(p.v, v0)) < 1e-14);
  CHECK(max_diff(project_physical(p.v), p.v) < 1e-12);

  Rng rng(2);
  const ComplexMatrix h = rng.hermitian(6);
  const ComplexMatrix once = project_physical(h);
  CHECK(spdm::test::physical(once));
  CHECK(max_diff(project_physical(once), once) < 1e-12);
}

TEST_CASE("convergence orders") {
  Rng rng(4);
  const ComplexMatrix m = rng.hermitian(3);
  const BathSpec bath = random_bath(rng, 3);
  const ComplexMatrix v0 = rng.spdm(3);
  const Rhs rhs = [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); };
  const ComplexMatrix ref = integrate_to_end(rhs, v0, spec(Method::rk4, 1e-4, 2.0));
  auto err = [&](Method method, double dt) {
    return max_diff(integrate_to_end(rhs, v0, spec(method, dt, 2.0)), ref);
  };
  const double rk4_ratio = err(Method::rk4, 0.1) / err(Method::rk4, 0.05);
  const double euler_ratio = err(Method::euler, 0.01) / err(Method::euler, 0.005);
  CHECK(rk4_ratio > 12.0);
  CHECK(rk4_ratio < 20.0);
  CHECK(euler_ratio > 1.8);
  CHECK(euler_ratio < 2.2);
}

TEST_CASE("a uniform energy shift leaves the flow unchanged") {
  Rng rng(6);
  const ComplexMatrix m = rng.hermitian(4);
  const ComplexMatrix shifted = m + 2.5 * ComplexMatrix::Identity(4, 4);
  const BathSpec bath = random_bath(rng, 4);
  const InteractionSpec u = InteractionSpec::onsite(4, 1.3);
  const ComplexMatrix v0 = rng.spdm(4);
  const IntegratorSpec s = spec(Method::rk4, 1e-2, 3.0);
  const ComplexMatrix a = integrate_to_end(
      [&](const ComplexMatrix& v) { return rhs_hartree(v, m, u, bath); }, v0, s);
  const ComplexMatrix b = integrate_to_end(
      [&](const ComplexMatrix& v) { return rhs_hartree(v, shifted, u, bath); }, v0, s);
  CHECK(max_diff(a, b) < 1e-12);
}

TEST_CASE("trace is conserved without baths") {
  Rng rng(8);
  const ComplexMatrix m = rng.hermitian(6);
  const InteractionSpec u = InteractionSpec::nearest_neighbor(6, 0.8, true);
  const BathSpec bath = BathSpec::none(6);
  const ComplexMatrix v0 = rng.spdm(6);
  IntegratorSpec s = spec(Method::rk4, 1e-3, 10.0);
  s.sample_every = 1000;
  const auto traj = integrate(
      [&](const ComplexMatrix& v) { return rhs_hartree(v, m, u, bath); }, v0, s);
  for (const auto& v : traj.records) CHECK(std::abs(v.trace() - v0.trace()) < 1e-8);
  CHECK(traj.records.size() == 11);
}

TEST_CASE("integrator spec and divergence") {
  IntegratorSpec s;
  s.dt = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.dt = 0.1;
  s.sample_every = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_THROWS_AS(parse_method("midpoint"), ConfigError);
  CHECK(parse_method("euler") == Method::euler);
  CHECK(to_string(Method::rk4) == "rk4");

  ComplexMatrix bad = ComplexMatrix::Zero(1, 1);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  const Rhs zero = [](const ComplexMatrix& v) { return ComplexMatrix::Zero(v.rows(), v.cols()); };
  CHECK_THROWS_AS(integrate_to_end(zero, bad, spec(Method::rk4, 0.1, 1.0)), DivergenceError);

  const Rhs blowup = [](const ComplexMatrix& v) { return ComplexMatrix(50.0 * v); };
  try {
    integrate_to_end(blowup, ComplexMatrix::Ones(1, 1), spec(Method::euler, 0.1, 10.0));
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() > 0);
  }
}

TEST_CASE("clipping keeps an Euler run physical and counts its steps") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = -0.3;
  m(1, 1) = 0.5;
  const BathSpec bath = BathSpec::none(2);
  ComplexMatrix v0(2, 2);
  v0 << 1.0, 0.0, 0.0, 0.0;
  IntegratorSpec s = spec(Method::euler, 0.05, 5.0);
  s.clip = true;
  const auto traj = integrate(
      [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); }, v0, s);
  for (const auto& v : traj.records) CHECK(spdm::test::physical(v));
  CHECK(traj.stats.clipped_steps > 0);
  CHECK(traj.stats.max_excursion > 0.0);
}
