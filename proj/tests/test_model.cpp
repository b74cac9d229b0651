#include <cmath>
#include <cstdio>
#include <fstream>

#include <doctest.h>

#include "spdmlab/dynamics.hpp"
#include "spdmlab/errors.hpp"
#include "spdmlab/model.hpp"
#include "spdmlab/random.hpp"
#include "test_support.hpp"

using namespace spdm;
using spdm::test::max_diff;

namespace {

RingSpec ring(Index n, bool periodic) {
  RingSpec r;
  r.n = n;
  r.hopping = 1.0;
  r.onsite.assign(static_cast<std::size_t>(n), 0.0);
  r.periodic = periodic;
  return r;
}

}  // namespace

TEST_CASE("ring hamiltonian: bonds and wrap-around") {
  const ComplexMatrix m3 = build_ring_hamiltonian(ring(3, true));
  CHECK(m3(0, 2) == Complex(-1.0, 0.0));
  CHECK(m3(2, 0) == Complex(-1.0, 0.0));
  CHECK(build_ring_hamiltonian(ring(3, false))(0, 2) == Complex(0.0, 0.0));

  // two sites carry a single bond even when periodic
  const ComplexMatrix m2 = build_ring_hamiltonian(ring(2, true));
  CHECK(m2(0, 1) == Complex(-1.0, 0.0));
  CHECK(max_diff(m2, two_site_hamiltonian(0.0, 0.0, 1.0)) == 0.0);

  RingSpec bad = ring(4, true);
  bad.onsite.pop_back();
  CHECK_THROWS_AS(build_ring_hamiltonian(bad), DimensionError);
  CHECK_THROWS_AS(build_ring_hamiltonian(ring(1, true)), DomainError);
}

TEST_CASE("fermi function") {
  CHECK(fermi_function(0.0, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fermi_function(1.0, 1.0, 0.0) == doctest::Approx(1.0 / (std::exp(1.0) + 1.0)));
  CHECK(fermi_function(-0.1, kInfiniteBeta, 0.0) == 1.0);
  CHECK(fermi_function(0.1, kInfiniteBeta, 0.0) == 0.0);
  CHECK(fermi_function(0.0, kInfiniteBeta, 0.0) == 0.5);
  CHECK(fermi_function(1000.0, 10.0, 0.0) == 0.0);
}

TEST_CASE("thermal target: site basis and eigenbasis") {
  ComplexMatrix m_ee = ComplexMatrix::Zero(2, 2);
  m_ee(0, 0) = -0.5;
  m_ee(1, 1) = 0.5;
  ThermalTarget t;
  t.beta = 2.0;
  const ComplexMatrix site = fermi_dirac_target(m_ee, t);
  CHECK(site(0, 0).real() == doctest::Approx(1.0 / (std::exp(-1.0) + 1.0)));
  CHECK(site(1, 1).real() == doctest::Approx(1.0 / (std::exp(1.0) + 1.0)));
  CHECK(site(0, 1) == Complex(0.0, 0.0));
  t.basis = FermiBasis::env_eigenbasis;
  CHECK(max_diff(fermi_dirac_target(m_ee, t), site) < 1e-14);

  // with hopping the eigenbasis target is not diagonal, the site target is
  const ComplexMatrix hop = two_site_hamiltonian(0.0, 0.0, 1.0);
  const ComplexMatrix eig = fermi_dirac_target(hop, t);
  CHECK(std::abs(eig(0, 1)) > 0.1);
  CHECK(spdm::test::physical(eig));
  t.basis = FermiBasis::site;
  CHECK(max_diff(fermi_dirac_target(hop, t), 0.5 * ComplexMatrix::Identity(2, 2)) < 1e-15);

  ThermalTarget bad;
  bad.beta = -1.0;
  CHECK_THROWS_AS(fermi_dirac_target(m_ee, bad), DomainError);
}

TEST_CASE("hartree potential: nearest-neighbour pair") {
  ComplexMatrix v = ComplexMatrix::Zero(2, 2);
  v(0, 0) = 0.25;
  v(1, 1) = 0.75;
  const InteractionSpec u = InteractionSpec::nearest_neighbor(2, 2.0, true);
  const RealVector h = hartree_potential(v, u);
  CHECK(h(0) == doctest::Approx(1.5));
  CHECK(h(1) == doctest::Approx(0.5));

  const InteractionSpec onsite = InteractionSpec::onsite(2, 2.0);
  const RealVector h_on = hartree_potential(v, onsite);
  CHECK(h_on(0) == doctest::Approx(0.5));
  CHECK(h_on(1) == doctest::Approx(1.5));

  const ComplexMatrix m = two_site_hamiltonian(0.0, 0.5, 0.3);
  CHECK(max_diff(m_eff(m, v, InteractionSpec::zero(2)), m) == 0.0);
  const ComplexMatrix me = m_eff(m, v, u);
  CHECK(me(0, 0).real() == doctest::Approx(1.5));
  CHECK(me(1, 1).real() == doctest::Approx(1.0));
  CHECK(me(0, 1) == m(0, 1));
  CHECK_THROWS_AS(hartree_potential(v, InteractionSpec::onsite(3, 1.0)), DimensionError);
}

TEST_CASE("hartree commutator reduces to the density-weighted form") {
  // [V, diag(h)]_{ab} = V_ab (h_b - h_a)
  Rng rng(21);
  const ComplexMatrix v = rng.spdm(5);
  const InteractionSpec u = InteractionSpec::nearest_neighbor(5, 0.7, true);
  const RealVector h = hartree_potential(v, u);
  const ComplexMatrix c = commutator(v, hartree_matrix(v, u));
  for (Index a = 0; a < 5; ++a)
    for (Index b = 0; b < 5; ++b) CHECK(std::abs(c(a, b) - v(a, b) * (h(b) - h(a))) < 1e-14);
}

TEST_CASE("interaction spec") {
  RealMatrix raw(2, 2);
  raw << 0.0, 1.0, 3.0, 0.0;
  const InteractionSpec u(raw);
  CHECK(u.matrix()(0, 1) == 2.0);
  CHECK(u.matrix()(1, 0) == 2.0);
  CHECK(InteractionSpec::zero(3).is_zero());
  CHECK(InteractionSpec::onsite(3, 2.0).scaled(0.5).matrix()(1, 1) == 1.0);
  const InteractionSpec ring4 = InteractionSpec::nearest_neighbor(4, 1.0, true);
  CHECK(ring4.matrix()(0, 3) == 1.0);
  CHECK(InteractionSpec::nearest_neighbor(4, 1.0, false).matrix()(0, 3) == 0.0);
  raw(0, 0) = std::nan("");
  CHECK_THROWS_AS(InteractionSpec{raw}, DomainError);
}

TEST_CASE("bath validation") {
  BathSpec b = BathSpec::none(3);
  CHECK_NOTHROW(b.validate());
  b.gamma(1) = -0.1;
  CHECK_THROWS_AS(b.validate(), DomainError);
  b.gamma(1) = 0.1;
  b.f(2) = 1.5;
  CHECK_THROWS_AS(b.validate(), DomainError);
}

TEST_CASE("CSV loaders") {
  const std::string path = "model_loader_test.csv";
  {
    std::ofstream out(path);
    out << "# interaction\n0, 1\n\n1, 0\n";
  }
  const RealMatrix m = load_real_matrix_csv(path);
  CHECK(m.rows() == 2);
  CHECK(m(0, 1) == 1.0);
  CHECK(load_real_sequence_csv(path).size() == 4);
  {
    std::ofstream out(path);
    out << "0, 1\n1\n";
  }
  CHECK_THROWS_AS(load_real_matrix_csv(path), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_real_matrix_csv("does_not_exist.csv"), ConfigError);
}
