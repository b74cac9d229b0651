#include <cmath>
#include <string>

#include <doctest.h>

#include "spdmlab/config.hpp"
#include "spdmlab/experiments.hpp"
#include "spdmlab/steady.hpp"

using namespace spdm;

namespace {

RunConfig shipped(std::initializer_list<const char*> overrides) {
  Config c = Config::defaults();
  for (const char* o : overrides) c.apply_override(o);
  return load_run_config(c);
}

}  // namespace

TEST_CASE("ring set-up at the shipped defaults") {
  const RunConfig cfg = shipped({});
  const RingSetup& r = cfg.ring;
  CHECK(r.part.n_s == 10);
  CHECK(r.part.n_e == 100);
  const ComplexMatrix v0 = r.initial_state();
  CHECK(std::abs(v0(0, 0)) == 0.0);
  // beta = 1, mu = 0 and zero on-site energies put every environment site at 1/2
  CHECK(std::abs(v0(50, 50) - 0.5) < 1e-15);
  const BathSpec bath = r.gkls_bath();
  CHECK(bath.gamma(0) == 0.0);
  CHECK(bath.gamma(20) == 0.5);
  CHECK(bath.f(20) == 0.5);
}

TEST_CASE("decoupled ring keeps the subsystem occupation flat") {
  const RunConfig cfg =
      shipped({"ring.decouple=true", "ring.initial_subsystem=0.3", "protocol.n_strokes=50"});
  const RingResult res = run_ring_reset(cfg, "", 1);
  for (const auto& series : res.series)
    for (double x : series) CHECK(std::abs(x - 0.3) < 1e-12);
}

TEST_CASE("RI plateaus shift monotonically with U") {
  const RunConfig cfg = shipped({});
  const RingResult res = run_ring_reset(cfg, "", 1);
  REQUIRE(res.plateaus.size() == 4);
  for (std::size_t k = 1; k < res.plateaus.size(); ++k)
    CHECK(res.plateaus[k].plateau < res.plateaus[k - 1].plateau);
}

TEST_CASE("RI U = 0 plateau matches the Stein fixed point") {
  const RunConfig cfg = shipped({"ring.u_grid=0"});
  const RingResult res = run_ring_reset(cfg, "", 1);
  const RingPlateau& p = res.plateaus.front();
  INFO("plateau " << p.plateau << ", Stein fixed point " << p.reference);
  CHECK(std::abs(p.plateau - p.reference) <= 1e-6);
}

TEST_CASE("GKLS U = 0 plateau matches the Lyapunov steady state") {
  const RunConfig cfg = shipped({"ring.u_grid=0"});
  const RingResult res = run_ring_gkls(cfg, "", 1);
  const ComplexMatrix lyap = steady_affine(cfg.ring.hamiltonian(), cfg.ring.gkls_bath());
  const double target = subsystem_occupation(lyap, cfg.ring.part.n_s);
  const RingPlateau& p = res.plateaus.front();
  INFO("plateau " << p.plateau << ", Lyapunov " << target);
  CHECK(std::abs(p.plateau - target) <= 1e-6);
}
