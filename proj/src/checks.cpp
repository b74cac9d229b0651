#include "spdmlab/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "spdmlab/csv.hpp"
#include "spdmlab/errors.hpp"
#include "spdmlab/oracle.hpp"
#include "spdmlab/random.hpp"
#include "spdmlab/steady.hpp"

namespace spdm::checks {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Runs `body` with timing; library errors become failed checks.
CheckResult timed(const std::string& name, const std::string& bound,
                  const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  r.bound = bound;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// +1 / -1 for a monotone sequence, 0 when flat; `violation` receives the
// largest step against the overall direction.
int trend(const std::vector<double>& xs, double& violation) {
  violation = 0.0;
  if (xs.size() < 2) return 0;
  const double total = xs.back() - xs.front();
  const int dir = total > 0.0 ? 1 : (total < 0.0 ? -1 : 0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double d = xs[i] - xs[i - 1];
    violation = std::max(violation, dir == 0 ? std::abs(d) : -dir * d);
  }
  return dir;
}

std::string join(const std::vector<double>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << format_real(xs[i]);
  return out.str();
}

ComplexMatrix default_two_site_rho0(const oracle::FockOperators& ops) {
  return oracle::gaussian_state(project_physical(twosite::default_initial_state().assemble()),
                                ops);
}

}  // namespace

CheckResult car_identities() {
  return timed("car_identities", "<= 1e-14", [](CheckResult& r) {
    double worst = 0.0;
    for (Index n = 1; n <= oracle::kMaxSites; ++n) {
      worst = std::max(worst, oracle::FockOperators(n).car_residual());
    }
    r.value = worst;
    r.pass = worst <= 1e-14;
  });
}

CheckResult unitary_commutator_consistency(std::uint64_t seed) {
  return timed("unitary_commutator_consistency", "<= 1e-3", [seed](CheckResult& r) {
    Rng rng(seed);
    const double dt = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix m = rng.hermitian(5);
      const ComplexMatrix v = rng.hermitian(5);
      const ComplexMatrix fd = (conjugate_by(propagator(m, dt), v) - v) / dt;
      const ComplexMatrix exact = Complex(0.0, 1.0) * (v * m - m * v);
      worst = std::max(worst, max_abs(fd - exact));
    }
    r.value = worst;
    r.pass = worst <= 1e-3;
  });
}

CheckResult hartree_commutator_identity(std::uint64_t seed) {
  return timed("hartree_commutator_identity", "<= 1e-12", [seed](CheckResult& r) {
    Rng rng(seed + 1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Index n = 2 + trial % 5;
      const ComplexMatrix v = rng.hermitian(n);
      RealMatrix u(n, n);
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) u(i, j) = rng.uniform(-2.0, 2.0);
      }
      const InteractionSpec spec(u);
      const RealVector h = hartree_potential(v, spec);
      const ComplexMatrix comm = commutator(v, hartree_matrix(v, spec));
      for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
          worst = std::max(worst, std::abs(comm(a, b) - (h(b) - h(a)) * v(a, b)));
        }
      }
    }
    r.value = worst;
    r.pass = worst <= 1e-12;
  });
}

CheckResult single_mode_relaxation() {
  return timed("single_mode_relaxation", "<= 1e-8", [](CheckResult& r) {
    BathSpec bath{RealVector::Constant(1, 1.0), RealVector::Constant(1, 0.5)};
    const ComplexMatrix m = ComplexMatrix::Zero(1, 1);
    IntegratorSpec spec;
    spec.method = Method::rk4;
    spec.dt = 1e-3;
    spec.t_final = 2.0;
    spec.sample_every = 500;
    const auto traj = integrate_observed<double>(
        [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); },
        ComplexMatrix::Zero(1, 1), spec, [](const ComplexMatrix& v) { return v(0, 0).real(); });
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const double t = traj.times[k];
      if (std::abs(t - 0.5) < 1e-9 || std::abs(t - 1.0) < 1e-9 || std::abs(t - 2.0) < 1e-9) {
        worst = std::max(worst, std::abs(traj.records[k] - 0.5 * (1.0 - std::exp(-t))));
      }
    }
    r.value = worst;
    r.pass = worst <= 1e-8;
  });
}

CheckResult decoherence_rates(std::uint64_t seed) {
  return timed("decoherence_rates", "<= 1e-4", [seed](CheckResult& r) {
    Rng rng(seed + 2);
    double worst = 0.0;
    std::ostringstream detail;
    for (int pair = 0; pair < 3; ++pair) {
      BathSpec bath{RealVector(2), RealVector(2)};
      bath.gamma << rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0);
      bath.f << rng.uniform(), rng.uniform();
      ComplexMatrix v0(2, 2);
      v0 << 0.5, Complex(0.3, 0.1), Complex(0.3, -0.1), 0.5;
      IntegratorSpec spec;
      spec.dt = 1e-3;
      spec.t_final = 4.0;
      spec.sample_every = 100;
      spec.clip = false;
      const ComplexMatrix m = ComplexMatrix::Zero(2, 2);
      const auto traj = integrate_observed<double>(
          [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); }, v0, spec,
          [](const ComplexMatrix& v) { return std::log(std::abs(v(0, 1))); });
      // least-squares slope of log|V_01| against t
      const double n = static_cast<double>(traj.times.size());
      double st = 0, sy = 0, stt = 0, sty = 0;
      for (std::size_t k = 0; k < traj.times.size(); ++k) {
        st += traj.times[k];
        sy += traj.records[k];
        stt += traj.times[k] * traj.times[k];
        sty += traj.times[k] * traj.records[k];
      }
      const double rate = -(n * sty - st * sy) / (n * stt - st * st);
      const double expected = 0.5 * (bath.gamma(0) + bath.gamma(1));
      worst = std::max(worst, std::abs(rate - expected));
      detail << (pair ? "; " : "") << "fit " << sci(rate) << " vs " << sci(expected);
    }
    r.value = worst;
    r.pass = worst <= 1e-4;
    r.detail = detail.str();
  });
}

CheckResult embedding(Index n, std::uint64_t seed) {
  return timed("embedding_N" + std::to_string(n), "<= 1e-6", [n, seed](CheckResult& r) {
    const oracle::FockOperators ops(n);
    ComplexMatrix m;
    BathSpec bath;
    ComplexMatrix rho0;
    if (n == 2) {
      const twosite::Params p;
      m = p.hamiltonian();
      bath = p.bath();
      rho0 = default_two_site_rho0(ops);
    } else {
      RingSpec ring;
      ring.n = n;
      ring.onsite.assign(static_cast<std::size_t>(n), 0.0);
      m = build_ring_hamiltonian(ring);
      Rng rng(seed + 3);
      bath = BathSpec::none(n);
      for (Index a = 0; a < n; ++a) {
        bath.gamma(a) = rng.uniform(0.2, 1.0);
        bath.f(a) = rng.uniform(0.1, 0.9);
      }
      rho0 = oracle::pure_state(rng.unit_vector(ops.dim()));
    }
    const auto rep = oracle::verify_embedding(m, bath, rho0, 20.0, 1e-3, 100);
    r.value = rep.max_deviation;
    r.pass = rep.max_deviation <= 1e-6 && rep.max_trace_error <= 1e-8 &&
             rep.min_eigenvalue >= -1e-7;
    r.detail = "trace error " + sci(rep.max_trace_error) + ", min eigenvalue " +
               sci(rep.min_eigenvalue);
  });
}

CheckResult embedding_suite(std::uint64_t seed) {
  CheckResult two = embedding(2, seed);
  CheckResult three = embedding(3, seed);
  CheckResult r;
  r.name = "embedding_N2_N3";
  r.bound = "<= 1e-6";
  r.value = std::max(two.value, three.value);
  if (std::isnan(two.value) || std::isnan(three.value)) r.value = std::nan("");
  r.pass = two.pass && three.pass;
  r.detail = "N=2 " + sci(two.value) + " (" + two.detail + "); N=3 " + sci(three.value) + " (" +
             three.detail + ")";
  r.seconds = two.seconds + three.seconds;
  return r;
}

CheckResult reset_map_oracle(std::uint64_t seed) {
  return timed("reset_map_oracle", "<= 1e-8", [seed](CheckResult& r) {
    Rng rng(seed + 4);
    RingSpec ring;
    ring.n = 3;
    ring.onsite = {0.1, -0.2, 0.3};
    const ComplexMatrix m = build_ring_hamiltonian(ring);
    const Partition p = Partition::make(1, 2);
    ComplexMatrix f_e = ComplexMatrix::Zero(2, 2);
    f_e(0, 0) = 0.3;
    f_e(1, 1) = 0.8;
    const oracle::FockOperators ops(3);
    double worst = 0.0, source = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const ComplexMatrix rho0 = oracle::gaussian_state(rng.spdm(3), ops);
      const auto chk = oracle::check_reset_stroke(m, f_e, p, 0.7, rho0);
      worst = std::max(worst, chk.full_deviation);
      source = std::max(source, chk.hermitian_source_deviation);
    }
    r.value = worst;
    r.pass = worst <= 1e-8 && source <= 1e-8;
    r.detail = "S-block source U_SE F_E U_SE^dagger deviation " + sci(source);
  });
}

CheckResult steady_cross_validation() {
  return timed("steady_cross_validation", "<= 1e-6", [](CheckResult& r) {
    IntegratorSpec spec;
    spec.method = Method::rk4;
    spec.dt = 1e-3;
    spec.t_final = 200.0;
    spec.sample_every = 1000000;
    const twosite::State s0 = twosite::default_initial_state();

    twosite::Params p0;
    const ComplexMatrix lyap = steady_affine(p0.hamiltonian(), p0.bath());
    const ComplexMatrix int0 = twosite::run(p0, s0, spec).final_state.assemble();
    const double gap0 = max_abs(lyap - int0);

    twosite::Params p2;
    p2.u = 2.0;
    const HartreeFixedPoint fp = steady_hartree(p2.hamiltonian(), p2.interaction(), p2.bath());
    const ComplexMatrix int2 = twosite::run(p2, s0, spec).final_state.assemble();
    const double gap2 = max_abs(fp.v - int2);

    r.value = std::max(gap0, gap2);
    r.pass = r.value <= 1e-6;
    r.detail = "U=0 Lyapunov gap " + sci(gap0) + ", U=2 fixed-point gap " + sci(gap2) + " (" +
               std::to_string(fp.iterations) + " Picard iterations)";
  });
}

CheckResult component_matrix_equivalence(std::uint64_t seed, std::size_t samples) {
  return timed("component_matrix_equivalence", "<= 1e-12", [seed, samples](CheckResult& r) {
    Rng rng(seed + 5);
    double worst = 0.0, balance = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      twosite::Params p;
      p.eps1 = rng.uniform(-1.0, 1.0);
      p.eps2 = rng.uniform(-1.0, 1.0);
      p.hopping = rng.uniform(0.0, 1.0);
      p.gamma1 = rng.uniform(0.0, 1.0);
      p.gamma2 = rng.uniform(0.0, 1.0);
      p.f1 = rng.uniform();
      p.f2 = rng.uniform();
      p.u = rng.uniform(-3.0, 3.0);
      const twosite::State s = twosite::State::from_matrix(rng.spdm(2));
      const twosite::State d = twosite::rhs(s, p);
      const ComplexMatrix ref =
          rhs_hartree(s.assemble(), p.hamiltonian(), p.interaction(), p.bath());
      worst = std::max(worst, max_abs(d.assemble() - ref));
      balance = std::max(balance, std::abs(d.n1 + d.n2 + p.gamma1 * (s.n1 - p.f1) +
                                           p.gamma2 * (s.n2 - p.f2)));
    }
    r.value = worst;
    r.pass = worst <= 1e-12 && balance <= 1e-12;
    r.detail = std::to_string(samples) + " states; number balance residual " + sci(balance);
  });
}

CheckResult steady_monotonicity(const twosite::Params& base, const std::vector<double>& u_grid,
                                const IntegratorSpec& spec, unsigned jobs) {
  return timed("steady_monotone_opposite", "<= 1e-9",
               [&base, &u_grid, &spec, jobs](CheckResult& r) {
    const auto pts = twosite::sweep_u(base, u_grid, twosite::default_initial_state(), spec, {},
                                      jobs);
    std::vector<double> n1, n2;
    double gap = 0.0;
    for (const auto& p : pts) {
      n1.push_back(p.n1);
      n2.push_back(p.n2);
      if (!std::isnan(p.route_gap)) gap = std::max(gap, p.route_gap);
    }
    double v1 = 0.0, v2 = 0.0;
    const int d1 = trend(n1, v1);
    const int d2 = trend(n2, v2);
    r.value = std::max(v1, v2);
    r.pass = r.value <= 1e-9 && d1 * d2 < 0;
    r.detail = "n1ss " + std::string(d1 > 0 ? "rises" : d1 < 0 ? "falls" : "flat") + " " +
               sci(n1.front()) + " -> " + sci(n1.back()) + ", n2ss " +
               (d2 > 0 ? "rises" : d2 < 0 ? "falls" : "flat") + " " + sci(n2.front()) + " -> " +
               sci(n2.back()) + "; max time/fixed-point gap " + sci(gap);
    const auto peak = std::max_element(n1.begin(), n1.end());
    const auto low = std::min_element(n1.begin(), n1.end());
    for (auto it : {peak, low}) {
      if (it != n1.begin() && it != n1.end() - 1) {
        const auto k = static_cast<std::size_t>(it - n1.begin());
        r.detail += "; n1ss turns at U=" + u_label(u_grid[k]) + " (" + sci(*it) + ")";
      }
    }
  });
}

CheckResult delta_nonnegative(const twosite::Params& base, const std::vector<double>& u_grid,
                              const std::vector<double>& f2_grid, const IntegratorSpec& spec,
                              unsigned jobs) {
  return timed("delta_n1_nonnegative", ">= -1e-9",
               [&base, &u_grid, &f2_grid, &spec, jobs](CheckResult& r) {
    const auto grid = twosite::sweep_delta_n1(base, u_grid, f2_grid,
                                              twosite::default_initial_state(), spec, jobs);
    double lo = INFINITY, hi = -INFINITY;
    double lo_u = 0.0, lo_f2 = 0.0, first_negative_u = INFINITY;
    std::size_t unsteady = 0, negative = 0;
    for (const auto& d : grid) {
      if (d.delta_n1 < lo) {
        lo = d.delta_n1;
        lo_u = d.u;
        lo_f2 = d.f2;
      }
      hi = std::max(hi, d.delta_n1);
      if (d.delta_n1 < -1e-9) {
        ++negative;
        first_negative_u = std::min(first_negative_u, d.u);
      }
      if (!d.flag.empty()) ++unsteady;
    }
    r.value = lo;
    r.pass = lo >= -1e-9;
    r.detail = std::to_string(grid.size()) + " points, max " + sci(hi) + ", flagged " +
               std::to_string(unsteady);
    if (negative > 0) {
      r.detail += "; " + std::to_string(negative) + " negative, all at U >= " +
                  u_label(first_negative_u) + ", minimum at U=" + u_label(lo_u) +
                  " f2=" + u_label(lo_f2);
    }
  });
}

CheckResult delta_sign_change(const twosite::Params& base, const std::vector<double>& u_grid,
                              const std::vector<double>& f2_grid, const IntegratorSpec& spec,
                              unsigned jobs) {
  return timed("delta_n1_sign_change", "min(max, -min) > 1e-4",
               [&base, &u_grid, &f2_grid, &spec, jobs](CheckResult& r) {
    const auto grid = twosite::sweep_delta_n1(base, u_grid, f2_grid,
                                              twosite::default_initial_state(), spec, jobs);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& d : grid) {
      lo = std::min(lo, d.delta_n1);
      hi = std::max(hi, d.delta_n1);
    }
    r.value = std::min(hi, -lo);
    r.pass = hi > 1e-4 && lo < -1e-4;
    r.detail = std::to_string(grid.size()) + " points, range [" + sci(lo) + ", " + sci(hi) + "]";
  });
}

CheckResult ring_agreement(const RingResult& ri, const RingResult& gkls) {
  return timed("ring_ri_gkls_agreement", "<= 0.1 relative", [&ri, &gkls](CheckResult& r) {
    if (ri.plateaus.size() != gkls.plateaus.size() || ri.plateaus.empty()) {
      throw Error("ring results do not cover the same U grid");
    }
    std::vector<double> a, b;
    double worst = 0.0;
    for (std::size_t i = 0; i < ri.plateaus.size(); ++i) {
      const double x = ri.plateaus[i].plateau;
      const double y = gkls.plateaus[i].plateau;
      a.push_back(x);
      b.push_back(y);
      worst = std::max(worst, std::abs(y - x) / std::abs(x));
    }
    double va = 0.0, vb = 0.0;
    const int da = trend(a, va);
    const int db = trend(b, vb);
    const bool monotone = va <= 1e-12 && vb <= 1e-12;
    r.value = worst;
    r.pass = worst <= 0.1 && monotone && da == db;
    r.detail = "RI plateaus [" + join(a) + "], GKLS plateaus [" + join(b) + "], directions " +
               std::to_string(da) + "/" + std::to_string(db) +
               (monotone ? "" : ", NOT monotone");
  });
}

CheckResult monotone_approach(const RingResult& res, std::size_t skip) {
  return timed("ring_monotone_approach", "no sign change beyond 1e-12",
               [&res, skip](CheckResult& r) {
    if (res.series.empty()) throw Error("no ring series to inspect");
    std::size_t changes = 0;
    std::string where;
    for (std::size_t i = 0; i < res.series.size(); ++i) {
      const auto& x = res.series[i];
      int sign = 0;
      for (std::size_t k = skip + 1; k < x.size(); ++k) {
        const double d = x[k] - x[k - 1];
        const int s = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
        if (s == 0) continue;
        if (sign != 0 && s != sign) {
          ++changes;
          if (where.empty()) {
            where = "first at U=" + u_label(res.plateaus[i].u) + " index " + std::to_string(k);
          }
        }
        sign = s;
      }
    }
    r.value = static_cast<double>(changes);
    r.pass = changes == 0;
    r.detail = std::to_string(res.series.size()) + " series" + (where.empty() ? "" : ", " + where);
  });
}

CheckResult physicality_unprojected(const RingResult& ri, const RingResult& gkls,
                                    const std::vector<twosite::Run>& two_site_u0) {
  return timed("physicality_unprojected_U0", "within [-1e-8, 1+1e-8]",
               [&ri, &gkls, &two_site_u0](CheckResult& r) {
    double lo = INFINITY, hi = -INFINITY;
    auto take = [&](double a, double b) {
      if (std::isnan(a) || std::isnan(b)) throw Error("spectrum was not tracked");
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    };
    for (const auto* res : {&ri, &gkls}) {
      for (const auto& pl : res->plateaus) {
        if (pl.u == 0.0) take(pl.min_eigenvalue, pl.max_eigenvalue);
      }
    }
    for (const auto& run : two_site_u0) take(run.stats.min_eigenvalue, run.stats.max_eigenvalue);
    r.value = std::max(-lo, hi - 1.0);
    r.pass = lo >= -1e-8 && hi <= 1.0 + 1e-8;
    r.detail = "spectrum range [" + format_real(lo) + ", " + format_real(hi) + "]";
  });
}

CheckResult physicality_projected(const std::vector<ComplexMatrix>& finals) {
  return timed("physicality_projected", "within [0, 1] to 1e-12", [&finals](CheckResult& r) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& v : finals) {
      const RealVector s = hermitian_eigenvalues(hermitize(v));
      lo = std::min(lo, s.minCoeff());
      hi = std::max(hi, s.maxCoeff());
    }
    r.value = std::max({0.0, -lo, hi - 1.0});
    r.pass = lo >= -1e-12 && hi <= 1.0 + 1e-12;
    r.detail = std::to_string(finals.size()) + " states, spectrum range [" + format_real(lo) +
               ", " + format_real(hi) + "]";
  });
}

CheckResult trace_conservation(const ComplexMatrix& m, const ComplexMatrix& v0) {
  return timed("trace_conservation", "<= 1e-8", [&m, &v0](CheckResult& r) {
    const BathSpec bath = BathSpec::none(m.rows());
    IntegratorSpec spec;
    spec.dt = 1e-3;
    spec.t_final = 10.0;
    spec.sample_every = 1000;
    const auto traj = integrate_observed<double>(
        [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); }, v0, spec,
        [](const ComplexMatrix& v) { return v.trace().real(); });
    double worst = 0.0;
    for (double tr : traj.records) worst = std::max(worst, std::abs(tr - traj.records.front()));
    r.value = worst;
    r.pass = worst <= 1e-8;
  });
}

CheckResult hartree_error_scaling() {
  return timed("hartree_error_scaling", "ratio in [3, 5]", [](CheckResult& r) {
    const twosite::Params p;
    const oracle::FockOperators ops(2);
    const auto scan = oracle::hartree_error_scan(
        p.hamiltonian(), InteractionSpec::nearest_neighbor(2, 1.0, false), p.bath(),
        default_two_site_rho0(ops), {0.0, 0.1, 0.2}, 0.5, 1e-3);
    const double ratio = scan[2].error / scan[1].error;
    r.value = ratio;
    r.pass = ratio >= 3.0 && ratio <= 5.0 && scan[0].error <= 1e-6;
    r.detail = "err(0)=" + sci(scan[0].error) + " err(0.1)=" + sci(scan[1].error) +
               " err(0.2)=" + sci(scan[2].error);
  });
}

std::vector<CheckResult> verify_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(car_identities());
  out.push_back(unitary_commutator_consistency(seed));
  out.push_back(hartree_commutator_identity(seed));
  out.push_back(single_mode_relaxation());
  out.push_back(decoherence_rates(seed));
  out.push_back(embedding(2, seed));
  out.push_back(embedding(3, seed));
  out.push_back(reset_map_oracle(seed));
  out.push_back(steady_cross_validation());
  out.push_back(component_matrix_equivalence(seed));
  {
    RingSpec ring;
    ring.n = 12;
    ring.onsite.assign(12, 0.0);
    Rng rng(seed + 6);
    out.push_back(trace_conservation(build_ring_hamiltonian(ring), rng.spdm(12)));
  }
  out.push_back(hartree_error_scaling());
  return out;
}

void write_report(const std::vector<CheckResult>& results, const std::string& path) {
  CsvWriter csv(path, {"check_name", "value", "bound", "pass", "detail", "seconds"});
  for (const auto& r : results) {
    csv.field(r.name).field(r.value).field(r.bound).field(r.pass).field(r.detail)
        .field(r.seconds);
    csv.end_row();
  }
  csv.close();
}

std::string format_line(const CheckResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", r.value);
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  std::string line = std::string(r.pass ? "PASS" : "FAIL") + "  " + r.name + "  value=" + buf +
                     "  bound " + r.bound + "  (" + secs + ")";
  if (!r.detail.empty()) line += "  " + r.detail;
  return line;
}

}  // namespace spdm::checks
