#include "spdmlab/twosite.hpp"

#include <algorithm>
#include <cmath>

#include "spdmlab/errors.hpp"
#include "spdmlab/parallel.hpp"

namespace spdm::twosite {

namespace {

constexpr Complex kI{0.0, 1.0};

State axpy(const State& s, double h, const State& d) {
  return State{s.n1 + h * d.n1, s.n2 + h * d.n2, s.c + h * d.c};
}

State advance(const State& s, const Params& p, double dt, Method method) {
  if (method == Method::euler) return axpy(s, dt, rhs(s, p));
  const State k1 = rhs(s, p);
  const State k2 = rhs(axpy(s, 0.5 * dt, k1), p);
  const State k3 = rhs(axpy(s, 0.5 * dt, k2), p);
  const State k4 = rhs(axpy(s, dt, k3), p);
  return State{s.n1 + dt / 6.0 * (k1.n1 + 2.0 * k2.n1 + 2.0 * k3.n1 + k4.n1),
               s.n2 + dt / 6.0 * (k1.n2 + 2.0 * k2.n2 + 2.0 * k3.n2 + k4.n2),
               s.c + dt / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c)};
}

// Closed-form spectrum of [[n1, c], [c*, n2]].
std::pair<double, double> spectrum(const State& s) {
  const double mean = 0.5 * (s.n1 + s.n2);
  const double half_gap = std::hypot(0.5 * (s.n1 - s.n2), std::abs(s.c));
  return {mean - half_gap, mean + half_gap};
}

// Projection through the assembled matrix; the matrix route only runs when
// the closed-form spectrum actually leaves [0, 1].
State project(const State& s, IntegrationStats& stats) {
  const auto [lo, hi] = spectrum(s);
  Projection p;
  p.min_eigenvalue = lo;
  p.max_eigenvalue = hi;
  if (lo >= 0.0 && hi <= 1.0) {
    detail::account_projection(p, stats);
    return s;
  }
  p = project_physical_report(s.assemble());
  p.min_eigenvalue = lo;
  p.max_eigenvalue = hi;
  detail::account_projection(p, stats);
  return State::from_matrix(p.v);
}

void check_finite(const State& s, std::size_t step) {
  const double big = std::max({std::abs(s.n1), std::abs(s.n2), std::abs(s.c)});
  if (!std::isfinite(big) || big > 1e6) {
    throw DivergenceError("two-site integration diverged at step " + std::to_string(step),
                          step);
  }
}

}  // namespace

void Params::validate() const {
  for (double x : {eps1, eps2, hopping, u}) {
    if (!std::isfinite(x)) throw DomainError("two-site: parameters must be finite");
  }
  bath().validate();
}

ComplexMatrix Params::hamiltonian() const { return two_site_hamiltonian(eps1, eps2, hopping); }

InteractionSpec Params::interaction() const {
  return InteractionSpec::nearest_neighbor(2, u, false);
}

BathSpec Params::bath() const {
  BathSpec b{RealVector(2), RealVector(2)};
  b.gamma << gamma1, gamma2;
  b.f << f1, f2;
  return b;
}

Params resonant_params() {
  Params p;
  p.eps1 = -0.4;
  p.eps2 = 0.4;
  p.hopping = 0.25;
  return p;
}

ComplexMatrix State::assemble() const {
  ComplexMatrix v(2, 2);
  v << n1, c, std::conj(c), n2;
  return v;
}

State State::from_matrix(const ComplexMatrix& v) {
  if (v.rows() != 2 || v.cols() != 2) throw DimensionError("two-site state needs a 2x2 matrix");
  return State{v(0, 0).real(), v(1, 1).real(), 0.5 * (v(0, 1) + std::conj(v(1, 0)))};
}

State default_initial_state() { return State{0.0, 1.0, Complex(0.1, 0.0)}; }

State rhs(const State& s, const Params& p) {
  const double coherent = 2.0 * p.hopping * s.c.imag();
  State d;
  d.n1 = coherent - p.gamma1 * (s.n1 - p.f1);
  d.n2 = -coherent - p.gamma2 * (s.n2 - p.f2);
  const double detuning = (p.eps2 + p.u * s.n1) - (p.eps1 + p.u * s.n2);
  d.c = kI * detuning * s.c + kI * p.hopping * (s.n2 - s.n1) -
        0.5 * (p.gamma1 + p.gamma2) * s.c;
  return d;
}

Run run(const Params& p, const State& s0, const IntegratorSpec& spec) {
  p.validate();
  spec.validate();
  Run out;
  IntegrationStats scratch;
  State s = spec.clip ? project(s0, scratch) : s0;
  check_finite(s, 0);
  auto sample = [&](double t) {
    out.samples.push_back(Sample{t, s.n1, s.n2, s.c.real(), s.c.imag()});
  };
  sample(0.0);
  const std::size_t n_steps = spec.steps();
  for (std::size_t k = 1; k <= n_steps; ++k) {
    s = advance(s, p, spec.dt, spec.method);
    check_finite(s, k);
    if (spec.clip || spec.track_spectrum) {
      State projected = project(s, out.stats);
      if (spec.clip) s = projected;
    }
    if (k % spec.sample_every == 0 || k == n_steps) sample(static_cast<double>(k) * spec.dt);
  }
  out.stats.steps = n_steps;
  out.final_state = s;
  return out;
}

SteadyPoint steady_point(const Params& p, const State& s0, const IntegratorSpec& spec,
                         const FixedPointSpec& fp) {
  IntegratorSpec quiet = spec;
  quiet.sample_every = std::max<std::size_t>(1, spec.steps());
  const Run r = run(p, s0, quiet);

  SteadyPoint pt;
  pt.u = p.u;
  pt.n1 = r.final_state.n1;
  pt.n2 = r.final_state.n2;
  pt.residual = max_abs(rhs_hartree(r.final_state.assemble(), p.hamiltonian(),
                                    p.interaction(), p.bath()));
  pt.steady = pt.residual < 1e-6;
  try {
    const HartreeFixedPoint fixed = steady_hartree(p.hamiltonian(), p.interaction(), p.bath(), fp);
    pt.n1_fixed = fixed.v(0, 0).real();
    pt.n2_fixed = fixed.v(1, 1).real();
    pt.fixed_point_ok = true;
    pt.route_gap = std::max(std::abs(pt.n1 - pt.n1_fixed), std::abs(pt.n2 - pt.n2_fixed));
  } catch (const ConvergenceError&) {
    pt.n1_fixed = pt.n2_fixed = std::numeric_limits<double>::quiet_NaN();
    pt.route_gap = std::numeric_limits<double>::quiet_NaN();
  }
  if (!pt.steady) pt.flag = "unsteady";
  if (!pt.fixed_point_ok) pt.flag += pt.flag.empty() ? "no_fixed_point" : "+no_fixed_point";
  else if (pt.route_gap > 1e-5) pt.flag += pt.flag.empty() ? "route_gap" : "+route_gap";
  return pt;
}

std::vector<SteadyPoint> sweep_u(const Params& base, const std::vector<double>& u_grid,
                                 const State& s0, const IntegratorSpec& spec,
                                 const FixedPointSpec& fp, unsigned jobs) {
  for (std::size_t i = 1; i < u_grid.size(); ++i) {
    if (!(u_grid[i] > u_grid[i - 1])) throw DomainError("sweep_u: U grid must be ascending");
  }
  std::vector<SteadyPoint> out(u_grid.size());
  parallel_for(u_grid.size(), jobs, [&](std::size_t i) {
    Params p = base;
    p.u = u_grid[i];
    out[i] = steady_point(p, s0, spec, fp);
  });

  // Continuation pass: flags points where the fixed point reached from the
  // previous U differs from the one reached from the bath target.
  ComplexMatrix previous;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Params p = base;
    p.u = u_grid[i];
    FixedPointSpec cont = fp;
    if (previous.size()) cont.init = previous;
    try {
      const HartreeFixedPoint next = steady_hartree(p.hamiltonian(), p.interaction(), p.bath(), cont);
      previous = next.v;
      if (out[i].fixed_point_ok) {
        const double gap = std::max(std::abs(next.v(0, 0).real() - out[i].n1_fixed),
                                    std::abs(next.v(1, 1).real() - out[i].n2_fixed));
        out[i].bistable = gap > 1e-6;
        if (out[i].bistable) out[i].flag += out[i].flag.empty() ? "bistable" : "+bistable";
      }
    } catch (const ConvergenceError&) {
      previous.resize(0, 0);
    }
  }
  return out;
}

std::vector<DeltaPoint> sweep_delta_n1(const Params& base, const std::vector<double>& u_grid,
                                       const std::vector<double>& f2_grid, const State& s0,
                                       const IntegratorSpec& spec, unsigned jobs) {
  IntegratorSpec quiet = spec;
  quiet.sample_every = std::max<std::size_t>(1, spec.steps());

  struct Value {
    double n1 = 0.0;
    bool steady = false;
  };
  auto n1_at = [&](double u, double f2) {
    Params p = base;
    p.u = u;
    p.f2 = f2;
    const Run r = run(p, s0, quiet);
    const double res = max_abs(rhs_hartree(r.final_state.assemble(), p.hamiltonian(),
                                           p.interaction(), p.bath()));
    return Value{r.final_state.n1, res < 1e-6};
  };

  std::vector<Value> baseline(f2_grid.size());
  parallel_for(f2_grid.size(), jobs, [&](std::size_t j) { baseline[j] = n1_at(0.0, f2_grid[j]); });

  const std::size_t nf = f2_grid.size();
  std::vector<DeltaPoint> out(u_grid.size() * nf);
  parallel_for(out.size(), jobs, [&](std::size_t idx) {
    const std::size_t i = idx / nf;
    const std::size_t j = idx % nf;
    const Value v = u_grid[i] == 0.0 ? baseline[j] : n1_at(u_grid[i], f2_grid[j]);
    DeltaPoint& d = out[idx];
    d.u = u_grid[i];
    d.f2 = f2_grid[j];
    d.delta_n1 = v.n1 - baseline[j].n1;
    if (!v.steady || !baseline[j].steady) d.flag = "unsteady";
  });
  return out;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("grid: need step > 0 and hi >= lo");
  }
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-6)) + 1;
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) grid[k] = lo + static_cast<double>(k) * step;
  return grid;
}

}  // namespace spdm::twosite
