#include "spdmlab/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace spdm {

namespace {

constexpr double kDivergenceBound = 1e6;
constexpr double kPhysicalSlack = 1e-13;

struct Entry {
  Index row, col;
  Complex value;
};

// i (V M - M V), exploiting sparsity of M when it has few nonzeros (ring
// Hamiltonians carry three per row).
ComplexMatrix i_commutator(const ComplexMatrix& v, const ComplexMatrix& m) {
  const Index n = m.rows();
  std::vector<Entry> nz;
  nz.reserve(static_cast<std::size_t>(4 * n));
  const std::size_t dense_limit = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 4;
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      if (m(r, c) != Complex(0.0, 0.0)) {
        nz.push_back({r, c, m(r, c)});
        if (nz.size() > dense_limit) {
          return Complex(0.0, 1.0) * (v * m - m * v);
        }
      }
    }
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const Entry& e : nz) {
    out.col(e.col) += e.value * v.col(e.row);  // V M
    out.row(e.row) -= e.value * v.row(e.col);  // M V
  }
  return Complex(0.0, 1.0) * out;
}

void add_dissipator(const ComplexMatrix& v, const BathSpec& bath, ComplexMatrix& out) {
  const Index n = v.rows();
  for (Index b = 0; b < n; ++b) {
    for (Index a = 0; a < n; ++a) {
      out(a, b) -= 0.5 * (bath.gamma(a) + bath.gamma(b)) * v(a, b);
    }
    out(b, b) += bath.gamma(b) * bath.f(b);
  }
}

void check_rhs_operands(const ComplexMatrix& v, const ComplexMatrix& m,
                        const BathSpec& bath) {
  require_square(v, "rhs");
  require_same_shape(v, m, "rhs");
  if (bath.size() != v.rows() || bath.f.size() != v.rows()) {
    throw DimensionError("rhs: bath has " + std::to_string(bath.size()) +
                         " sites, SPDM has " + std::to_string(v.rows()));
  }
}

}  // namespace

ComplexMatrix rhs_affine(const ComplexMatrix& v, const ComplexMatrix& m,
                         const BathSpec& bath) {
  check_rhs_operands(v, m, bath);
  ComplexMatrix out = i_commutator(v, m);
  add_dissipator(v, bath, out);
  return out;
}

ComplexMatrix rhs_hartree(const ComplexMatrix& v, const ComplexMatrix& m,
                          const InteractionSpec& u, const BathSpec& bath) {
  check_rhs_operands(v, m, bath);
  return rhs_affine(v, m_eff(m, v, u), bath);
}

double Projection::excursion() const {
  return std::max({0.0, -min_eigenvalue, max_eigenvalue - 1.0});
}

Projection project_physical_report(const ComplexMatrix& v) {
  require_square(v, "project_physical");
  Projection out;
  out.v = hermitize(v);
  if (v.rows() == 0) return out;
  const RealVector spectrum = hermitian_eigenvalues(out.v);
  out.min_eigenvalue = spectrum.minCoeff();
  out.max_eigenvalue = spectrum.maxCoeff();
  if (out.min_eigenvalue >= -kPhysicalSlack && out.max_eigenvalue <= 1.0 + kPhysicalSlack) {
    return out;
  }
  HermitianEig eig = hermitian_eig(out.v);
  eig.eigenvalues = eig.eigenvalues.cwiseMax(0.0).cwiseMin(1.0);
  out.v = hermitize(eig.reconstruct());
  return out;
}

ComplexMatrix project_physical(const ComplexMatrix& v) {
  return project_physical_report(v).v;
}

Method parse_method(const std::string& name) {
  if (name == "euler") return Method::euler;
  if (name == "rk4") return Method::rk4;
  throw ConfigError("unknown integrator method '" + name + "' (expected euler or rk4)");
}

std::string to_string(Method m) { return m == Method::euler ? "euler" : "rk4"; }

void IntegratorSpec::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("integrator: dt must be > 0");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw DomainError("integrator: t_final must be finite and >= 0");
  }
  if (sample_every < 1) throw DomainError("integrator: sample_every must be >= 1");
}

std::size_t IntegratorSpec::steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

ComplexMatrix step_explicit(const Rhs& rhs, const ComplexMatrix& v, double dt,
                            Method method) {
  if (method == Method::euler) return v + dt * rhs(v);
  const ComplexMatrix k1 = rhs(v);
  const ComplexMatrix k2 = rhs(v + (0.5 * dt) * k1);
  const ComplexMatrix k3 = rhs(v + (0.5 * dt) * k2);
  const ComplexMatrix k4 = rhs(v + dt * k3);
  return v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

void check_state(const ComplexMatrix& v, std::size_t step) {
  if (!v.allFinite()) {
    throw DivergenceError("integrate: non-finite state at step " + std::to_string(step), step);
  }
  if (max_abs(v) > kDivergenceBound) {
    throw DivergenceError("integrate: state exceeded 1e6 at step " + std::to_string(step) +
                              " (reduce dt)",
                          step);
  }
}

void account_projection(const Projection& p, IntegrationStats& stats) {
  const double exc = p.excursion();
  if (exc > 0.0) ++stats.clipped_steps;
  stats.max_excursion = std::max(stats.max_excursion, exc);
  stats.min_eigenvalue = std::isnan(stats.min_eigenvalue)
                             ? p.min_eigenvalue
                             : std::min(stats.min_eigenvalue, p.min_eigenvalue);
  stats.max_eigenvalue = std::isnan(stats.max_eigenvalue)
                             ? p.max_eigenvalue
                             : std::max(stats.max_eigenvalue, p.max_eigenvalue);
}

}  // namespace detail

Trajectory<ComplexMatrix> integrate(const Rhs& rhs, const ComplexMatrix& v0,
                                    const IntegratorSpec& spec) {
  return integrate_observed<ComplexMatrix>(rhs, v0, spec,
                                           [](const ComplexMatrix& v) { return v; });
}

ComplexMatrix integrate_to_end(const Rhs& rhs, const ComplexMatrix& v0,
                               const IntegratorSpec& spec, IntegrationStats* stats) {
  IntegratorSpec quiet = spec;
  quiet.sample_every = std::max<std::size_t>(1, spec.steps());
  auto traj = integrate_observed<char>(rhs, v0, quiet,
                                       [](const ComplexMatrix&) { return char{0}; });
  if (stats) *stats = traj.stats;
  return std::move(traj.final_state);
}

}  // namespace spdm
