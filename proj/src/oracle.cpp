#include "spdmlab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "spdmlab/errors.hpp"
#include "spdmlab/resetting.hpp"

namespace spdm::oracle {

namespace {

Index bit_of(Index site, Index n) { return n - 1 - site; }

void require_state(const ComplexMatrix& rho, const FockOperators& ops) {
  if (rho.rows() != ops.dim() || rho.cols() != ops.dim()) {
    throw DimensionError("oracle: density operator has the wrong dimension");
  }
}

ComplexMatrix evolve_unitary(const ComplexMatrix& h, double tau, const ComplexMatrix& rho) {
  return conjugate_by(propagator(h, tau), rho);
}

}  // namespace

FockOperators::FockOperators(Index n) : n_(n) {
  if (n < 1 || n > kMaxSites) {
    throw DomainError("oracle: Fock space is limited to 1..4 sites, got " + std::to_string(n));
  }
  const Index d = dim();
  for (Index site = 0; site < n; ++site) {
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    const Index bit = bit_of(site, n);
    for (Index b = 0; b < d; ++b) {
      if (((b >> bit) & 1) == 0) continue;
      // occupied sites to the left of `site` are the higher bits
      const auto left = static_cast<unsigned>(b >> (bit + 1));
      const double sign = (std::popcount(left) % 2 == 0) ? 1.0 : -1.0;
      a(b & ~(Index{1} << bit), b) = sign;
    }
    a_.push_back(std::move(a));
  }
  const double residual = car_residual();
  if (residual > 1e-14) {
    throw DomainError("oracle: anticommutation relations violated (" +
                      std::to_string(residual) + ")");
  }
}

double FockOperators::car_residual() const {
  const ComplexMatrix id = ComplexMatrix::Identity(dim(), dim());
  double worst = 0.0;
  for (Index i = 0; i < n_; ++i) {
    for (Index j = 0; j < n_; ++j) {
      const ComplexMatrix& ai = annihilate(i);
      const ComplexMatrix& aj = annihilate(j);
      const ComplexMatrix ajd = aj.adjoint();
      ComplexMatrix mixed = ai * ajd + ajd * ai;
      if (i == j) mixed -= id;
      worst = std::max({worst, max_abs(mixed), max_abs(ai * aj + aj * ai)});
    }
  }
  return worst;
}

ComplexMatrix build_hamiltonian_many_body(const ComplexMatrix& m, const InteractionSpec& u,
                                          const FockOperators& ops) {
  const Index n = ops.sites();
  if (m.rows() != n || m.cols() != n) throw DimensionError("oracle: M does not match site count");
  if (!u.is_zero() && u.size() != n) throw DimensionError("oracle: interaction size mismatch");
  ComplexMatrix h = ComplexMatrix::Zero(ops.dim(), ops.dim());
  for (Index mu = 0; mu < n; ++mu) {
    for (Index nu = 0; nu < n; ++nu) {
      if (m(mu, nu) != Complex(0.0, 0.0)) {
        h += m(mu, nu) * ops.create(mu) * ops.annihilate(nu);
      }
    }
  }
  if (!u.is_zero()) {
    for (Index g = 0; g < n; ++g) {
      for (Index d = 0; d < n; ++d) {
        if (u.matrix()(g, d) != 0.0) h += 0.5 * u.matrix()(g, d) * ops.number(g) * ops.number(d);
      }
    }
  }
  return hermitize(h);
}

ComplexMatrix lindblad_rhs_many_body(const ComplexMatrix& rho, const ComplexMatrix& h,
                                     const BathSpec& bath, const FockOperators& ops) {
  require_state(rho, ops);
  require_same_shape(rho, h, "lindblad_rhs_many_body");
  if (bath.size() != ops.sites()) throw DimensionError("oracle: bath size mismatch");
  ComplexMatrix out = Complex(0.0, -1.0) * commutator(h, rho);
  auto dissipate = [&](const ComplexMatrix& l) {
    const ComplexMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  };
  for (Index a = 0; a < ops.sites(); ++a) {
    const double loss = bath.gamma(a) * (1.0 - bath.f(a));
    const double gain = bath.gamma(a) * bath.f(a);
    if (loss > 0.0) dissipate(std::sqrt(loss) * ops.annihilate(a));
    if (gain > 0.0) dissipate(std::sqrt(gain) * ops.create(a));
  }
  return out;
}

ComplexMatrix extract_spdm(const ComplexMatrix& rho, const FockOperators& ops) {
  require_state(rho, ops);
  const Index n = ops.sites();
  ComplexMatrix v(n, n);
  for (Index alpha = 0; alpha < n; ++alpha) {
    for (Index beta = 0; beta < n; ++beta) {
      v(alpha, beta) = (rho * ops.create(beta) * ops.annihilate(alpha)).trace();
    }
  }
  return v;
}

ComplexMatrix product_state(const RealVector& occupations) {
  const Index n = occupations.size();
  if (n < 1 || n > kMaxSites) throw DomainError("oracle: product state needs 1..4 sites");
  const Index d = Index{1} << n;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (Index b = 0; b < d; ++b) {
    double p = 1.0;
    for (Index site = 0; site < n; ++site) {
      const bool occ = (b >> bit_of(site, n)) & 1;
      p *= occ ? occupations(site) : 1.0 - occupations(site);
    }
    rho(b, b) = p;
  }
  return rho;
}

ComplexMatrix gaussian_state(const ComplexMatrix& v, const FockOperators& ops) {
  if (v.rows() != ops.sites() || v.cols() != ops.sites()) {
    throw DimensionError("oracle: SPDM does not match site count");
  }
  const HermitianEig eig = hermitian_eig(hermitize(v));
  if (eig.eigenvalues.minCoeff() < -1e-9 || eig.eigenvalues.maxCoeff() > 1.0 + 1e-9) {
    throw DomainError("oracle: gaussian_state needs a physical SPDM");
  }
  const Index d = ops.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix rho = id;
  for (Index k = 0; k < ops.sites(); ++k) {
    ComplexMatrix b_dag = ComplexMatrix::Zero(d, d);
    for (Index a = 0; a < ops.sites(); ++a) b_dag += eig.eigenvectors(a, k) * ops.create(a);
    const ComplexMatrix n_k = b_dag * b_dag.adjoint();
    const double lambda = std::clamp(eig.eigenvalues(k), 0.0, 1.0);
    rho = rho * (lambda * n_k + (1.0 - lambda) * (id - n_k));
  }
  return hermitize(rho);
}

ComplexMatrix pure_state(const ComplexVector& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) throw DomainError("oracle: zero state vector");
  return psi * psi.adjoint() / norm2;
}

ComplexVector fock_state(const std::vector<Index>& occupied, const FockOperators& ops) {
  ComplexVector psi = ComplexVector::Zero(ops.dim());
  psi(0) = 1.0;
  for (auto it = occupied.rbegin(); it != occupied.rend(); ++it) psi = ops.create(*it) * psi;
  return psi;
}

EmbeddingReport verify_embedding(const ComplexMatrix& m, const BathSpec& bath,
                                 const ComplexMatrix& rho0, double t_final, double dt,
                                 std::size_t sample_every) {
  const FockOperators ops(m.rows());
  bath.validate();
  const ComplexMatrix h = build_hamiltonian_many_body(m, InteractionSpec::zero(m.rows()), ops);
  IntegratorSpec spec;
  spec.method = Method::rk4;
  spec.dt = dt;
  spec.t_final = t_final;
  spec.sample_every = std::max<std::size_t>(1, sample_every);
  spec.validate();

  const Rhs many_body = [&](const ComplexMatrix& rho) {
    return lindblad_rhs_many_body(rho, h, bath, ops);
  };
  const Rhs affine = [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); };

  EmbeddingReport report;
  ComplexMatrix rho = rho0;
  ComplexMatrix v = extract_spdm(rho0, ops);
  auto compare = [&](double t) {
    const double dev = max_abs(extract_spdm(rho, ops) - v);
    report.times.push_back(t);
    report.deviation.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
    report.max_trace_error = std::max(report.max_trace_error, std::abs(rho.trace() - 1.0));
    const double lowest = hermitian_eigenvalues(hermitize(rho)).minCoeff();
    report.min_eigenvalue = report.times.size() == 1 ? lowest : std::min(report.min_eigenvalue, lowest);
  };
  compare(0.0);
  const std::size_t n_steps = spec.steps();
  for (std::size_t k = 1; k <= n_steps; ++k) {
    rho = step_explicit(many_body, rho, dt, Method::rk4);
    v = step_explicit(affine, v, dt, Method::rk4);
    if (k % spec.sample_every == 0 || k == n_steps) compare(static_cast<double>(k) * dt);
  }
  return report;
}

std::vector<HartreeErrorPoint> hartree_error_scan(const ComplexMatrix& m,
                                                  const InteractionSpec& unit,
                                                  const BathSpec& bath,
                                                  const ComplexMatrix& rho0,
                                                  const std::vector<double>& u_grid,
                                                  double t_probe, double dt) {
  const FockOperators ops(m.rows());
  bath.validate();
  IntegratorSpec spec;
  spec.method = Method::rk4;
  spec.dt = dt;
  spec.t_final = t_probe;
  spec.clip = false;
  const ComplexMatrix v0 = extract_spdm(rho0, ops);

  std::vector<HartreeErrorPoint> out;
  for (double u_value : u_grid) {
    const InteractionSpec u = unit.scaled(u_value);
    const ComplexMatrix h = build_hamiltonian_many_body(m, u, ops);
    const ComplexMatrix rho = integrate_to_end(
        [&](const ComplexMatrix& r) { return lindblad_rhs_many_body(r, h, bath, ops); }, rho0,
        spec);
    const ComplexMatrix v = integrate_to_end(
        [&](const ComplexMatrix& x) { return rhs_hartree(x, m, u, bath); }, v0, spec);
    out.push_back({u_value, max_abs(extract_spdm(rho, ops) - v)});
  }
  return out;
}

ComplexMatrix reset_environment(const ComplexMatrix& rho, const ComplexMatrix& f_e,
                                const Partition& p) {
  if (f_e.rows() != p.n_e || f_e.cols() != p.n_e) throw DimensionError("oracle: F_E size mismatch");
  const ComplexMatrix off = f_e - ComplexMatrix(f_e.diagonal().asDiagonal());
  if (max_abs(off) > 0.0) throw DomainError("oracle: only diagonal F_E can be reset exactly");
  const Index ds = Index{1} << p.n_s;
  const Index de = Index{1} << p.n_e;
  if (rho.rows() != ds * de) throw DimensionError("oracle: state does not match partition");

  ComplexMatrix rho_s = ComplexMatrix::Zero(ds, ds);
  for (Index s = 0; s < ds; ++s) {
    for (Index s2 = 0; s2 < ds; ++s2) {
      for (Index e = 0; e < de; ++e) rho_s(s, s2) += rho(s * de + e, s2 * de + e);
    }
  }
  const ComplexMatrix rho_e = product_state(f_e.diagonal().real());
  ComplexMatrix out(ds * de, ds * de);
  for (Index s = 0; s < ds; ++s) {
    for (Index s2 = 0; s2 < ds; ++s2) {
      out.block(s * de, s2 * de, de, de) = rho_s(s, s2) * rho_e;
    }
  }
  return out;
}

ResetMapCheck check_reset_stroke(const ComplexMatrix& m, const ComplexMatrix& f_e,
                                 const Partition& p, double tau, const ComplexMatrix& rho0) {
  const FockOperators ops(p.size());
  const ComplexMatrix h = build_hamiltonian_many_body(m, InteractionSpec::zero(p.size()), ops);
  const ComplexMatrix rho1 = evolve_unitary(h, tau, reset_environment(rho0, f_e, p));
  const ComplexMatrix v_exact = extract_spdm(rho1, ops);

  const ComplexMatrix v0 = extract_spdm(rho0, ops);
  const ComplexMatrix u = propagator(m, tau);
  const ComplexMatrix v_spdm = conjugate_by(u, ri_reset(v0, f_e, p));

  const Blocks ub = block_split(u, p);
  const ComplexMatrix v_s = v0.topLeftCorner(p.n_s, p.n_s);
  const ComplexMatrix homogeneous = ub.ss * v_s * ub.ss.adjoint();
  const ComplexMatrix exact_s = v_exact.topLeftCorner(p.n_s, p.n_s);

  ResetMapCheck out;
  out.full_deviation = max_abs(v_exact - v_spdm);
  out.hermitian_source_deviation =
      max_abs(exact_s - (homogeneous + ub.se * f_e * ub.se.adjoint()));
  if (p.n_s == p.n_e) {
    out.transposed_index_deviation =
        max_abs(exact_s - (homogeneous + ub.se * f_e * ub.es.adjoint()));
  }
  return out;
}

}  // namespace spdm::oracle
