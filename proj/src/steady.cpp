#include "spdmlab/steady.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <Eigen/Eigenvalues>

#include "spdmlab/dynamics.hpp"
#include "spdmlab/errors.hpp"

namespace spdm {

namespace {

ComplexVector vec(const ComplexMatrix& a) {
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& x, Index n) {
  return Eigen::Map<const ComplexMatrix>(x.data(), n, n);
}

// Every connected component of the hopping graph must see a damped site.
void require_damped_components(const ComplexMatrix& m, const BathSpec& bath) {
  const Index n = m.rows();
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  int count = 0;
  for (Index start = 0; start < n; ++start) {
    if (component[static_cast<std::size_t>(start)] >= 0) continue;
    bool damped = false;
    std::queue<Index> todo;
    todo.push(start);
    component[static_cast<std::size_t>(start)] = count;
    while (!todo.empty()) {
      const Index a = todo.front();
      todo.pop();
      damped = damped || bath.gamma(a) > 0.0;
      for (Index b = 0; b < n; ++b) {
        if (b != a && m(a, b) != Complex(0.0, 0.0) &&
            component[static_cast<std::size_t>(b)] < 0) {
          component[static_cast<std::size_t>(b)] = count;
          todo.push(b);
        }
      }
    }
    if (!damped) {
      throw SingularError("steady_affine: steady state is not unique; site " +
                          std::to_string(start) + " lies in an undamped component");
    }
    ++count;
  }
}

ComplexMatrix lyapunov_vectorized(const ComplexMatrix& a, const ComplexMatrix& c) {
  const Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  // vec(A V) = (I (x) A) vec V,  vec(V A^dagger) = (conj(A) (x) I) vec V
  ComplexMatrix big = ComplexMatrix::Zero(n * n, n * n);
  for (Index j = 0; j < n; ++j) {
    big.block(j * n, j * n, n, n) += a;
    for (Index i = 0; i < n; ++i) {
      big.block(i * n, j * n, n, n) += std::conj(a(i, j)) * id;
    }
  }
  try {
    return unvec(solve_linear(big, vec(c)), n);
  } catch (const SingularError& e) {
    throw SingularError(std::string("steady state is not unique: ") + e.what());
  }
}

// Bartels-Stewart with A = Z T Z^dagger, T upper triangular.
ComplexMatrix lyapunov_schur(const ComplexMatrix& a, const ComplexMatrix& c) {
  const Index n = a.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceError("steady_affine: Schur decomposition failed",
                           std::numeric_limits<double>::infinity());
  }
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& z = schur.matrixU();
  const ComplexMatrix rhs = z.adjoint() * c * z;
  const double scale = std::max(1.0, max_abs(t));
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (Index j = n - 1; j >= 0; --j) {
    ComplexVector col = rhs.col(j);
    for (Index k = j + 1; k < n; ++k) col -= std::conj(t(j, k)) * y.col(k);
    ComplexMatrix shifted = t;
    shifted.diagonal().array() += std::conj(t(j, j));
    for (Index i = 0; i < n; ++i) {
      if (std::abs(shifted(i, i)) < 1e-13 * scale) {
        throw SingularError("steady state is not unique: A has eigenvalues " +
                            std::to_string(i) + ", " + std::to_string(j) +
                            " with lambda_i + conj(lambda_j) = 0");
      }
    }
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(col);
  }
  return z * y * z.adjoint();
}

}  // namespace

ComplexMatrix steady_affine(const ComplexMatrix& m, const BathSpec& bath,
                            LyapunovRoute route) {
  require_square(m, "steady_affine");
  bath.validate();
  if (bath.size() != m.rows()) throw DimensionError("steady_affine: bath size mismatch");
  if (hermiticity_residual(m) >= 1e-9 * std::max(1.0, max_abs(m))) {
    throw DomainError("steady_affine: M is not Hermitian");
  }
  require_damped_components(m, bath);

  const Index n = m.rows();
  ComplexMatrix a = Complex(0.0, -1.0) * m;
  a.diagonal() -= (0.5 * bath.gamma).cast<Complex>();
  const ComplexMatrix c = -(bath.gamma.cwiseProduct(bath.f)).cast<Complex>().asDiagonal().toDenseMatrix();

  const bool vectorized = route == LyapunovRoute::vectorized ||
                          (route == LyapunovRoute::automatic && n <= kVectorizedSteadyLimit);
  const ComplexMatrix v = vectorized ? lyapunov_vectorized(a, c) : lyapunov_schur(a, c);
  return hermitize(v);
}

ComplexMatrix steady_ri(const AffineMap& map) {
  require_square(map.a, "steady_ri");
  require_same_shape(map.a, map.b, "steady_ri");
  const Index n = map.a.rows();
  if (n == 0) return {};
  const Eigen::ComplexEigenSolver<ComplexMatrix> eig(map.a, false);
  const double radius = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(radius < 1.0 - 1e-12)) {
    throw SingularError("steady_ri: map is not contractive (spectral radius " +
                        std::to_string(radius) + ")");
  }
  // vec(A V A^dagger) = (conj(A) (x) A) vec V
  ComplexMatrix big = ComplexMatrix::Identity(n * n, n * n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      big.block(i * n, j * n, n, n) -= std::conj(map.a(i, j)) * map.a;
    }
  }
  return hermitize(unvec(solve_linear(big, vec(map.b)), n));
}

void FixedPointSpec::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("fixed point: eta must lie in (0, 1]");
  if (!(tol > 0.0)) throw DomainError("fixed point: tol must be > 0");
  if (max_iter < 1) throw DomainError("fixed point: max_iter must be >= 1");
}

HartreeFixedPoint steady_hartree(const ComplexMatrix& m, const InteractionSpec& u,
                                 const BathSpec& bath, const FixedPointSpec& spec) {
  spec.validate();
  HartreeFixedPoint out;
  if (u.is_zero()) {
    out.v = steady_affine(m, bath);
    out.iterations = 1;
    out.residual = max_abs(rhs_affine(out.v, m, bath));
    out.history.push_back(0.0);
    return out;
  }
  ComplexMatrix v = spec.init ? *spec.init : ComplexMatrix(bath.f.cast<Complex>().asDiagonal());
  require_same_shape(v, m, "steady_hartree");
  for (std::size_t k = 1; k <= spec.max_iter; ++k) {
    const ComplexMatrix target = steady_affine(m_eff(m, v, u), bath);
    ComplexMatrix next = (1.0 - spec.eta) * v + spec.eta * target;
    const double step = max_abs(next - v);
    out.history.push_back(step);
    v = std::move(next);
    if (step < spec.tol) {
      out.v = std::move(v);
      out.iterations = k;
      out.step = step;
      out.residual = max_abs(rhs_hartree(out.v, m, u, bath));
      return out;
    }
  }
  const double last_step = out.history.empty() ? 0.0 : out.history.back();
  throw ConvergenceError("steady_hartree: no fixed point within " +
                             std::to_string(spec.max_iter) +
                             " iterations (possible multistability)",
                         last_step, std::move(out.history));
}

std::vector<ContinuationPoint> hartree_continuation_sweep(
    const ComplexMatrix& m, const InteractionSpec& unit, const BathSpec& bath,
    const std::vector<double>& u_grid, const FixedPointSpec& spec) {
  std::vector<ContinuationPoint> out;
  out.reserve(u_grid.size());
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (i > 0 && !(u_grid[i] > u_grid[i - 1])) {
      throw DomainError("hartree_continuation_sweep: U grid must be ascending");
    }
    const InteractionSpec u = unit.scaled(u_grid[i]);
    ContinuationPoint pt;
    pt.u = u_grid[i];
    FixedPointSpec from_f = spec;
    from_f.init.reset();
    pt.from_target = steady_hartree(m, u, bath, from_f);
    FixedPointSpec cont = spec;
    cont.init = out.empty() ? pt.from_target.v : out.back().from_previous.v;
    pt.from_previous = steady_hartree(m, u, bath, cont);
    pt.disagreement = max_abs(pt.from_target.v - pt.from_previous.v);
    pt.bistable = pt.disagreement > 1e-6;
    out.push_back(std::move(pt));
  }
  return out;
}

EcCalibration calibrate_ec_rate(const ComplexMatrix& m, const ComplexMatrix& f_e,
                                const Partition& p, double tau, std::size_t n_strokes,
                                const ComplexMatrix& v0) {
  ResetProtocol proto{ResetKind::ec, tau, n_strokes, HartreeUpdate::off};
  const ProtocolRun ec = run_protocol(m, InteractionSpec::zero(m.rows()), f_e, p, proto, v0);

  IntegratorSpec integ;
  integ.method = Method::rk4;
  integ.dt = tau / 20.0;
  integ.t_final = tau * static_cast<double>(n_strokes);
  integ.sample_every = 20;
  integ.clip = false;

  auto mismatch = [&](double log_gamma) {
    BathSpec bath = BathSpec::none(p.size());
    bath.gamma.tail(p.n_e).setConstant(std::exp(log_gamma));
    bath.f.tail(p.n_e) = f_e.diagonal().real().cwiseMax(0.0).cwiseMin(1.0);
    const auto traj = integrate_observed<double>(
        [&](const ComplexMatrix& v) { return rhs_affine(v, m, bath); }, v0, integ,
        [&](const ComplexMatrix& v) { return subsystem_occupation(v, p.n_s); });
    double sum = 0.0;
    const std::size_t n = std::min(traj.records.size(), ec.records.size());
    for (std::size_t k = 0; k < n; ++k) {
      const double d = traj.records[k] - ec.records[k].n_s_avg;
      sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(std::max<std::size_t>(n, 1)));
  };

  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = std::log(1e-3), hi = std::log(1e2);
  double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
  double f1 = mismatch(x1), f2 = mismatch(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-6; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = mismatch(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = mismatch(x2);
    }
  }
  const double best = 0.5 * (lo + hi);
  return EcCalibration{std::exp(best), mismatch(best)};
}

}  // namespace spdm
