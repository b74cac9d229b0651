#include "spdmlab/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "spdmlab/errors.hpp"

namespace spdm {

void RingSpec::validate() const {
  if (n < 2) throw DomainError("ring: need at least 2 sites");
  if (static_cast<Index>(onsite.size()) != n) {
    throw DimensionError("ring: onsite energies have length " +
                         std::to_string(onsite.size()) + ", expected " +
                         std::to_string(n));
  }
  if (!std::isfinite(hopping)) throw DomainError("ring: hopping is not finite");
  for (double e : onsite) {
    if (!std::isfinite(e)) throw DomainError("ring: onsite energy is not finite");
  }
}

InteractionSpec::InteractionSpec(const RealMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("interaction matrix must be square");
  if (!u.allFinite()) throw DomainError("interaction matrix has non-finite entries");
  u_ = 0.5 * (u + u.transpose());
}

InteractionSpec InteractionSpec::onsite(Index n, double u) {
  return InteractionSpec(u * RealMatrix::Identity(n, n));
}

InteractionSpec InteractionSpec::nearest_neighbor(Index n, double u, bool periodic) {
  RealMatrix adj = RealMatrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) adj(i, i + 1) = adj(i + 1, i) = 1.0;
  if (periodic && n > 2) adj(0, n - 1) = adj(n - 1, 0) = 1.0;
  return InteractionSpec(u * adj);
}

InteractionSpec InteractionSpec::zero(Index n) {
  return InteractionSpec(RealMatrix::Zero(n, n));
}

InteractionSpec InteractionSpec::scaled(double factor) const {
  return InteractionSpec(factor * u_);
}

void BathSpec::validate() const {
  if (gamma.size() != f.size()) {
    throw DimensionError("bath: gamma and f have different lengths");
  }
  for (Index a = 0; a < gamma.size(); ++a) {
    if (!(gamma(a) >= 0.0) || !std::isfinite(gamma(a))) {
      throw DomainError("bath: gamma_" + std::to_string(a) + " must be finite and >= 0");
    }
    if (!(f(a) >= 0.0 && f(a) <= 1.0)) {
      throw DomainError("bath: f_" + std::to_string(a) + " must lie in [0, 1]");
    }
  }
}

BathSpec BathSpec::none(Index n) {
  return BathSpec{RealVector::Zero(n), RealVector::Zero(n)};
}

void ThermalTarget::validate() const {
  if (!(beta > 0.0)) throw DomainError("thermal target: beta must be > 0 (or inf)");
  if (!std::isfinite(mu)) throw DomainError("thermal target: mu must be finite");
}

ComplexMatrix build_ring_hamiltonian(const RingSpec& spec) {
  spec.validate();
  const Index n = spec.n;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = spec.onsite[static_cast<std::size_t>(i)];
  for (Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = -spec.hopping;
  if (spec.periodic && n > 2) m(0, n - 1) = m(n - 1, 0) = -spec.hopping;
  return m;
}

ComplexMatrix two_site_hamiltonian(double eps1, double eps2, double hopping) {
  return build_ring_hamiltonian(RingSpec{2, hopping, {eps1, eps2}, false});
}

double fermi_function(double energy, double beta, double mu) {
  const double x = energy - mu;
  if (std::isinf(beta)) {
    if (std::abs(x) < 1e-12) return 0.5;
    return x < 0.0 ? 1.0 : 0.0;
  }
  const double y = beta * x;
  // 1/(e^y + 1) written so that neither branch overflows
  if (y > 0.0) {
    const double e = std::exp(-y);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(y));
}

ComplexMatrix fermi_dirac_target(const ComplexMatrix& m_ee, const ThermalTarget& t) {
  t.validate();
  require_square(m_ee, "fermi_dirac_target");
  if (hermiticity_residual(m_ee) >= 1e-9 * std::max(1.0, max_abs(m_ee))) {
    throw DomainError("fermi_dirac_target: M_EE is not Hermitian");
  }
  const Index n = m_ee.rows();
  if (t.basis == FermiBasis::site) {
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    for (Index a = 0; a < n; ++a) f(a, a) = fermi_function(m_ee(a, a).real(), t.beta, t.mu);
    return f;
  }
  const HermitianEig eig = hermitian_eig(m_ee);
  RealVector occ(n);
  for (Index k = 0; k < n; ++k) occ(k) = fermi_function(eig.eigenvalues(k), t.beta, t.mu);
  return hermitize(eig.eigenvectors * occ.cast<Complex>().asDiagonal() *
                   eig.eigenvectors.adjoint());
}

RealVector hartree_potential(const ComplexMatrix& v, const InteractionSpec& u) {
  require_square(v, "hartree_potential");
  if (u.size() != v.rows()) {
    throw DimensionError("hartree_potential: interaction is " + std::to_string(u.size()) +
                         "x" + std::to_string(u.size()) + ", SPDM is " +
                         std::to_string(v.rows()));
  }
  return u.matrix() * v.diagonal().real();
}

ComplexMatrix hartree_matrix(const ComplexMatrix& v, const InteractionSpec& u) {
  return hartree_potential(v, u).cast<Complex>().asDiagonal();
}

ComplexMatrix m_eff(const ComplexMatrix& m, const ComplexMatrix& v,
                    const InteractionSpec& u) {
  require_same_shape(m, v, "m_eff");
  if (u.is_zero()) {
    if (u.size() != 0 && u.size() != m.rows()) {
      throw DimensionError("m_eff: interaction size does not match M");
    }
    return m;
  }
  const RealVector h = hartree_potential(v, u);
  ComplexMatrix out = m;
  out.diagonal() += h.cast<Complex>();
  return out;
}

namespace {

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": '" + cell +
                          "' is not a real number");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RealMatrix load_real_matrix_csv(const std::string& path) {
  const auto rows = read_csv_rows(path);
  if (rows.empty()) throw ConfigError(path + ": no data rows");
  const std::size_t cols = rows.front().size();
  RealMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ConfigError(path + ": ragged rows (row " + std::to_string(r + 1) + ")");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      out(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
  }
  return out;
}

std::vector<double> load_real_sequence_csv(const std::string& path) {
  std::vector<double> out;
  for (const auto& row : read_csv_rows(path)) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace spdm
