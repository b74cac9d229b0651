#include "spdmlab/resetting.hpp"

#include <algorithm>
#include <cmath>

#include "spdmlab/errors.hpp"

namespace spdm {

namespace {

void check_reset_operands(const ComplexMatrix& v, const ComplexMatrix& f_e,
                          const Partition& p) {
  require_square(v, "reset");
  require_square(f_e, "reset");
  if (v.rows() != p.size() || f_e.rows() != p.n_e) {
    throw DimensionError("reset: SPDM is " + std::to_string(v.rows()) + ", F_E is " +
                         std::to_string(f_e.rows()) + ", partition is " +
                         std::to_string(p.n_s) + "+" + std::to_string(p.n_e));
  }
}

void check_target(const ComplexMatrix& f_e) {
  if (hermiticity_residual(f_e) > 1e-10) throw DomainError("reset: F_E is not Hermitian");
  const RealVector spec = hermitian_eigenvalues(f_e);
  if (spec.size() && (spec.minCoeff() < -1e-9 || spec.maxCoeff() > 1.0 + 1e-9)) {
    throw DomainError("reset: F_E spectrum leaves [0, 1]");
  }
}

}  // namespace

ResetKind parse_reset_kind(const std::string& name) {
  if (name == "RI" || name == "ri") return ResetKind::ri;
  if (name == "EC" || name == "ec") return ResetKind::ec;
  throw ConfigError("unknown reset kind '" + name + "' (expected RI or EC)");
}

HartreeUpdate parse_hartree_update(const std::string& name) {
  if (name == "per_stroke") return HartreeUpdate::per_stroke;
  if (name == "off") return HartreeUpdate::off;
  throw ConfigError("unknown hartree update '" + name + "' (expected per_stroke or off)");
}

std::string to_string(ResetKind k) { return k == ResetKind::ri ? "RI" : "EC"; }
std::string to_string(HartreeUpdate h) {
  return h == HartreeUpdate::per_stroke ? "per_stroke" : "off";
}

void ResetProtocol::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("protocol: tau must be > 0");
  if (n_strokes < 1) throw DomainError("protocol: n_strokes must be >= 1");
}

ComplexMatrix AffineMap::apply(const ComplexMatrix& v_s) const {
  return a * v_s * a.adjoint() + b;
}

ComplexMatrix ri_reset(const ComplexMatrix& v, const ComplexMatrix& f_e,
                       const Partition& p) {
  check_reset_operands(v, f_e, p);
  check_target(f_e);
  ComplexMatrix out = ComplexMatrix::Zero(v.rows(), v.cols());
  out.topLeftCorner(p.n_s, p.n_s) = v.topLeftCorner(p.n_s, p.n_s);
  out.bottomRightCorner(p.n_e, p.n_e) = f_e;
  return out;
}

ComplexMatrix ec_overwrite(const ComplexMatrix& v, const ComplexMatrix& f_e,
                           const Partition& p) {
  check_reset_operands(v, f_e, p);
  ComplexMatrix out = v;
  out.bottomRightCorner(p.n_e, p.n_e) = f_e;
  return out;
}

EcReset ec_reset(const ComplexMatrix& v, const ComplexMatrix& f_e, const Partition& p) {
  check_target(f_e);
  Projection proj = project_physical_report(ec_overwrite(v, f_e, p));
  return EcReset{std::move(proj.v), proj.excursion()};
}

AffineMap subsystem_affine_map(const ComplexMatrix& m, double tau,
                               const ComplexMatrix& f_e, const Partition& p) {
  require_square(m, "subsystem_affine_map");
  if (m.rows() != p.size() || f_e.rows() != p.n_e || f_e.cols() != p.n_e) {
    throw DimensionError("subsystem_affine_map: dimension mismatch");
  }
  const Blocks u = block_split(propagator(m, tau), p);
  return AffineMap{u.ss, hermitize(u.se * f_e * u.se.adjoint())};
}

double subsystem_occupation(const ComplexMatrix& v, Index n_s) {
  return v.diagonal().head(n_s).real().mean();
}

ProtocolRun run_protocol(const ComplexMatrix& m, const InteractionSpec& u,
                         const ComplexMatrix& f_e, const Partition& p,
                         const ResetProtocol& proto, const ComplexMatrix& v0,
                         bool track_spectrum) {
  proto.validate();
  check_reset_operands(v0, f_e, p);
  require_same_shape(m, v0, "run_protocol");
  check_target(f_e);
  const bool hartree = proto.hartree_update == HartreeUpdate::per_stroke && !u.is_zero();
  if (hartree && u.size() != m.rows()) {
    throw DimensionError("run_protocol: interaction size does not match M");
  }

  ProtocolRun run;
  const RealVector initial_spec = hermitian_eigenvalues(v0);
  run.min_eigenvalue = initial_spec.size() ? initial_spec.minCoeff() : 0.0;
  run.max_eigenvalue = initial_spec.size() ? initial_spec.maxCoeff() : 0.0;
  auto record = [&](std::size_t stroke, const ComplexMatrix& v) {
    run.records.push_back(StrokeRecord{stroke, static_cast<double>(stroke) * proto.tau,
                                       subsystem_occupation(v, p.n_s),
                                       v.diagonal().real()});
  };
  record(0, v0);

  const ComplexMatrix fixed_u = hartree ? ComplexMatrix() : propagator(m, proto.tau);
  ComplexMatrix v = v0;
  for (std::size_t k = 1; k <= proto.n_strokes; ++k) {
    if (proto.kind == ResetKind::ri) {
      v = ri_reset(v, f_e, p);
    } else {
      EcReset r = ec_reset(v, f_e, p);
      if (r.clipped > 0.0) ++run.clipped_strokes;
      run.max_clip = std::max(run.max_clip, r.clipped);
      v = std::move(r.v);
    }
    const ComplexMatrix u_tau = hartree ? propagator(m_eff(m, v, u), proto.tau) : fixed_u;
    v = conjugate_by(u_tau, v);
    if (!v.allFinite()) throw DivergenceError("run_protocol: non-finite state", k);

    if (hartree || track_spectrum) {
      Projection proj = project_physical_report(v);
      run.min_eigenvalue = std::min(run.min_eigenvalue, proj.min_eigenvalue);
      run.max_eigenvalue = std::max(run.max_eigenvalue, proj.max_eigenvalue);
      if (hartree) {
        if (proj.excursion() > 0.0) ++run.clipped_strokes;
        run.max_clip = std::max(run.max_clip, proj.excursion());
        v = std::move(proj.v);
      }
    }
    record(k, v);
  }
  run.final_state = std::move(v);
  return run;
}

}  // namespace spdm
