#pragma once

// Stroboscopic resetting protocols on a subsystem/environment partition.
//
// RI: every stroke overwrites the environment block with F_E and erases the
//     S-E coherences. EC: only the environment block is overwritten.
// Between resets the full SPDM evolves as V -> U V U^dagger with
// U = exp(-i M_eff tau), M_eff frozen at the post-reset state.

#include <cstddef>
#include <string>
#include <vector>

#include "spdmlab/dynamics.hpp"
#include "spdmlab/linalg.hpp"
#include "spdmlab/model.hpp"

namespace spdm {

enum class ResetKind { ri, ec };
enum class HartreeUpdate { per_stroke, off };

ResetKind parse_reset_kind(const std::string& name);
HartreeUpdate parse_hartree_update(const std::string& name);
std::string to_string(ResetKind k);
std::string to_string(HartreeUpdate h);

struct ResetProtocol {
  ResetKind kind = ResetKind::ri;
  double tau = 0.5;
  std::size_t n_strokes = 1;
  HartreeUpdate hartree_update = HartreeUpdate::per_stroke;

  void validate() const;
};

/// Subsystem map V_S -> A V_S A^dagger + B of one quadratic RI stroke.
struct AffineMap {
  ComplexMatrix a;
  ComplexMatrix b;  // Hermitian PSD source term

  ComplexMatrix apply(const ComplexMatrix& v_s) const;
};

/// Block-diagonal reset: keeps V_SS, sets V_EE = F_E and zeroes S-E blocks.
ComplexMatrix ri_reset(const ComplexMatrix& v, const ComplexMatrix& f_e,
                       const Partition& p);

struct EcReset {
  ComplexMatrix v;
  /// Spectral excursion removed by the physical projection (0 if none).
  double clipped = 0.0;
};

/// Overwrites V_EE = F_E, keeps V_SS and the coherence blocks, then projects
/// onto physical SPDMs (the overwrite alone can leave the spectrum).
EcReset ec_reset(const ComplexMatrix& v, const ComplexMatrix& f_e, const Partition& p);

/// EC overwrite without the projection; exposed for block-level checks.
ComplexMatrix ec_overwrite(const ComplexMatrix& v, const ComplexMatrix& f_e,
                           const Partition& p);

/// A = U_SS, B = U_SE F_E U_SE^dagger with U = exp(-i M tau).
AffineMap subsystem_affine_map(const ComplexMatrix& m, double tau,
                               const ComplexMatrix& f_e, const Partition& p);

/// One stroboscopic sample: taken right after the unitary part of a stroke
/// (equivalently, at the next reset, which leaves V_SS untouched).
struct StrokeRecord {
  std::size_t stroke = 0;
  double time = 0.0;
  double n_s_avg = 0.0;       // (1/N_S) sum_{alpha in S} V_{alpha alpha}
  RealVector diagonal;        // full diagonal of V
};

struct ProtocolRun {
  std::vector<StrokeRecord> records;  // stroke 0 is the initial state
  ComplexMatrix final_state;
  std::size_t clipped_strokes = 0;   // EC projections or Hartree clips that moved V
  double max_clip = 0.0;
  /// Pre-projection spectral extremes of the full V across all strokes.
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Runs `proto.n_strokes` strokes from V0. With interactions and per-stroke
/// Hartree updates the post-stroke state is additionally projected onto the
/// physical region. When `track_spectrum` is set the full spectrum is
/// checked after every stroke.
ProtocolRun run_protocol(const ComplexMatrix& m, const InteractionSpec& u,
                         const ComplexMatrix& f_e, const Partition& p,
                         const ResetProtocol& proto, const ComplexMatrix& v0,
                         bool track_spectrum = false);

/// Mean of the first n_s diagonal entries.
double subsystem_occupation(const ComplexMatrix& v, Index n_s);

}  // namespace spdm
