#pragma once

// Experiment drivers behind the command line tool. Each driver takes a
// validated RunConfig, writes its CSV artifacts into `out_dir` (nothing is
// written when out_dir is empty) and returns the numbers it computed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spdmlab/config.hpp"
#include "spdmlab/dynamics.hpp"
#include "spdmlab/model.hpp"
#include "spdmlab/resetting.hpp"
#include "spdmlab/steady.hpp"
#include "spdmlab/twosite.hpp"

namespace spdm {

/// Ring segmentation set-up shared by the reset and GKLS drivers.
struct RingSetup {
  RingSpec ring;
  Partition part;
  InteractionSpec unit;          // interaction at U = 1
  std::vector<double> u_grid;
  double initial_subsystem = 0.0;
  bool decouple = false;         // drop M_SE (diagnostic)
  ThermalTarget thermal;
  ResetProtocol protocol;
  double gamma = 0.5;
  IntegratorSpec gkls;

  ComplexMatrix hamiltonian() const;
  /// Thermal environment target F_E from M_EE.
  ComplexMatrix target() const;
  /// Subsystem sites at `initial_subsystem`, environment at F_E.
  ComplexMatrix initial_state() const;
  /// gamma on E with f = diag F_E, nothing on S.
  BathSpec gkls_bath() const;
};

struct OracleSetup {
  std::string model = "two_site";  // two_site | ring
  Index n = 2;
  double t_final = 20.0;
  double dt = 1e-3;
  std::size_t sample_every = 100;
  double t_probe = 0.5;
  std::vector<double> u_grid;
};

struct RunConfig {
  Config raw;
  std::uint64_t seed = 0;
  RingSetup ring;
  twosite::Params two_site;
  twosite::State two_site_s0;
  IntegratorSpec integrator;
  std::vector<double> sweep_u;
  std::vector<double> sweep_f2;
  std::string steady_model = "two_site";
  FixedPointSpec steady;
  OracleSetup oracle;
};

/// Parses and validates every section; any problem is a ConfigError.
RunConfig load_run_config(const Config& config);

/// "0.25" style label used in per-U file names.
std::string u_label(double u);

struct RingPlateau {
  double u = 0.0;
  double plateau = 0.0;      // mean <n_S> over the last 10% of samples
  double final_value = 0.0;
  double reference = 0.0;    // exact steady value (NaN when unavailable)
  std::size_t clipped = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

struct RingResult {
  std::vector<RingPlateau> plateaus;  // in u_grid order
  std::vector<ComplexMatrix> final_states;
  std::vector<std::vector<double>> series;  // <n_S> per stroke or sample
  std::vector<std::string> files;
};

/// Stroboscopic protocol (RI or EC per config) for every U in the grid.
/// Files: ring_<kind>_U<u>.csv and ring_<kind>_plateau.csv.
RingResult run_ring_reset(const RunConfig& cfg, const std::string& out_dir, unsigned jobs,
                          bool track_spectrum = false);

/// Continuous GKLS + Hartree flow for every U in the grid.
/// Files: ring_gkls_U<u>.csv and ring_gkls_plateau.csv.
RingResult run_ring_gkls(const RunConfig& cfg, const std::string& out_dir, unsigned jobs,
                         bool track_spectrum = false);

/// two_site_traj.csv at two_site.u.
twosite::Run run_two_site_traj(const RunConfig& cfg, const std::string& out_dir);

/// two_site_sweep.csv over the sweep.u grid.
std::vector<twosite::SteadyPoint> run_sweep_u(const RunConfig& cfg, const std::string& out_dir,
                                              unsigned jobs);

/// delta_n1_grid.csv over the sweep.u x sweep.f2 grid.
std::vector<twosite::DeltaPoint> run_delta_grid(const RunConfig& cfg,
                                                const std::string& out_dir, unsigned jobs);

/// steady_two_site.csv or steady_ring.csv depending on steady.model.
void run_steady(const RunConfig& cfg, const std::string& out_dir);

struct OracleCheckResult {
  double max_deviation = 0.0;
  double max_trace_error = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<double> hartree_u;
  std::vector<double> hartree_error;
};

/// oracle_check.csv (t, max_dev) and, for n <= 3, oracle_hartree.csv (U, err).
OracleCheckResult run_oracle_check(const RunConfig& cfg, const std::string& out_dir);

/// Writes `<command>.cfg`, the effective configuration of a run.
std::string write_effective_config(const RunConfig& cfg, const std::string& out_dir,
                                   const std::string& command);

}  // namespace spdm
