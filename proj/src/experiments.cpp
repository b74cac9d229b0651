#include "spdmlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "spdmlab/csv.hpp"
#include "spdmlab/errors.hpp"
#include "spdmlab/oracle.hpp"
#include "spdmlab/parallel.hpp"
#include "spdmlab/random.hpp"

namespace spdm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
}

IntegratorSpec integrator_from(const Config& c, const std::string& section, bool with_clip) {
  IntegratorSpec s;
  s.method = parse_method(c.get_string(section + ".method"));
  s.dt = c.get_double(section + ".dt");
  s.t_final = c.get_double(section + ".t_final");
  s.sample_every = c.get_count(section + ".sample_every");
  s.clip = with_clip ? c.get_bool(section + ".clip") : true;
  s.validate();
  return s;
}

void require_ascending(const std::vector<double>& grid, const std::string& what) {
  for (double x : grid) {
    if (!std::isfinite(x)) throw ConfigError(what + ": grid values must be finite");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError(what + ": grid must be strictly ascending");
  }
}

RingSetup ring_from(const Config& c) {
  RingSetup r;
  const long long n = c.get_int("ring.n");
  const long long n_s = c.get_int("ring.n_s");
  if (n < 2) throw ConfigError("ring.n must be >= 2");
  if (n_s < 1 || n_s >= n) throw ConfigError("ring.n_s must satisfy 1 <= n_s < n");
  r.ring.n = static_cast<Index>(n);
  r.ring.hopping = c.get_double("ring.hopping");
  r.ring.periodic = c.get_bool("ring.periodic");
  const std::string onsite_file = c.get_string("ring.onsite_file");
  if (onsite_file.empty()) {
    r.ring.onsite.assign(static_cast<std::size_t>(n), c.get_double("ring.onsite"));
  } else {
    r.ring.onsite = load_real_sequence_csv(onsite_file);
  }
  r.ring.validate();
  r.part = Partition::make(static_cast<Index>(n_s), static_cast<Index>(n - n_s));

  const std::string kind = c.get_string("ring.interaction");
  if (kind == "onsite") {
    r.unit = InteractionSpec::onsite(r.ring.n, 1.0);
  } else if (kind == "nearest_neighbor") {
    r.unit = InteractionSpec::nearest_neighbor(r.ring.n, 1.0, r.ring.periodic);
  } else if (kind == "file") {
    const std::string path = c.get_string("ring.interaction_file");
    if (path.empty()) throw ConfigError("ring.interaction = file needs ring.interaction_file");
    r.unit = InteractionSpec(load_real_matrix_csv(path));
    if (r.unit.size() != r.ring.n) {
      throw ConfigError("ring.interaction_file must hold an n x n matrix");
    }
  } else {
    throw ConfigError("ring.interaction must be onsite, nearest_neighbor or file");
  }
  r.u_grid = c.get_list("ring.u_grid");
  if (r.u_grid.empty()) throw ConfigError("ring.u_grid must not be empty");
  require_ascending(r.u_grid, "ring.u_grid");
  r.initial_subsystem = c.get_double("ring.initial_subsystem");
  if (!(r.initial_subsystem >= 0.0 && r.initial_subsystem <= 1.0)) {
    throw ConfigError("ring.initial_subsystem must lie in [0, 1]");
  }
  r.decouple = c.get_bool("ring.decouple");

  r.thermal.beta = c.get_double("thermal.beta");
  r.thermal.mu = c.get_double("thermal.mu");
  const std::string basis = c.get_string("thermal.basis");
  if (basis == "site") {
    r.thermal.basis = FermiBasis::site;
  } else if (basis == "env_eigenbasis") {
    r.thermal.basis = FermiBasis::env_eigenbasis;
  } else {
    throw ConfigError("thermal.basis must be site or env_eigenbasis");
  }
  r.thermal.validate();

  r.protocol.kind = parse_reset_kind(c.get_string("protocol.kind"));
  r.protocol.tau = c.get_double("protocol.tau");
  r.protocol.n_strokes = c.get_count("protocol.n_strokes");
  r.protocol.hartree_update = parse_hartree_update(c.get_string("protocol.hartree_update"));
  r.protocol.validate();

  r.gamma = c.get_double("gkls.gamma");
  if (!(r.gamma >= 0.0) || !std::isfinite(r.gamma)) throw ConfigError("gkls.gamma must be >= 0");
  r.gkls = integrator_from(c, "gkls", false);
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

double plateau_of(const std::vector<double>& series) {
  const std::size_t n = series.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  double sum = 0.0;
  for (std::size_t k = n - tail; k < n; ++k) sum += series[k];
  return sum / static_cast<double>(tail);
}

}  // namespace

ComplexMatrix RingSetup::hamiltonian() const {
  ComplexMatrix m = build_ring_hamiltonian(ring);
  if (decouple) {
    m.topRightCorner(part.n_s, part.n_e).setZero();
    m.bottomLeftCorner(part.n_e, part.n_s).setZero();
  }
  return m;
}

ComplexMatrix RingSetup::target() const {
  return fermi_dirac_target(hamiltonian().bottomRightCorner(part.n_e, part.n_e), thermal);
}

ComplexMatrix RingSetup::initial_state() const {
  ComplexMatrix v = ComplexMatrix::Zero(part.size(), part.size());
  for (Index a = 0; a < part.n_s; ++a) v(a, a) = initial_subsystem;
  v.bottomRightCorner(part.n_e, part.n_e) = target();
  return v;
}

BathSpec RingSetup::gkls_bath() const {
  BathSpec bath = BathSpec::none(part.size());
  bath.gamma.tail(part.n_e).setConstant(gamma);
  bath.f.tail(part.n_e) = target().diagonal().real().cwiseMax(0.0).cwiseMin(1.0);
  return bath;
}

RunConfig load_run_config(const Config& config) {
  RunConfig cfg;
  cfg.raw = config;
  try {
    const long long seed = config.get_int("run.seed");
    if (seed < 0) throw ConfigError("run.seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);

    cfg.ring = ring_from(config);

    twosite::Params& p = cfg.two_site;
    p.eps1 = config.get_double("two_site.eps1");
    p.eps2 = config.get_double("two_site.eps2");
    p.hopping = config.get_double("two_site.hopping");
    p.gamma1 = config.get_double("two_site.gamma1");
    p.gamma2 = config.get_double("two_site.gamma2");
    p.f1 = config.get_double("two_site.f1");
    p.f2 = config.get_double("two_site.f2");
    p.u = config.get_double("two_site.u");
    p.validate();
    cfg.two_site_s0.n1 = config.get_double("two_site.n1_0");
    cfg.two_site_s0.n2 = config.get_double("two_site.n2_0");
    cfg.two_site_s0.c = Complex(config.get_double("two_site.c0_re"),
                                config.get_double("two_site.c0_im"));

    cfg.integrator = integrator_from(config, "integrator", true);

    cfg.sweep_u = twosite::make_grid(config.get_double("sweep.u_min"),
                                     config.get_double("sweep.u_max"),
                                     config.get_double("sweep.u_step"));
    cfg.sweep_f2 = twosite::make_grid(config.get_double("sweep.f2_min"),
                                      config.get_double("sweep.f2_max"),
                                      config.get_double("sweep.f2_step"));
    for (double f2 : cfg.sweep_f2) {
      if (f2 < 0.0 || f2 > 1.0 + 1e-12) throw ConfigError("sweep.f2 grid must lie in [0, 1]");
    }
    for (double& f2 : cfg.sweep_f2) f2 = std::min(f2, 1.0);

    cfg.steady_model = config.get_string("steady.model");
    if (cfg.steady_model != "two_site" && cfg.steady_model != "ring") {
      throw ConfigError("steady.model must be two_site or ring");
    }
    cfg.steady.eta = config.get_double("steady.eta");
    cfg.steady.tol = config.get_double("steady.tol");
    cfg.steady.max_iter = config.get_count("steady.max_iter");
    cfg.steady.validate();

    OracleSetup& o = cfg.oracle;
    o.model = config.get_string("oracle.model");
    o.n = static_cast<Index>(config.get_int("oracle.n"));
    if (o.model == "two_site") {
      if (o.n != 2) throw ConfigError("oracle.model = two_site needs oracle.n = 2");
    } else if (o.model == "ring") {
      if (o.n < 2 || o.n > oracle::kMaxSites) throw ConfigError("oracle.n must be in [2, 4]");
    } else {
      throw ConfigError("oracle.model must be two_site or ring");
    }
    o.t_final = config.get_double("oracle.t_final");
    o.dt = config.get_double("oracle.dt");
    o.sample_every = config.get_count("oracle.sample_every");
    o.t_probe = config.get_double("oracle.t_probe");
    o.u_grid = config.get_list("oracle.u_grid");
    if (!(o.dt > 0.0) || !(o.t_final >= 0.0) || !(o.t_probe >= 0.0) || o.sample_every < 1) {
      throw ConfigError("oracle: need dt > 0, t_final >= 0, t_probe >= 0, sample_every >= 1");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

std::string u_label(double u) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", u);
  return buf;
}

std::string write_effective_config(const RunConfig& cfg, const std::string& out_dir,
                                   const std::string& command) {
  ensure_dir(out_dir);
  const std::string path = join_path(out_dir, command + ".cfg");
  write_text(path, "# effective configuration of `spdmlab " + command +
                       "`; re-run with --config to reproduce\n" + cfg.raw.dump());
  return path;
}

RingResult run_ring_reset(const RunConfig& cfg, const std::string& out_dir, unsigned jobs,
                          bool track_spectrum) {
  const RingSetup& r = cfg.ring;
  const ComplexMatrix m = r.hamiltonian();
  const ComplexMatrix f_e = r.target();
  const ComplexMatrix v0 = r.initial_state();
  const std::string kind = r.protocol.kind == ResetKind::ri ? "ri" : "ec";
  if (!out_dir.empty()) ensure_dir(out_dir);

  double reference = kNaN;
  if (r.protocol.kind == ResetKind::ri) {
    try {
      reference = subsystem_occupation(
          steady_ri(subsystem_affine_map(m, r.protocol.tau, f_e, r.part)), r.part.n_s);
    } catch (const SingularError&) {
      reference = kNaN;  // e.g. decoupled subsystem: no unique fixed point
    }
  }

  RingResult result;
  result.plateaus.resize(r.u_grid.size());
  result.final_states.resize(r.u_grid.size());
  result.series.resize(r.u_grid.size());
  std::vector<std::string> files(r.u_grid.size());
  parallel_for(r.u_grid.size(), jobs, [&](std::size_t i) {
    const double u = r.u_grid[i];
    const ProtocolRun run =
        run_protocol(m, r.unit.scaled(u), f_e, r.part, r.protocol, v0, track_spectrum);
    std::vector<double> series;
    series.reserve(run.records.size());
    for (const auto& rec : run.records) series.push_back(rec.n_s_avg);

    RingPlateau& pl = result.plateaus[i];
    pl.u = u;
    pl.plateau = plateau_of(series);
    pl.final_value = series.back();
    pl.reference = (u == 0.0) ? reference : kNaN;
    pl.clipped = run.clipped_strokes;
    pl.min_eigenvalue = run.min_eigenvalue;
    pl.max_eigenvalue = run.max_eigenvalue;
    result.final_states[i] = run.final_state;
    result.series[i] = series;

    if (!out_dir.empty()) {
      std::vector<std::string> header = {"stroke", "t", "n_S_avg"};
      for (Index a = 0; a < r.part.n_s; ++a) header.push_back("n_S_" + std::to_string(a + 1));
      const std::string path = join_path(out_dir, "ring_" + kind + "_U" + u_label(u) + ".csv");
      CsvWriter csv(path, header);
      for (const auto& rec : run.records) {
        csv.field(rec.stroke).field(rec.time).field(rec.n_s_avg);
        for (Index a = 0; a < r.part.n_s; ++a) csv.field(rec.diagonal(a));
        csv.end_row();
      }
      csv.close();
      files[i] = path;
    }
  });

  if (!out_dir.empty()) {
    result.files = files;
    const std::string path = join_path(out_dir, "ring_" + kind + "_plateau.csv");
    CsvWriter csv(path, {"U", "n_S_plateau", "n_S_final", "n_S_steady", "clipped_strokes",
                         "min_eigenvalue", "max_eigenvalue"});
    for (const auto& pl : result.plateaus) {
      csv.field(pl.u).field(pl.plateau).field(pl.final_value).field(pl.reference)
          .field(pl.clipped).field(pl.min_eigenvalue).field(pl.max_eigenvalue);
      csv.end_row();
    }
    csv.close();
    result.files.push_back(path);
  }
  return result;
}

RingResult run_ring_gkls(const RunConfig& cfg, const std::string& out_dir, unsigned jobs,
                         bool track_spectrum) {
  const RingSetup& r = cfg.ring;
  const ComplexMatrix m = r.hamiltonian();
  const BathSpec bath = r.gkls_bath();
  const ComplexMatrix v0 = r.initial_state();
  IntegratorSpec spec = r.gkls;
  spec.track_spectrum = track_spectrum;
  if (!out_dir.empty()) ensure_dir(out_dir);

  RingResult result;
  result.plateaus.resize(r.u_grid.size());
  result.final_states.resize(r.u_grid.size());
  result.series.resize(r.u_grid.size());
  std::vector<std::string> files(r.u_grid.size());
  parallel_for(r.u_grid.size(), jobs, [&](std::size_t i) {
    const double u_value = r.u_grid[i];
    const InteractionSpec u = r.unit.scaled(u_value);
    const auto traj = integrate_observed<double>(
        [&](const ComplexMatrix& v) { return rhs_hartree(v, m, u, bath); }, v0, spec,
        [&](const ComplexMatrix& v) { return subsystem_occupation(v, r.part.n_s); });

    RingPlateau& pl = result.plateaus[i];
    pl.u = u_value;
    pl.plateau = plateau_of(traj.records);
    pl.final_value = traj.records.back();
    try {
      pl.reference = subsystem_occupation(steady_hartree(m, u, bath, cfg.steady).v, r.part.n_s);
    } catch (const Error&) {
      pl.reference = kNaN;
    }
    pl.clipped = traj.stats.clipped_steps;
    pl.min_eigenvalue = traj.stats.min_eigenvalue;
    pl.max_eigenvalue = traj.stats.max_eigenvalue;
    result.final_states[i] = traj.final_state;
    result.series[i] = traj.records;

    if (!out_dir.empty()) {
      const std::string path = join_path(out_dir, "ring_gkls_U" + u_label(u_value) + ".csv");
      CsvWriter csv(path, {"t", "n_S_avg"});
      for (std::size_t k = 0; k < traj.times.size(); ++k) {
        csv.field(traj.times[k]).field(traj.records[k]);
        csv.end_row();
      }
      csv.close();
      files[i] = path;
    }
  });

  if (!out_dir.empty()) {
    result.files = files;
    const std::string path = join_path(out_dir, "ring_gkls_plateau.csv");
    CsvWriter csv(path, {"U", "n_S_plateau", "n_S_final", "n_S_steady", "clipped_steps",
                         "min_eigenvalue", "max_eigenvalue"});
    for (const auto& pl : result.plateaus) {
      csv.field(pl.u).field(pl.plateau).field(pl.final_value).field(pl.reference)
          .field(pl.clipped).field(pl.min_eigenvalue).field(pl.max_eigenvalue);
      csv.end_row();
    }
    csv.close();
    result.files.push_back(path);
  }
  return result;
}

twosite::Run run_two_site_traj(const RunConfig& cfg, const std::string& out_dir) {
  twosite::Run run = twosite::run(cfg.two_site, cfg.two_site_s0, cfg.integrator);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    CsvWriter csv(join_path(out_dir, "two_site_traj.csv"), {"t", "n1", "n2", "re_c", "im_c"});
    for (const auto& s : run.samples) {
      csv.field(s.t).field(s.n1).field(s.n2).field(s.re_c).field(s.im_c);
      csv.end_row();
    }
    csv.close();
  }
  return run;
}

std::vector<twosite::SteadyPoint> run_sweep_u(const RunConfig& cfg, const std::string& out_dir,
                                              unsigned jobs) {
  auto points = twosite::sweep_u(cfg.two_site, cfg.sweep_u, cfg.two_site_s0, cfg.integrator,
                                 cfg.steady, jobs);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    CsvWriter csv(join_path(out_dir, "two_site_sweep.csv"),
                  {"U", "n1ss", "n2ss", "residual", "n1_fixed", "n2_fixed", "route_gap",
                   "bistable", "flag"});
    for (const auto& p : points) {
      csv.field(p.u).field(p.n1).field(p.n2).field(p.residual).field(p.n1_fixed)
          .field(p.n2_fixed).field(p.route_gap).field(p.bistable).field(p.flag);
      csv.end_row();
    }
    csv.close();
  }
  return points;
}

std::vector<twosite::DeltaPoint> run_delta_grid(const RunConfig& cfg,
                                                const std::string& out_dir, unsigned jobs) {
  auto grid = twosite::sweep_delta_n1(cfg.two_site, cfg.sweep_u, cfg.sweep_f2,
                                      cfg.two_site_s0, cfg.integrator, jobs);
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    CsvWriter csv(join_path(out_dir, "delta_n1_grid.csv"), {"U", "f2", "delta_n1ss", "flag"});
    for (const auto& d : grid) {
      csv.field(d.u).field(d.f2).field(d.delta_n1).field(d.flag);
      csv.end_row();
    }
    csv.close();
  }
  return grid;
}

void run_steady(const RunConfig& cfg, const std::string& out_dir) {
  ensure_dir(out_dir);
  if (cfg.steady_model == "two_site") {
    const twosite::Params& p = cfg.two_site;
    CsvWriter csv(join_path(out_dir, "steady_two_site.csv"),
                  {"solver", "U", "n1", "n2", "re_c", "im_c", "residual", "iterations"});
    auto row = [&](const std::string& solver, double u, const ComplexMatrix& v, double res,
                   std::size_t it) {
      csv.field(solver).field(u).field(v(0, 0).real()).field(v(1, 1).real())
          .field(v(0, 1).real()).field(v(0, 1).imag()).field(res).field(it);
      csv.end_row();
    };
    twosite::Params p0 = p;
    p0.u = 0.0;
    const ComplexMatrix lyap = steady_affine(p0.hamiltonian(), p0.bath());
    row("lyapunov", 0.0, lyap, max_abs(rhs_affine(lyap, p0.hamiltonian(), p0.bath())), 1);
    const HartreeFixedPoint fp =
        steady_hartree(p.hamiltonian(), p.interaction(), p.bath(), cfg.steady);
    row("hartree_fixed_point", p.u, fp.v, fp.residual, fp.iterations);
    IntegratorSpec quiet = cfg.integrator;
    quiet.sample_every = std::max<std::size_t>(1, quiet.steps());
    const twosite::Run run = twosite::run(p, cfg.two_site_s0, quiet);
    const ComplexMatrix v = run.final_state.assemble();
    row("integration", p.u, v,
        max_abs(rhs_hartree(v, p.hamiltonian(), p.interaction(), p.bath())), run.stats.steps);
    csv.close();
    return;
  }

  const RingSetup& r = cfg.ring;
  const ComplexMatrix m = r.hamiltonian();
  const ComplexMatrix f_e = r.target();
  const BathSpec bath = r.gkls_bath();
  CsvWriter csv(join_path(out_dir, "steady_ring.csv"),
                {"solver", "U", "n_S_avg", "residual", "iterations"});
  const AffineMap map = subsystem_affine_map(m, r.protocol.tau, f_e, r.part);
  const ComplexMatrix stein = steady_ri(map);
  csv.field("stein").field(0.0).field(subsystem_occupation(stein, r.part.n_s))
      .field(max_abs(map.apply(stein) - stein)).field(std::size_t{1});
  csv.end_row();
  const ComplexMatrix lyap = steady_affine(m, bath);
  csv.field("lyapunov").field(0.0).field(subsystem_occupation(lyap, r.part.n_s))
      .field(max_abs(rhs_affine(lyap, m, bath))).field(std::size_t{1});
  csv.end_row();
  for (double u : r.u_grid) {
    const HartreeFixedPoint fp = steady_hartree(m, r.unit.scaled(u), bath, cfg.steady);
    csv.field("hartree_fixed_point").field(u).field(subsystem_occupation(fp.v, r.part.n_s))
        .field(fp.residual).field(fp.iterations);
    csv.end_row();
  }
  csv.close();
}

OracleCheckResult run_oracle_check(const RunConfig& cfg, const std::string& out_dir) {
  const OracleSetup& o = cfg.oracle;
  const oracle::FockOperators ops(o.n);
  ComplexMatrix m;
  BathSpec bath;
  ComplexMatrix rho0;
  InteractionSpec unit;
  if (o.model == "two_site") {
    twosite::Params p = cfg.two_site;
    m = p.hamiltonian();
    bath = p.bath();
    unit = InteractionSpec::nearest_neighbor(2, 1.0, false);
    rho0 = oracle::gaussian_state(project_physical(cfg.two_site_s0.assemble()), ops);
  } else {
    RingSpec ring;
    ring.n = o.n;
    ring.hopping = cfg.ring.ring.hopping;
    ring.periodic = cfg.ring.ring.periodic;
    ring.onsite.assign(static_cast<std::size_t>(o.n), 0.0);
    m = build_ring_hamiltonian(ring);
    Rng rng(cfg.seed);
    bath = BathSpec::none(o.n);
    for (Index a = 0; a < o.n; ++a) {
      bath.gamma(a) = rng.uniform(0.2, 1.0);
      bath.f(a) = rng.uniform(0.1, 0.9);
    }
    unit = InteractionSpec::nearest_neighbor(o.n, 1.0, ring.periodic);
    rho0 = oracle::pure_state(rng.unit_vector(ops.dim()));
  }

  const oracle::EmbeddingReport rep =
      oracle::verify_embedding(m, bath, rho0, o.t_final, o.dt, o.sample_every);
  OracleCheckResult out;
  out.max_deviation = rep.max_deviation;
  out.max_trace_error = rep.max_trace_error;
  out.min_eigenvalue = rep.min_eigenvalue;
  if (o.n <= 3 && !o.u_grid.empty()) {
    for (const auto& pt : oracle::hartree_error_scan(m, unit, bath, rho0, o.u_grid, o.t_probe, o.dt)) {
      out.hartree_u.push_back(pt.u);
      out.hartree_error.push_back(pt.error);
    }
  }

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    CsvWriter csv(join_path(out_dir, "oracle_check.csv"), {"t", "max_dev"});
    for (std::size_t k = 0; k < rep.times.size(); ++k) {
      csv.field(rep.times[k]).field(rep.deviation[k]);
      csv.end_row();
    }
    csv.close();
    if (!out.hartree_u.empty()) {
      CsvWriter h(join_path(out_dir, "oracle_hartree.csv"), {"U", "err"});
      for (std::size_t k = 0; k < out.hartree_u.size(); ++k) {
        h.field(out.hartree_u[k]).field(out.hartree_error[k]);
        h.end_row();
      }
      h.close();
    }
  }
  return out;
}

}  // namespace spdm
