// Acceptance runner: one PASS/FAIL line per acceptance criterion, a CSV
// report (check_name, value, bound, pass, detail, seconds) and a non-zero
// exit status when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdmlab/checks.hpp"
#include "spdmlab/config.hpp"
#include "spdmlab/experiments.hpp"
#include "spdmlab/random.hpp"
#include "spdmlab/twosite.hpp"

using namespace spdm;
using checks::CheckResult;

namespace {

IntegratorSpec tracked(IntegratorSpec s) {
  s.track_spectrum = true;
  return s;
}

void report(std::vector<CheckResult>& all, CheckResult r) {
  std::cout << checks::format_line(r) << std::endl;
  all.push_back(std::move(r));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spdmlab acceptance checks"};
  std::string out_dir = "acceptance_out";
  unsigned jobs = 1;
  std::string config_dir = SPDMLAB_CONFIG_DIR;
  app.add_option("--out", out_dir, "directory for the report and run artifacts");
  app.add_option("--jobs", jobs, "worker threads for grid sweeps")->check(CLI::PositiveNumber);
  app.add_option("--configs", config_dir, "directory holding the shipped configurations");
  CLI11_PARSE(app, argc, argv);
  std::filesystem::create_directories(out_dir);

  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckResult> all;
  try {
    Config base = Config::defaults();
    base.merge_file(config_dir + "/default.cfg");
    const RunConfig cfg = load_run_config(base);
    Config resonant_raw = Config::defaults();
    resonant_raw.merge_file(config_dir + "/two_site_resonant.cfg");
    const RunConfig resonant = load_run_config(resonant_raw);
    const std::uint64_t seed = cfg.seed;

    report(all, checks::single_mode_relaxation());
    report(all, checks::decoherence_rates(seed));
    report(all, checks::embedding_suite(seed));
    report(all, checks::reset_map_oracle(seed));
    report(all, checks::steady_cross_validation());
    report(all, checks::component_matrix_equivalence(seed, 1000));

    report(all, checks::steady_monotonicity(cfg.two_site, cfg.sweep_u, cfg.integrator, jobs));
    report(all, checks::delta_nonnegative(cfg.two_site, cfg.sweep_u, cfg.sweep_f2,
                                          cfg.integrator, jobs));
    report(all, checks::delta_sign_change(resonant.two_site, resonant.sweep_u, resonant.sweep_f2,
                                          resonant.integrator, jobs));

    const std::string ring_dir = out_dir + "/ring";
    const RingResult ri = run_ring_reset(cfg, ring_dir, jobs, true);
    const RingResult gkls = run_ring_gkls(cfg, ring_dir, jobs, true);
    report(all, checks::ring_agreement(ri, gkls));
    report(all, checks::monotone_approach(ri));

    std::vector<twosite::Run> two_site_u0;
    std::vector<ComplexMatrix> finals;
    for (const RunConfig* c : {&cfg, &resonant}) {
      for (double u : {0.0, 0.5, 1.0, 2.0}) {
        twosite::Params p = c->two_site;
        p.u = u;
        twosite::Run run = twosite::run(p, c->two_site_s0, tracked(c->integrator));
        finals.push_back(run.final_state.assemble());
        if (u == 0.0) two_site_u0.push_back(std::move(run));
      }
    }
    finals.insert(finals.end(), ri.final_states.begin(), ri.final_states.end());
    finals.insert(finals.end(), gkls.final_states.begin(), gkls.final_states.end());
    report(all, checks::physicality_unprojected(ri, gkls, two_site_u0));
    report(all, checks::physicality_projected(finals));
    {
      RingSpec ring;
      ring.n = 12;
      ring.onsite.assign(12, 0.0);
      Rng rng(seed + 6);
      report(all, checks::trace_conservation(build_ring_hamiltonian(ring), rng.spdm(12)));
    }
    report(all, checks::hartree_error_scaling());
  } catch (const std::exception& e) {
    std::cerr << "acceptance: aborted: " << e.what() << '\n';
    return 2;
  }

  checks::write_report(all, out_dir + "/acceptance_report.csv");
  std::size_t failed = 0;
  for (const auto& r : all) failed += r.pass ? 0 : 1;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed (%.1fs)\n", all.size() - failed, all.size(), seconds);
  return failed == 0 ? 0 : 1;
}
