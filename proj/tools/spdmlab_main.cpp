// spdmlab command line tool.
//
// Exit codes: 0 success, 1 verification checks failed, 2 configuration
// error, 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdmlab/checks.hpp"
#include "spdmlab/config.hpp"
#include "spdmlab/csv.hpp"
#include "spdmlab/errors.hpp"
#include "spdmlab/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::string out_dir;
  unsigned jobs = 1;
  std::vector<std::string> overrides;
};

spdm::RunConfig load(const Options& opt) {
  spdm::Config config = spdm::Config::defaults();
  if (!opt.config_path.empty()) config.merge_file(opt.config_path);
  for (const auto& o : opt.overrides) config.apply_override(o);
  return spdm::load_run_config(config);
}

std::string output_dir(const Options& opt) {
  if (!opt.out_dir.empty()) return opt.out_dir;
  if (const char* env = std::getenv("SPDMLAB_OUT"); env && *env) return env;
  return "spdmlab_out";
}

void print_plateaus(const char* label, const spdm::RingResult& r) {
  for (const auto& p : r.plateaus) {
    std::cout << label << " U=" << spdm::u_label(p.u) << " plateau=" << spdm::format_real(p.plateau)
              << " steady=" << spdm::format_real(p.reference) << '\n';
  }
}

int run_command(const std::string& command, const Options& opt) {
  const spdm::RunConfig cfg = load(opt);
  const std::string out = output_dir(opt);
  const unsigned jobs = std::max(1u, opt.jobs);
  spdm::write_effective_config(cfg, out, command);

  if (command == "ring-ri") {
    print_plateaus(spdm::to_string(cfg.ring.protocol.kind).c_str(),
                   spdm::run_ring_reset(cfg, out, jobs));
  } else if (command == "ring-gkls") {
    print_plateaus("gkls", spdm::run_ring_gkls(cfg, out, jobs));
  } else if (command == "two-site") {
    const auto run = spdm::run_two_site_traj(cfg, out);
    std::cout << "n1=" << spdm::format_real(run.final_state.n1)
              << " n2=" << spdm::format_real(run.final_state.n2)
              << " clipped_steps=" << run.stats.clipped_steps << '\n';
  } else if (command == "sweep-u") {
    const auto pts = spdm::run_sweep_u(cfg, out, jobs);
    std::size_t flagged = 0;
    for (const auto& p : pts) flagged += p.flag.empty() ? 0 : 1;
    std::cout << pts.size() << " points, " << flagged << " flagged\n";
  } else if (command == "delta-grid") {
    const auto grid = spdm::run_delta_grid(cfg, out, jobs);
    std::cout << grid.size() << " grid points\n";
  } else if (command == "steady") {
    spdm::run_steady(cfg, out);
  } else if (command == "oracle-check") {
    const auto res = spdm::run_oracle_check(cfg, out);
    std::cout << "max_dev=" << spdm::format_real(res.max_deviation)
              << " trace_error=" << spdm::format_real(res.max_trace_error) << '\n';
    for (std::size_t k = 0; k < res.hartree_u.size(); ++k) {
      std::cout << "hartree U=" << spdm::u_label(res.hartree_u[k])
                << " err=" << spdm::format_real(res.hartree_error[k]) << '\n';
    }
  } else if (command == "verify") {
    const auto results = spdm::checks::verify_suite(cfg.seed);
    spdm::checks::write_report(results, out + "/verify_report.csv");
    bool ok = true;
    for (const auto& r : results) {
      std::cout << spdm::checks::format_line(r) << '\n';
      ok = ok && r.pass;
    }
    return ok ? kExitOk : kExitChecksFailed;
  }
  std::cout << "wrote results to " << out << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPDM dynamics of fermionic lattices under resetting and GKLS baths"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "spdmlab 0.1.0");

  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"ring-ri", "stroboscopic reset protocol on the ring, one run per U"},
      {"ring-gkls", "continuous GKLS + Hartree flow on the ring, one run per U"},
      {"two-site", "two-site trajectory at two_site.u"},
      {"sweep-u", "two-site steady occupations over the U grid"},
      {"delta-grid", "two-site Delta n1ss over the (U, f2) grid"},
      {"steady", "steady-state solvers for the two-site model or the ring"},
      {"oracle-check", "exact many-body Lindblad vs the SPDM flow (N <= 4)"},
      {"verify", "fast invariant and oracle suite; exits 1 if any check fails"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config_path, "config file (section.key = value)");
    sub->add_option("--out", opt.out_dir, "output directory (default $SPDMLAB_OUT or ./spdmlab_out)");
    sub->add_option("--jobs", opt.jobs, "worker threads for independent grid points")
        ->check(CLI::PositiveNumber);
    sub->add_option("--set", opt.overrides, "override, section.key=value (repeatable)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run_command(command, opt);
  } catch (const spdm::ConfigError& e) {
    std::cerr << "spdmlab: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const spdm::Error& e) {
    std::cerr << "spdmlab: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "spdmlab: " << e.what() << '\n';
    return kExitNumerical;
  }
}
