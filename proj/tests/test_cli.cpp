#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = SPDMLAB_CLI_PATH;
const fs::path kTmp = SPDMLAB_TEST_TMP;

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + kCli + "\" " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string out(const std::string& name) { return (kTmp / name).string(); }

const std::string kShortSweep =
    " --set sweep.u_max=1 --set sweep.u_step=0.25 --set integrator.t_final=50";

}  // namespace

TEST_CASE("exit codes") {
  fs::create_directories(kTmp);
  CHECK(run("two-site --out " + out("ok") + " --set integrator.t_final=2") == 0);
  CHECK(fs::exists(kTmp / "ok" / "two_site_traj.csv"));
  CHECK(fs::exists(kTmp / "ok" / "two-site.cfg"));

  CHECK(run("two-site --out " + out("bad") + " --set ring.bogus=1") == 2);
  CHECK(run("two-site --out " + out("bad") + " --set integrator.dt=-1") == 2);
  CHECK(run("two-site --config " + out("missing.cfg")) == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("two-site --jobs 0") == 2);

  // a capped fixed-point iteration is a numerical failure
  CHECK(run("steady --out " + out("fail") + " --set two_site.u=2 --set steady.max_iter=1") == 3);
}

TEST_CASE("config file and output directory from the environment") {
  fs::create_directories(kTmp);
  {
    std::ofstream cfg(kTmp / "short.cfg");
    cfg << "# short run\nintegrator.t_final = 1\ntwo_site.u = 0.5\n";
  }
  const fs::path env_dir = kTmp / "from_env";
  fs::remove_all(env_dir);
  CHECK(run("two-site --config " + out("short.cfg"), "SPDMLAB_OUT=\"" + env_dir.string() + "\"") ==
        0);
  CHECK(fs::exists(env_dir / "two_site_traj.csv"));
  CHECK(slurp(env_dir / "two-site.cfg").find("two_site.u = 0.5") != std::string::npos);
}

TEST_CASE("reruns are byte-identical and independent of --jobs") {
  fs::create_directories(kTmp);
  REQUIRE(run("sweep-u --out " + out("a") + " --jobs 1" + kShortSweep) == 0);
  REQUIRE(run("sweep-u --out " + out("b") + " --jobs 1" + kShortSweep) == 0);
  REQUIRE(run("sweep-u --out " + out("c") + " --jobs 2" + kShortSweep) == 0);
  const std::string a = slurp(kTmp / "a" / "two_site_sweep.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(kTmp / "b" / "two_site_sweep.csv"));
  CHECK(a == slurp(kTmp / "c" / "two_site_sweep.csv"));
}

TEST_CASE("ring, steady and oracle subcommands on small inputs") {
  fs::create_directories(kTmp);
  const std::string ring =
      " --set ring.n=12 --set ring.n_s=3 --set protocol.n_strokes=20 --set gkls.t_final=5";
  CHECK(run("ring-ri --out " + out("ring") + ring) == 0);
  CHECK(fs::exists(kTmp / "ring" / "ring_ri_plateau.csv"));
  CHECK(run("ring-gkls --out " + out("ring") + ring) == 0);
  CHECK(fs::exists(kTmp / "ring" / "ring_gkls_plateau.csv"));
  CHECK(run("steady --out " + out("ring") + ring + " --set steady.model=ring") == 0);
  CHECK(fs::exists(kTmp / "ring" / "steady_ring.csv"));
  CHECK(run("oracle-check --out " + out("oracle") + " --set oracle.t_final=1") == 0);
  CHECK(fs::exists(kTmp / "oracle" / "oracle_check.csv"));
  CHECK(fs::exists(kTmp / "oracle" / "oracle_hartree.csv"));
  CHECK(run("delta-grid --out " + out("grid") + kShortSweep +
            " --set sweep.f2_step=0.5") == 0);
  CHECK(fs::exists(kTmp / "grid" / "delta_n1_grid.csv"));
}
