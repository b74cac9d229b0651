#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "spdmlab/config.hpp"
#include "spdmlab/csv.hpp"
#include "spdmlab/errors.hpp"
#include "spdmlab/experiments.hpp"
#include "spdmlab/parallel.hpp"
#include "spdmlab/random.hpp"
#include "test_support.hpp"

using namespace spdm;

TEST_CASE("config: defaults round-trip through dump") {
  const Config d = Config::defaults();
  Config again = Config::defaults();
  again.merge_text(d.dump(), "dump");
  CHECK(again.values() == d.values());
  CHECK(d.get_int("ring.n") == 110);
  CHECK(d.get_list("ring.u_grid") == std::vector<double>{0.0, 0.25, 0.5, 1.0});
  CHECK(d.get_bool("ring.periodic"));
  CHECK(d.get_string("protocol.kind") == "ri");
}

TEST_CASE("config: parsing rules") {
  Config c = Config::defaults();
  c.merge_text("# comment\n\n ring.n = 12 \nthermal.beta = inf\n", "a.cfg");
  CHECK(c.get_int("ring.n") == 12);
  CHECK(std::isinf(c.get_double("thermal.beta")));

  auto message = [](const std::string& text) {
    Config cfg = Config::defaults();
    try {
      cfg.merge_text(text, "bad.cfg");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("ring.n = 4\nring.n = 5\n").find("bad.cfg:2") != std::string::npos);
  CHECK(message("ring.bogus = 1\n").find("unknown") != std::string::npos);
  CHECK(message("\nno equals sign\n").find("bad.cfg:2") != std::string::npos);
  CHECK_FALSE(message("ring.n = 4\n").size());

  c.apply_override("ring.n_s=3");
  CHECK(c.get_count("ring.n_s") == 3);
  CHECK_THROWS_AS(c.apply_override("ring.n_s"), ConfigError);
  CHECK_THROWS_AS(c.apply_override("nosection=1"), ConfigError);
  c.set("ring.n", "abc");
  CHECK_THROWS_AS(c.get_int("ring.n"), ConfigError);
  c.set("ring.periodic", "maybe");
  CHECK_THROWS_AS(c.get_bool("ring.periodic"), ConfigError);
  c.set("thermal.mu", "nan");
  CHECK_THROWS_AS(c.get_double("thermal.mu"), ConfigError);
  CHECK_THROWS_AS(Config::defaults().merge_file("missing.cfg"), ConfigError);
}

TEST_CASE("config: run configuration validation") {
  CHECK_NOTHROW(load_run_config(Config::defaults()));
  auto rejects = [](const std::string& assignment) {
    Config c = Config::defaults();
    c.apply_override(assignment);
    CHECK_THROWS_AS(load_run_config(c), ConfigError);
  };
  rejects("ring.n_s=110");
  rejects("ring.n=1");
  rejects("ring.u_grid=1,0.5");
  rejects("ring.interaction=long_range");
  rejects("ring.initial_subsystem=1.5");
  rejects("thermal.basis=momentum");
  rejects("protocol.kind=fast");
  rejects("protocol.tau=-1");
  rejects("integrator.dt=0");
  rejects("integrator.method=leapfrog");
  rejects("two_site.gamma1=-0.5");
  rejects("two_site.f2=2");
  rejects("sweep.f2_max=1.5");
  rejects("sweep.u_step=0");
  rejects("steady.eta=0");
  rejects("oracle.n=5");
  rejects("run.seed=-1");
}

TEST_CASE("csv: number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_real(x)) == x);
  }
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("csv: write and read back") {
  const std::string path = "csv_roundtrip_test.csv";
  {
    CsvWriter w(path, {"name", "x", "n", "ok"});
    w.field("a,b").field(0.1).field(std::size_t{7}).field(true);
    w.end_row();
    w.field("c").field(-1.5);
    CHECK_THROWS_AS(w.end_row(), Error);
  }
  std::ifstream raw(path, std::ios::binary);
  std::string first;
  std::getline(raw, first);
  CHECK(first == "name,x,n,ok\r");
  raw.close();

  const CsvTable t = read_csv(path);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][t.column("name")] == "a,b");
  CHECK(std::stod(t.rows[0][t.column("x")]) == 0.1);
  CHECK(t.rows[0][t.column("ok")] == "true");
  CHECK_THROWS_AS(t.column("missing"), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("rng: deterministic and well-formed") {
  Rng a(2024), b(2024), c(2025);
  const double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
  CHECK(x >= 0.0);
  CHECK(x < 1.0);
  const ComplexMatrix u = a.unitary(5);
  CHECK(max_abs(u * u.adjoint() - ComplexMatrix::Identity(5, 5)) < 1e-13);
  CHECK(spdm::test::physical(a.spdm(6)));
  CHECK(hermiticity_residual(a.hermitian(4)) == 0.0);
  CHECK(std::abs(a.unit_vector(7).norm() - 1.0) < 1e-14);
}

TEST_CASE("parallel_for: every index once, errors propagate") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  std::atomic<int> count{0};
  CHECK_THROWS_AS(parallel_for(50, 3,
                               [&](std::size_t i) {
                                 ++count;
                                 if (i == 10) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  parallel_for(0, 4, [&](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("effective config file is written and reloadable") {
  const std::string dir = "effective_config_test";
  const RunConfig cfg = load_run_config(Config::defaults());
  const std::string path = write_effective_config(cfg, dir, "verify");
  Config back = Config::defaults();
  back.merge_file(path);
  CHECK(back.values() == cfg.raw.values());
  std::filesystem::remove_all(dir);
}
