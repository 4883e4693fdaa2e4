#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nhflip/experiment.hpp"
#include "nhflip/presets.hpp"

using namespace nhflip;
namespace fs = std::filesystem;

namespace {

RunSpec small_spec() {
  RunSpec spec = preset("fig2");
  spec.schedule = CouplingSchedule::flip_at(8.0);
  spec.t_max = 16.0;
  spec.sample_stride = 100;
  return spec;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir(const char* tag) {
    path = fs::temp_directory_path() /
           (std::string("nhflip_test_") + tag + "_" +
            std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("repeated runs are byte identical") {
  TempDir d1("det1"), d2("det2");
  run_experiment(small_spec(), d1.path.string());
  run_experiment(small_spec(), d2.path.string());
  for (const char* f : {"full.csv", "reduced.csv", "fidelity.csv",
                        "verdict.txt", "manifest.txt"})
    CHECK(slurp(d1.path / f) == slurp(d2.path / f));
  CHECK(fs::exists(d1.path / "populations.svg"));
  CHECK(fs::exists(d1.path / "continuum.svg"));
  CHECK(fs::exists(d1.path / "fidelity.svg"));
}

TEST_CASE("a preset and its serialized form produce identical output") {
  const RunSpec spec = small_spec();
  const RunSpec reparsed = parse_run_spec(serialize_run_spec(spec));
  TempDir d1("ser1"), d2("ser2");
  run_experiment(spec, d1.path.string());
  run_experiment(reparsed, d2.path.string());
  CHECK(slurp(d1.path / "full.csv") == slurp(d2.path / "full.csv"));
  CHECK(slurp(d1.path / "reduced.csv") == slurp(d2.path / "reduced.csv"));
}

TEST_CASE("verdict fields on a short flip run") {
  const auto res = run_experiment(small_spec(), "");
  const Verdict& v = res.verdict;
  CHECK(v.has_echo);
  CHECK(v.f_at_2t_reduced == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(v.max_hermitian_drift < 1e-6);
  CHECK(v.lattice_sites >= 3);
  const std::string text = v.to_text();
  CHECK(text.find("F_at_2T_full") != std::string::npos);
  CHECK(text.find("backend") == std::string::npos);  // manifest's job
}

TEST_CASE("sweep value application") {
  const RunSpec base = preset("fig3b");

  SUBCASE("T rebuilds the schedule and horizon") {
    const RunSpec s = apply_sweep_value(base, "T", 50.0);
    CHECK(s.schedule.segments.size() == 2);
    CHECK(s.schedule.segments[0].duration == 50.0);
    CHECK(s.schedule.segments[1].non_hermitian);
    CHECK(s.t_max == 100.0);
  }

  SUBCASE("detuning_scale rescales the frequency pattern") {
    const RunSpec s = apply_sweep_value(base, "detuning_scale", 2.0);
    CHECK(s.sys.omega[0] == doctest::Approx(0.0));
    CHECK(s.sys.omega[1] == doctest::Approx(2.0));
    CHECK(s.sys.omega[2] == doctest::Approx(-1.0));
  }

  SUBCASE("coupling_scale rescales kappa_n") {
    const RunSpec s = apply_sweep_value(base, "coupling_scale", 0.5);
    CHECK(s.sys.kappa_n[0] == doctest::Approx(0.5 * base.sys.kappa_n[0]));
    CHECK(s.sys.kappa_n[2] == doctest::Approx(0.5 * base.sys.kappa_n[2]));
  }

  SUBCASE("unknown parameter is a validation error") {
    CHECK_THROWS_AS(apply_sweep_value(base, "zeta", 1.0), ParseError);
  }
}

TEST_CASE("sweep over T collects one row per value") {
  RunSpec base = small_spec();
  base.dt = 0.01;
  base.sample_stride = 100;
  TempDir d("sweep");
  const auto rows = sweep(base, "T", {4.0, 8.0}, d.path.string(), 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value == 4.0);
  CHECK(rows[1].value == 8.0);
  for (const auto& r : rows)
    CHECK(r.verdict.f_at_2t_reduced == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(fs::exists(d.path / "row_000" / "verdict.txt"));
  CHECK(fs::exists(d.path / "sweep_summary.csv"));

  const std::string csv = sweep_summary_csv("T", rows);
  CHECK(csv.find("T,") == 0);
  CHECK(csv.find("\n4,") != std::string::npos);
}

TEST_CASE("empty sweep is rejected") {
  CHECK_THROWS_AS(sweep(small_spec(), "T", {}, "", 1), ParseError);
}
