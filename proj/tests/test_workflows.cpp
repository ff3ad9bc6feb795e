#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "axonpml/errors.hpp"
#include "axonpml/modespec.hpp"
#include "axonpml/workflows.hpp"
#include "doctest.h"

using namespace axonpml;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "axonpml_workflow_test" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  REQUIRE(is);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int count_lines(const fs::path& p) {
  std::ifstream is(p);
  int n = 0;
  for (std::string line; std::getline(is, line);) ++n;
  return n;
}

RunConfig annulus(const std::string& workflow) {
  return parse_config(json::parse(R"({
    "workflow": ")" + workflow + R"(",
    "name": "small",
    "geometry": {"Z": 3.141592653589793, "r_inner": 1.0, "R": 3.0, "rho": 4.0},
    "materials": {"exterior": {"epsilon": 6.25}},
    "pml": {"chi0": 10.0},
    "mesh": {"nr": 12, "nz": 6, "levels": 2},
    "compare": {"chi0_sweep": [0.5, 2], "dtn_modes_sweep": [10, 30]}
  })"));
}

RunConfig axon(const std::string& incident) {
  return parse_config(json::parse(R"({
    "workflow": "simulate",
    "name": "axon",
    "mode": "TE",
    "geometry": {"Z": 4.0, "R": 1.5, "rho": 2.0, "axon_radius": 0.5, "myelin_outer": 0.8},
    "materials": {"omega": 5.0,
                  "axon": {"epsilon": 2.0, "sigma": 0.2},
                  "myelin": {"epsilon": 10.0},
                  "exterior": {"epsilon": 1.2}},
    "pml": {"chi0": 20.0},
    "mesh": {"nr": 20, "nz": 40},
    "boundary": {"incident": {"profile": ")" + incident + R"(", "kc": 7.663411940415024}},
    "variants": [{"name": "covered", "myelin_z_intervals": [[0, 3.5]]},
                 {"name": "bare", "myelin_z_intervals": []}]
  })"));
}

}  // namespace

TEST_CASE("converge writes tables, fields and slopes") {
  const RunContext ctx{scratch("converge"), true, std::nullopt};
  const ConvergeResult res = run_converge(annulus("converge"), ctx);
  REQUIRE(res.levels.size() == 2);
  CHECK(res.levels[1].physical.weighted_L2 < res.levels[0].physical.weighted_L2);
  REQUIRE(res.slope_L2);
  REQUIRE(res.slope_H1);
  CHECK(*res.slope_L2 > 1.0);
  CHECK(*res.slope_H1 > 0.5);
  for (const ConvergeLevel& l : res.levels) CHECK(l.solve.relative_residual < 1e-8);

  const fs::path dir = ctx.out_root / "small";
  CHECK(count_lines(dir / "tables" / "convergence.csv") == 3);
  CHECK(fs::exists(dir / "tables" / "slopes.csv"));
  CHECK(fs::exists(dir / "fields" / "solution.vtk"));
  CHECK(fs::exists(dir / "log.txt"));
  const RunConfig echo = load_config(dir / "config.echo");
  CHECK(to_json(echo) == to_json(annulus("converge")));
}

TEST_CASE("converge on a single level reports no slope") {
  const RunContext ctx{scratch("single"), true, 1};
  const ConvergeResult res = run_converge(annulus("converge"), ctx);
  CHECK(res.levels.size() == 1);
  CHECK_FALSE(res.slope_L2);
  CHECK_FALSE(res.slope_H1);
}

TEST_CASE("converge warns about a non-absorbing layer") {
  RunConfig cfg = annulus("converge");
  cfg.chi0 = 0.0;
  const RunContext ctx{scratch("chi0zero"), true, 1};
  const ConvergeResult res = run_converge(cfg, ctx);
  bool found = false;
  for (const std::string& w : res.warnings) found |= w.find("chi0 = 0") != std::string::npos;
  CHECK(found);
}

TEST_CASE("converge output is deterministic") {
  const RunContext a{scratch("det_a"), true, 1};
  const RunContext b{scratch("det_b"), true, 1};
  run_converge(annulus("converge"), a);
  run_converge(annulus("converge"), b);
  for (const char* f : {"tables/convergence.csv", "fields/solution.csv", "fields/solution.vtk"}) {
    CHECK(slurp(a.out_root / "small" / f) == slurp(b.out_root / "small" / f));
  }
}

TEST_CASE("compare agrees with the exact mode on a small annulus") {
  const RunContext ctx{scratch("compare"), true, std::nullopt};
  const CompareResult res = run_compare(annulus("compare"), ctx);
  CHECK(res.dtn_modes == 30);
  CHECK(res.kappa == doctest::Approx(std::sqrt(6.25 - 4.0)).epsilon(1e-12));
  CHECK(res.main.discrepancy_U < 0.05);
  CHECK(res.dtn_error_U < 0.1);
  REQUIRE(res.sweep.size() == 2);
  CHECK(res.sweep[1].discrepancy_U < res.sweep[0].discrepancy_U);
  REQUIRE(res.modes_sweep.size() == 2);
  CHECK(res.modes_sweep.back().change_U == 0.0);
  const fs::path dir = ctx.out_root / "small";
  CHECK(count_lines(dir / "tables" / "compare.csv") == 4);
  CHECK(count_lines(dir / "tables" / "dtn_modes.csv") == 3);
}

TEST_CASE("simulate with zero data gives the zero field") {
  const RunContext ctx{scratch("zero"), true, std::nullopt};
  const SimulateResult res = run_simulate(axon("zero"), ctx);
  REQUIRE(res.variants.size() == 2);
  for (const VariantResult& v : res.variants) CHECK(std::isnan(v.band_fraction));
  for (const NodalSample& s : read_csv(ctx.out_root / "axon" / "fields" / "covered.csv")) {
    CHECK(s.u == cplx(0.0));
  }
}

TEST_CASE("simulate partitions energy and the myelin concentrates it") {
  const RunContext ctx{scratch("simulate"), true, std::nullopt};
  const SimulateResult res = run_simulate(axon("bessel_j1"), ctx);
  REQUIRE(res.variants.size() == 2);
  for (const VariantResult& v : res.variants) {
    double sum = 0.0;
    for (const auto& [r, f] : v.fractions) sum += f;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.solve.relative_residual < 1e-8);
  }
  CHECK(res.variants[1].fractions.at(Region::Myelin) == 0.0);
  CHECK(res.variants[0].band_fraction > res.variants[1].band_fraction);
  const fs::path dir = ctx.out_root / "axon";
  CHECK(count_lines(dir / "tables" / "energy.csv") == 3);
  CHECK(slurp(dir / "fields" / "covered.vtk").find("SCALARS Er_re") != std::string::npos);
}

TEST_CASE("simulate results do not depend on the worker count") {
  const RunContext one{scratch("w1"), true, std::nullopt};
  const RunContext two{scratch("w2"), true, std::nullopt};
  ::setenv("AXONPML_WORKERS", "1", 1);
  CHECK(worker_count() == 1);
  run_simulate(axon("bessel_j1"), one);
  ::setenv("AXONPML_WORKERS", "2", 1);
  CHECK(worker_count() == 2);
  run_simulate(axon("bessel_j1"), two);
  ::unsetenv("AXONPML_WORKERS");
  for (const char* f : {"tables/energy.csv", "fields/covered.csv", "fields/bare.csv"}) {
    CHECK(slurp(one.out_root / "axon" / f) == slurp(two.out_root / "axon" / f));
  }
}

TEST_CASE("advise honours a kappa override") {
  RunConfig cfg = parse_config(json::parse(R"({
    "workflow": "advise",
    "name": "adv",
    "geometry": {"Z": 3.141592653589793, "r_inner": 1.0, "R": 10.0, "rho": 11.0},
    "materials": {"exterior": {"epsilon": 4.0}},
    "advise": {"target": 1e-8, "kappa": 1.7320508075688772, "chi0_grid": [1, 40],
               "d_grid": [0.5, 1.0]}
  })"));
  const RunContext ctx{scratch("advise"), true, std::nullopt};
  const AdviseResult res = run_advise(cfg, ctx);
  CHECK(res.kappa == 1.7320508075688772);
  CHECK(res.suggested_chi0 == suggest_chi0(1e-8, 10.0, 11.0, res.kappa));
  CHECK(res.suggested_bound <= 1e-8);
  CHECK(res.table.size() == 4);
  CHECK(count_lines(ctx.out_root / "adv" / "tables" / "bounds.csv") == 5);
}

TEST_CASE("an unwritable output root is reported") {
  const fs::path blocker = scratch("blocker");
  fs::create_directories(blocker.parent_path());
  std::ofstream(blocker) << "file, not a directory";
  const RunContext ctx{blocker, true, 1};
  CHECK_THROWS_AS(run_converge(annulus("converge"), ctx), std::runtime_error);
}
