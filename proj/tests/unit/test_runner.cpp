#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "artifacts.hpp"
#include "config.hpp"
#include "lowrank/errors.hpp"
#include "run.hpp"

using namespace lowrank;
using namespace lowrank::runner;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lowrank_runner_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("defaults follow the simulation parameter table") {
  const auto c = parse_config({{"experiment", "bgk-steady"}});
  CHECK(c.bgk.temperature == 300.0);
  CHECK(c.bgk.gas_constant == 208.0);
  CHECK(c.bgk.tau_r == doctest::Approx(0.40034));
  CHECK(c.bgk.b_x == 500.0);
  CHECK(c.bgk.modes == 11);
  CHECK(c.bgk.dt == 0.01);
  CHECK(c.bgk.n_iter == 1000);
  CHECK(c.implicit.eps_tol == 1e-8);
  CHECK(c.implicit.delta_beta == 4.0);
  CHECK(c.rank == 2);
}

TEST_CASE("unknown keys and bad values are rejected before running") {
  CHECK_THROWS_AS(parse_config({{"experiment", "bgk-steady"}, {"colour", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "bgk-steady"}, {"bgk", {{"temprature", 300}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "bgk-steady"}, {"solver", {{"implicit", {{"sweeps", 3}}}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "warp-drive"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json::object()), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "bgk-steady"}, {"bgk", {{"modes", 10}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "bgk-steady"}, {"bgk", {{"modes", "eleven"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "bgk-steady"}, {"workers", 0}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "advection-error"}, {"advection", {{"c", {{1, 2}, {3}}}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "bgk-relax"}, {"relax", {{"epsilon", 1.5}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"experiment", "maxwellian-approx"}, {"sweep", {{"modes", {4}}}}}), ConfigError);
}

TEST_CASE("command line overrides map onto the experiment") {
  Overrides o;
  o.steps = 7;
  o.dt = 0.02;
  o.rank = 3;
  o.q_modes = 9;
  o.workers = 2;
  o.seed = 11;
  o.out = "elsewhere";
  const auto bgk = apply_overrides({{"experiment", "bgk-steady"}}, o);
  CHECK(bgk.bgk.n_iter == 7);
  CHECK(bgk.bgk.dt == 0.02);
  CHECK(bgk.rank == 3);
  CHECK(bgk.bgk.modes == 9);
  CHECK(bgk.implicit.workers == 2);
  CHECK(bgk.seed == 11);
  CHECK(bgk.output_dir == "elsewhere");

  const auto adv = apply_overrides({{"experiment", "advection-error"}}, o);
  CHECK(adv.explicit_steps == 7);
  CHECK(adv.explicit_solver.dt == 0.02);
  CHECK(adv.explicit_solver.r_max == 3);
  CHECK(adv.advection.spec.modes == 9);

  Overrides pick;
  pick.experiment = "scaling";
  CHECK(apply_overrides(json::object(), pick).kind == ExperimentKind::Scaling);
  Overrides bad;
  bad.q_modes = 8;
  CHECK_THROWS_AS(apply_overrides({{"experiment", "bgk-steady"}}, bad), ConfigError);
}

TEST_CASE("effective configuration round-trips through JSON") {
  const auto c = parse_config({{"experiment", "advection-error"}, {"solver", {{"explicit", {{"r_max", 5}}}}}});
  const auto again = parse_config(to_json(c));
  CHECK(to_json(again) == to_json(c));
  CHECK(again.explicit_solver.r_max == 5);
}

TEST_CASE("CSV writer quoting and schema line") {
  const auto dir = scratch("csv");
  std::filesystem::create_directories(dir);
  {
    CsvWriter csv(dir / "t.csv", "demo", {"a", "b"});
    csv << 1 << std::string("x,\"y\"");
    csv.end_row();
    csv << 0.1 << std::string("plain");
    csv.end_row();
    csv << 1;
    CHECK_THROWS_AS(csv.end_row(), InvalidStateError);
  }
  const std::string text = slurp(dir / "t.csv");
  CHECK(text.rfind("# lowrank-csv v1 demo\r\na,b\r\n1,\"x,\"\"y\"\"\"\r\n0.10000000000000001,plain\r\n", 0) == 0);
}

TEST_CASE("single-worker runs produce byte-identical artifacts") {
  for (const char* kind : {"bgk-steady", "maxwellian-approx", "advection-error"}) {
    CAPTURE(kind);
    json doc = {{"experiment", kind},
                {"solver", {{"implicit", {{"steps", 3}}}, {"explicit", {{"steps", 20}, {"dt", 0.01}}}}},
                {"advection", {{"modes", 21}, {"half_width", 6.0}}},
                {"sweep", {{"modes", {5, 11}}, {"ratios", {4, 5}}}}};
    std::vector<std::filesystem::path> dirs{scratch(std::string(kind) + "_a"), scratch(std::string(kind) + "_b")};
    for (const auto& d : dirs) {
      doc["output_dir"] = d.string();
      const auto out = run(parse_config(doc));
      CHECK(out.status == kSuccess);
      CHECK(std::filesystem::exists(d / "manifest.json"));
    }
    const json manifest = json::parse(slurp(dirs[0] / "manifest.json"));
    CHECK(manifest.at("build_id").get<std::string>().size() > 0);
    CHECK(manifest.at("config").at("experiment") == kind);
    CHECK(manifest.contains("wall_seconds"));
    for (const auto& file : manifest.at("files")) {
      const std::string name = file.get<std::string>();
      if (name == "steps.csv") continue;  // carries timings
      CHECK(slurp(dirs[0] / name) == slurp(dirs[1] / name));
      CHECK(slurp(dirs[0] / name).rfind("# lowrank-csv v1 ", 0) == 0);
    }
  }
}

TEST_CASE("steady run keeps the moments") {
  const auto dir = scratch("steady");
  const auto out = run(parse_config({{"experiment", "bgk-steady"},
                                     {"output_dir", dir.string()},
                                     {"solver", {{"implicit", {{"steps", 5}}}}}}));
  CHECK(out.status == kSuccess);
  CHECK(out.summary.at("drift").at("density").get<double>() < 1e-3);
  CHECK(out.summary.at("drift").at("temperature").get<double>() < 1e-3);
}
