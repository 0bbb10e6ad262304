#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lowrank/errors.hpp"
#include "runner/config.hpp"
#include "runner/run.hpp"

int main(int argc, char** argv) {
  namespace rn = lowrank::runner;
  CLI::App app{"Low-rank kinetic and advection experiments"};
  std::string config_path;
  rn::Overrides o;
  app.add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
  app.add_option("--experiment", o.experiment,
                 "bgk-steady | bgk-relax | advection-error | maxwellian-approx | scaling");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--workers", o.workers, "Worker threads inside solver phases");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--steps", o.steps, "Number of time steps");
  app.add_option("--dt", o.dt, "Time step (units of tau_r for BGK)");
  app.add_option("--rank", o.rank, "Implicit solver rank, or r_max for explicit runs");
  app.add_option("--q-modes", o.q_modes, "Modes per dimension");
  bool print_config = false;
  app.add_flag("--print-config", print_config, "Print the effective configuration and exit");
  CLI11_PARSE(app, argc, argv);

  rn::ExperimentConfig config;
  try {
    nlohmann::json doc = nlohmann::json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      doc = nlohmann::json::parse(in);
    }
    config = rn::apply_overrides(doc, o);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return rn::kConfigError;
  }

  if (print_config) {
    std::cout << rn::to_json(config).dump(2) << '\n';
    return rn::kSuccess;
  }

  try {
    const rn::RunOutcome out = rn::run(config);
    std::cout << rn::to_string(config.kind) << ": " << out.summary.dump() << '\n';
    if (out.status == rn::kNotConverged) std::cerr << "warning: solver did not converge on every step\n";
    return out.status;
  } catch (const lowrank::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return rn::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rn::kFailure;
  }
}
