#include "run.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "artifacts.hpp"
#include "experiments.hpp"

#ifndef LOWRANK_BUILD_ID
#define LOWRANK_BUILD_ID "unknown"
#endif

namespace lowrank::runner {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

json bgk_summary(const BgkRun& run, const BGKSpec& spec) {
  const MomentDrift d = moment_drift(run, spec);
  double worst = 0.0;
  int sweeps = 0;
  for (const auto& r : run.records) {
    worst = std::max(worst, r.nmae);
    sweeps += r.report.sweeps;
  }
  return {{"steps", run.records.back().step},
          {"floor", run.floor},
          {"max_nmae", worst},
          {"final_nmae", run.records.back().nmae},
          {"drift", {{"density", d.density}, {"velocity", d.velocity}, {"temperature", d.temperature}}},
          {"total_sweeps", sweeps},
          {"converged", run.converged}};
}

}  // namespace

const char* build_id() { return LOWRANK_BUILD_ID; }

RunOutcome run(const ExperimentConfig& c) {
  const auto t0 = Clock::now();
  const std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);

  RunOutcome out;
  json files = json::array();
  bool converged = true;

  switch (c.kind) {
    case ExperimentKind::BgkSteady: {
      const BgkRun run = run_bgk_steady(c);
      write_moments(dir / "moments.csv", run);
      write_steps(dir / "steps.csv", run);
      files = {"moments.csv", "steps.csv"};
      out.summary = bgk_summary(run, c.bgk);
      converged = run.converged;
      break;
    }
    case ExperimentKind::BgkRelax: {
      const RelaxRun relax = run_bgk_relax(c);
      write_relax_error(dir / "error.csv", relax.run);
      write_moments(dir / "moments.csv", relax.run);
      write_steps(dir / "steps.csv", relax.run);
      files = {"error.csv", "moments.csv", "steps.csv"};
      out.summary = bgk_summary(relax.run, c.bgk);
      out.summary["rate_per_tau"] = relax.rate;
      converged = relax.run.converged;
      break;
    }
    case ExperimentKind::AdvectionError: {
      const AdvectionRun run = run_advection(c);
      write_advection_error(dir / "error.csv", run);
      files = {"error.csv"};
      out.summary = {{"median_error", run.median_error},
                     {"max_error", run.max_error},
                     {"final_rank", run.records.back().max_rank},
                     {"converged", run.converged}};
      converged = run.converged;
      break;
    }
    case ExperimentKind::MaxwellianApprox: {
      const auto cells = run_maxwellian_sweep(c);
      write_heatmap(dir / "nmae_heatmap.csv", cells);
      files = {"nmae_heatmap.csv"};
      out.summary = {{"cells", cells.size()}};
      break;
    }
    case ExperimentKind::Scaling: {
      const auto rows = run_scaling(c);
      write_scaling(dir / "scaling.csv", rows);
      files = {"scaling.csv"};
      out.summary = {{"rows", rows.size()}};
      break;
    }
  }

  if (!converged) out.status = kNotConverged;
  const json manifest = {{"experiment", to_string(c.kind)},
                         {"build_id", build_id()},
                         {"config", to_json(c)},
                         {"config_source", c.source},
                         {"files", files},
                         {"summary", out.summary},
                         {"status", out.status},
                         {"wall_seconds", seconds_since(t0)}};
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  return out;
}

}  // namespace lowrank::runner
