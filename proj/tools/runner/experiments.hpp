#pragma once

#include <vector>

#include "config.hpp"
#include "lowrank/diagnostics.hpp"

namespace lowrank::runner {

struct BgkRecord {
  int step = 0;
  double time = 0.0;  // in units of tau_r
  MomentReport moments;
  double nmae = 0.0;  // against the analytic Maxwellian on the radial set
  StepReport report;  // empty for step 0
};

struct BgkRun {
  std::vector<BgkRecord> records;
  /// NMAE of the discrete equilibrium itself.
  double floor = 0.0;
  bool converged = true;
  CPTensor final_state;
};

/// Implicit run from CP(f_eq) padded to the solver rank.
BgkRun run_bgk_steady(const ExperimentConfig& config);

/// Implicit run from the perturbed initial condition. The fitted rate is in
/// units of 1/tau_r.
struct RelaxRun {
  BgkRun run;
  double rate = 0.0;
};
RelaxRun run_bgk_relax(const ExperimentConfig& config);

/// Largest relative change of mean density, |mean velocity| / sqrt(RT) and
/// mean temperature over the run.
struct MomentDrift {
  double density = 0.0;
  double velocity = 0.0;
  double temperature = 0.0;
  double max() const;
};
MomentDrift moment_drift(const BgkRun& run, const BGKSpec& spec);

struct AdvectionRecord {
  int step = 0;
  double time = 0.0;
  double relative_error = 0.0;
  int max_rank = 0;
  double reduction_error = 0.0;  // accumulated estimate
};

struct AdvectionRun {
  std::vector<AdvectionRecord> records;
  double median_error = 0.0;
  double max_error = 0.0;
  bool converged = true;
};

/// Explicit AB2 run of the advection problem, sampling the probe error at
/// z* = (h, ..., h).
AdvectionRun run_advection(const ExperimentConfig& config);

struct HeatmapCell {
  int modes = 0;
  double ratio = 0.0;  // b_v / sqrt(RT)
  double b_v = 0.0;
  double nmae = 0.0;
};

/// Rank-1 CP approximation of the Maxwellian over the (Q, b_v) grid.
std::vector<HeatmapCell> run_maxwellian_sweep(const ExperimentConfig& config);

struct ScalingRow {
  int modes = 0;
  int rank = 0;
  int workers = 0;
  long dof = 0;  // 6 Q r
  int steps = 0;
  double assemble_seconds = 0.0;  // per step
  double solve_seconds = 0.0;     // per step
  double wall_seconds = 0.0;      // per step
};

std::vector<ScalingRow> run_scaling(const ExperimentConfig& config);

}  // namespace lowrank::runner
