#include "experiments.hpp"

#include <algorithm>
#include <cmath>

#include "lowrank/errors.hpp"

namespace lowrank::runner {
namespace {

ImplicitStepper make_stepper(const BGKSpec& spec, ALSStepConfig als) {
  const auto pair = crank_nicolson_pair(bgk_model_operator(spec), spec.dt_seconds());
  return ImplicitStepper(spec.specs(), pair, als, Forcing{equilibrium_cp(spec), spec.nu()});
}

BgkRecord record(int step, const CPTensor& f, const BGKSpec& spec, const StepReport& report) {
  BgkRecord r;
  r.step = step;
  r.time = step * spec.dt;
  r.moments = moments(f, spec, r.time);
  r.nmae = nmae_vs_maxwellian(f, spec);
  r.report = report;
  return r;
}

BgkRun run_bgk(const ExperimentConfig& c, CPTensor f, int steps, int sample_every) {
  const BGKSpec& spec = c.bgk;
  ImplicitStepper stepper = make_stepper(spec, c.implicit);
  BgkRun run;
  run.floor = nmae_vs_maxwellian(equilibrium_cp(spec), spec);
  run.records.push_back(record(0, f, spec, {}));
  for (int n = 1; n <= steps; ++n) {
    StepResult r = stepper.step(f);
    f = std::move(r.tensor);
    if (!r.report.converged) run.converged = false;
    if (n % sample_every == 0 || n == steps) run.records.push_back(record(n, f, spec, r.report));
  }
  run.final_state = std::move(f);
  return run;
}

}  // namespace

double MomentDrift::max() const { return std::max({density, velocity, temperature}); }

BgkRun run_bgk_steady(const ExperimentConfig& c) {
  return run_bgk(c, pad_rank(equilibrium_cp(c.bgk), c.rank), c.bgk.n_iter, 1);
}

RelaxRun run_bgk_relax(const ExperimentConfig& c) {
  const int steps =
      c.relax.duration > 0.0 ? static_cast<int>(std::lround(c.relax.duration / c.bgk.dt)) : c.bgk.n_iter;
  CPTensor ic = perturbed_ic(c.bgk, c.relax.epsilon);
  if (ic.rank() > c.rank) throw ConfigError("bgk-relax: solver rank must be at least 2");
  RelaxRun out;
  out.run = run_bgk(c, pad_rank(ic, c.rank), steps, c.relax.sample_every);
  std::vector<double> t, y;
  for (const auto& r : out.run.records) {
    t.push_back(r.time);
    y.push_back(r.nmae);
  }
  out.rate = fit_decay_rate(t, y, out.run.floor);
  return out;
}

MomentDrift moment_drift(const BgkRun& run, const BGKSpec& spec) {
  MomentDrift d;
  if (run.records.empty()) return d;
  const MomentReport& m0 = run.records.front().moments;
  for (const auto& r : run.records) {
    const MomentReport& m = r.moments;
    d.density = std::max(d.density, std::abs(m.mean_density - m0.mean_density) / m0.mean_density);
    double du = 0.0;
    for (int i = 0; i < 3; ++i) du += std::pow(m.mean_velocity[i] - m0.mean_velocity[i], 2);
    d.velocity = std::max(d.velocity, std::sqrt(du) / spec.thermal_speed());
    d.temperature =
        std::max(d.temperature, std::abs(m.mean_temperature - m0.mean_temperature) / m0.mean_temperature);
  }
  return d;
}

namespace {

template <typename Tensor>
AdvectionRun advect(const ExperimentConfig& c, Tensor f0) {
  const AdvectionSpec& spec = c.advection.spec;
  const auto op = advection_operator(spec.c);
  const std::vector<double> probe(spec.dims(), c.advection.probe);
  const ExactSolution exact = [&](const std::vector<double>& z, double t) { return advection_analytic(z, t, spec); };
  const double dt = c.explicit_solver.dt;

  AdvectionRun run;
  double accumulated = 0.0;
  const auto sample = [&](int step, const Tensor& f) {
    AdvectionRecord r;
    r.step = step;
    r.time = step * dt;
    r.relative_error = relative_pointwise_error(exact, f, probe, r.time);
    if constexpr (std::is_same_v<Tensor, HTTensor>) {
      r.max_rank = f.max_rank();
    } else {
      r.max_rank = f.rank();
    }
    r.reduction_error = accumulated;
    run.records.push_back(r);
  };
  const auto track = [&](const auto& result) {
    accumulated += result.total_error();
    for (const auto& red : result.reductions) {
      if (!red.converged) run.converged = false;
    }
  };

  sample(0, f0);
  auto first = startup_step(f0, op, c.explicit_solver);
  track(first);
  Tensor prev = std::move(f0);
  Tensor cur = std::move(first.tensor);
  const int every = c.advection.sample_every;
  const int steps = c.explicit_steps;
  if (every == 1 || steps == 1) sample(1, cur);
  for (int n = 2; n <= steps; ++n) {
    auto next = ab2_step(prev, cur, op, c.explicit_solver);
    track(next);
    prev = std::move(cur);
    cur = std::move(next.tensor);
    if (n % every == 0 || n == steps) sample(n, cur);
  }

  std::vector<double> errors;
  for (const auto& r : run.records) {
    if (r.step > 0) errors.push_back(r.relative_error);
  }
  run.max_error = *std::max_element(errors.begin(), errors.end());
  std::nth_element(errors.begin(), errors.begin() + errors.size() / 2, errors.end());
  run.median_error = errors[errors.size() / 2];
  if (errors.size() % 2 == 0) {
    const double lower = *std::max_element(errors.begin(), errors.begin() + errors.size() / 2);
    run.median_error = 0.5 * (run.median_error + lower);
  }
  return run;
}

}  // namespace

AdvectionRun run_advection(const ExperimentConfig& c) {
  CPTensor f0 = advection_initial(c.advection.spec);
  if (c.format == TensorFormat::HT) return advect(c, HTTensor::from_cp(f0));
  return advect(c, std::move(f0));
}

std::vector<HeatmapCell> run_maxwellian_sweep(const ExperimentConfig& c) {
  std::vector<HeatmapCell> cells;
  for (int q : c.sweep.modes) {
    for (double ratio : c.sweep.ratios) {
      BGKSpec spec = c.bgk;
      spec.modes = q;
      spec.b_v = ratio * spec.thermal_speed();
      cells.push_back({q, ratio, spec.b_v, nmae_vs_maxwellian(maxwellian_cp(spec), spec)});
    }
  }
  return cells;
}

std::vector<ScalingRow> run_scaling(const ExperimentConfig& c) {
  std::vector<ScalingRow> rows;
  for (int q : c.scaling.modes) {
    for (int r : c.scaling.ranks) {
      for (int w : c.scaling.workers) {
        BGKSpec spec = c.bgk;
        spec.modes = q;
        ALSStepConfig als = c.implicit;
        als.workers = w;
        ImplicitStepper stepper = make_stepper(spec, als);
        CPTensor f = pad_rank(perturbed_ic(spec, c.relax.epsilon), std::max(r, 2));
        ScalingRow row{q, std::max(r, 2), w, 6L * q * std::max(r, 2), c.scaling.steps};
        for (int n = 0; n < c.scaling.steps; ++n) {
          StepResult s = stepper.step(f);
          f = std::move(s.tensor);
          row.assemble_seconds += s.report.assemble_seconds;
          row.solve_seconds += s.report.solve_seconds;
          row.wall_seconds += s.report.wall_seconds;
        }
        row.assemble_seconds /= c.scaling.steps;
        row.solve_seconds /= c.scaling.steps;
        row.wall_seconds /= c.scaling.steps;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace lowrank::runner
