#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lowrank/als_implicit.hpp"
#include "lowrank/explicit_stepper.hpp"
#include "lowrank/kinetic_models.hpp"

namespace lowrank::runner {

enum class ExperimentKind { BgkSteady, BgkRelax, AdvectionError, MaxwellianApprox, Scaling };

const char* to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);

enum class TensorFormat { HT, CP };

struct AdvectionSection {
  AdvectionSpec spec;
  double probe = 0.698835274542439;
  int sample_every = 10;
};

struct RelaxSection {
  double epsilon = 0.3;
  /// Total simulated time in units of tau_r; overrides bgk.n_iter when positive.
  double duration = 5.0;
  int sample_every = 1;
};

struct SweepSection {
  std::vector<int> modes;
  std::vector<double> ratios;  // b_v / sqrt(RT)
};

struct ScalingSection {
  std::vector<int> modes;
  std::vector<int> ranks;
  std::vector<int> workers;
  int steps = 3;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::BgkSteady;
  std::string output_dir = "out";
  int workers = 1;
  std::uint64_t seed = 0;

  BGKSpec bgk;
  int rank = 2;  // implicit solver rank
  ALSStepConfig implicit;

  AdvectionSection advection;
  ExplicitConfig explicit_solver;
  int explicit_steps = 1000;
  TensorFormat format = TensorFormat::HT;

  RelaxSection relax;
  SweepSection sweep;
  ScalingSection scaling;

  /// Parsed document echoed into the manifest.
  nlohmann::json source;
};

/// Builds a config from a JSON document. Unknown keys anywhere are rejected
/// and every value is validated before returning; throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// Command line overrides applied on top of a parsed config.
struct Overrides {
  std::optional<std::string> experiment;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::optional<double> dt;
  std::optional<int> rank;
  std::optional<int> q_modes;
};

/// Applies the overrides to the document and re-parses it, so overridden
/// values pass through the same validation.
ExperimentConfig apply_overrides(const nlohmann::json& doc, const Overrides& o);

/// Canonical JSON form of the effective configuration.
nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace lowrank::runner
