#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/ht_tensor.hpp"
#include "lowrank/kinetic_models.hpp"

namespace lowrank {

/// (1/N) ||X - Y||_1 / (max(X) - min(Y)). Not symmetric in X and Y.
/// Throws UndefinedMetricError when the denominator vanishes.
double nmae(const std::vector<double>& x, const std::vector<double>& y);

using ExactSolution = std::function<double(const std::vector<double>&, double)>;

/// |f(z*, t) - f_hat(z*)| / |f(z*, t)|.
double relative_pointwise_error(const ExactSolution& exact, const CPTensor& approx, const std::vector<double>& z,
                                double t);
double relative_pointwise_error(const ExactSolution& exact, const HTTensor& approx, const std::vector<double>& z,
                                double t);

/// Speeds s_i = i * 5 sqrt(RT) / (count - 1), i = 0..count-1, used as v = (s, 0, 0).
std::vector<double> radial_speeds(const BGKSpec& spec, int count = 200);

/// f_eq on the radial set (the analytic reference X).
std::vector<double> maxwellian_on_radial_set(const BGKSpec& spec, int count = 200);

/// Real part of f at x = 0 on the radial set; f is a 3D velocity or 6D phase-space tensor.
std::vector<double> tensor_on_radial_set(const CPTensor& f, const BGKSpec& spec, int count = 200);

/// nmae(f_eq on the radial set, f on the radial set).
double nmae_vs_maxwellian(const CPTensor& f, const BGKSpec& spec, int count = 200);

/// Unnormalised integrals over the full phase-space box.
struct RawMoments {
  double mass = 0.0;
  std::array<double, 3> momentum{};
  double energy = 0.0;  // integral of |v|^2 f
};

struct MomentReport {
  double mean_density = 0.0;
  std::array<double, 3> mean_velocity{};
  double mean_temperature = 0.0;
  double time = 0.0;
};

RawMoments raw_moments(const CPTensor& f);

/// Averages over the x-volume (2 b_x)^3; throws InvalidStateError if the
/// mean density is not positive.
MomentReport moments(const CPTensor& f, const BGKSpec& spec, double time = 0.0);

/// Least-squares decay rate -d log(y)/dt over the samples with y >= 2 * floor.
double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values, double floor = 0.0);

}  // namespace lowrank
