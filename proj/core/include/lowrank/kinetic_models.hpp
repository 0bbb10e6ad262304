#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/separable_operator.hpp"

namespace lowrank {

/// Linear advection df/dt + sum_j (C z)_j df/dz_j = 0 with f_0 = exp(-|z|^2).
struct AdvectionSpec {
  Eigen::MatrixXd c;
  double half_width = 8.0;
  int modes = 65;

  int dims() const { return static_cast<int>(c.rows()); }
  std::vector<BasisSpec> specs() const;
  /// True when every eigenvalue of C has positive real part (exp(-tC) contracts).
  bool contracting() const;
};

void validate(const AdvectionSpec& spec);

/// exp(-t C) by scaling and squaring.
Eigen::MatrixXd propagator(const AdvectionSpec& spec, double t);

/// f_0(exp(-t C) z).
double advection_analytic(const std::vector<double>& z, double t, const AdvectionSpec& spec);

/// Rank-1 projection of the Gaussian initial condition.
CPTensor advection_initial(const AdvectionSpec& spec);

/// Bracket (lower, upper) on the half-width b of the smallest hypercube
/// [-b, b]^N enclosing {z : f(z, t) >= eps}.
std::pair<double, double> enclosing_box(double eps, double t, const AdvectionSpec& spec);

/// Linearised BGK model parameters in SI units. Time steps are given in units
/// of the relaxation time.
struct BGKSpec {
  double temperature = 300.0;
  double number_density = 2.4143e25;  // metadata only
  double gas_constant = 208.0;
  double tau_r = 0.40034;
  double b_x = 500.0;
  double b_v = 0.0;  // 0 selects 5 sqrt(R T)
  double dt = 0.01;  // in units of tau_r
  int n_iter = 1000;
  double eps_tol = 1e-8;
  int modes = 11;
  double rho = 1.0;

  double nu() const { return 1.0 / tau_r; }
  double thermal_speed() const;  // sqrt(R T)
  double velocity_half_width() const;
  double dt_seconds() const { return dt * tau_r; }
  BasisSpec x_spec() const { return BasisSpec(modes, b_x); }
  BasisSpec v_spec() const { return BasisSpec(modes, velocity_half_width()); }
  /// (x1, x2, x3, v1, v2, v3).
  std::vector<BasisSpec> specs() const;
};

void validate(const BGKSpec& spec);

/// rho / (2 pi R T)^{3/2} exp(-|v|^2 / (2 R T)).
double maxwellian(const std::array<double, 3>& v, const BGKSpec& spec);

/// One velocity factor rho^{1/3} (2 pi R T)^{-1/2} exp(-v^2 / (2 R T)).
double maxwellian_factor(double v, const BGKSpec& spec);

/// Rank-1 velocity-space CP form of the Maxwellian (3 dimensions).
CPTensor maxwellian_cp(const BGKSpec& spec);

/// Rank-1 phase-space form: uniform in x, Maxwellian in v (6 dimensions).
CPTensor equilibrium_cp(const BGKSpec& spec);

/// f_eq(v) (1 + epsilon prod_k cos(2 pi x_k / b_x)) as a rank-2 phase-space tensor.
CPTensor perturbed_ic(const BGKSpec& spec, double epsilon);

/// Appends zero terms so the tensor has the requested rank.
CPTensor pad_rank(const CPTensor& f, int rank);

SeparableOperator bgk_model_operator(const BGKSpec& spec);

}  // namespace lowrank
