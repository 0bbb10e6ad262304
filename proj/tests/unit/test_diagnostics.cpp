#include "doctest.h"
#include "oracles.hpp"

#include <numeric>

#include "lowrank/diagnostics.hpp"
#include "lowrank/errors.hpp"
#include "lowrank/explicit_stepper.hpp"

using namespace lowrank;

TEST_CASE("nmae arithmetic") {
  CHECK(nmae({0.0, 1.0, 3.0}, {0.0, 1.0, 3.0}) == 0.0);
  CHECK(nmae({0.0, 2.0}, {0.0, 0.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(nmae({1.0, 1.0}, {1.0, 1.0}), UndefinedMetricError);
  CHECK_THROWS_AS(nmae({1.0}, {1.0, 2.0}), ShapeError);
  CHECK_THROWS_AS(nmae({}, {}), ShapeError);

  std::mt19937_64 rng(191);
  std::normal_distribution<double> n;
  std::vector<double> x(100), y(100);
  for (int i = 0; i < 100; ++i) {
    x[i] = n(rng);
    y[i] = n(rng);
  }
  double l1 = 0.0;
  for (int i = 0; i < 100; ++i) l1 += std::fabs(x[i] - y[i]);
  const double expected = l1 / 100.0 / (*std::max_element(x.begin(), x.end()) - *std::min_element(y.begin(), y.end()));
  CHECK(std::abs(nmae(x, y) - expected) < 1e-14);
}

TEST_CASE("relative pointwise error") {
  AdvectionSpec spec;
  spec.c.resize(2, 2);
  spec.c << 0.5, 1.5, -0.5, 0.5;
  const ExactSolution exact = [&](const std::vector<double>& z, double t) { return advection_analytic(z, t, spec); };
  const auto f0 = advection_initial(spec);
  CHECK(relative_pointwise_error(exact, f0, {0.7, 0.7}, 0.0) < 1e-6);
  CHECK(relative_pointwise_error(exact, CPTensor(f0.specs(), 1), {0.7, 0.7}, 0.0) == doctest::Approx(1.0));
  CHECK(relative_pointwise_error(exact, HTTensor::from_cp(f0), {0.7, 0.7}, 0.0) < 1e-6);
}

TEST_CASE("probe error of an advected tensor equals the dense evaluation") {
  AdvectionSpec spec;
  spec.c.resize(2, 2);
  spec.c << 0.5, 1.5, -0.5, 0.5;
  spec.modes = 33;
  spec.half_width = 7.0;
  const auto op = advection_operator(spec.c);
  ExplicitConfig cfg;
  cfg.dt = 0.01;
  HTTensor prev = HTTensor::from_cp(advection_initial(spec));
  HTTensor cur = startup_step(prev, op, cfg).tensor;
  for (int n = 1; n < 50; ++n) {
    HTTensor next = ab2_step(prev, cur, op, cfg).tensor;
    prev = std::move(cur);
    cur = std::move(next);
  }
  const std::vector<double> z{0.698835274542439, 0.698835274542439};
  const double exact = advection_analytic(z, 0.5, spec);
  const Complex dense = oracle::evaluate_dense(spec.specs(), to_dense(cur).data(), z);
  const double expected = std::abs(exact - dense) / exact;
  const ExactSolution fn = [&](const std::vector<double>& p, double t) { return advection_analytic(p, t, spec); };
  CHECK(std::abs(relative_pointwise_error(fn, cur, z, 0.5) - expected) < 1e-10);
}

TEST_CASE("radial sampling set") {
  BGKSpec spec;
  const auto s = radial_speeds(spec);
  REQUIRE(s.size() == 200);
  CHECK(s.front() == 0.0);
  CHECK(s.back() == doctest::Approx(5.0 * spec.thermal_speed()));
  const auto x = maxwellian_on_radial_set(spec);
  CHECK(x[0] == doctest::Approx(maxwellian({0, 0, 0}, spec)));
  const auto feq = equilibrium_cp(spec);
  const auto a = tensor_on_radial_set(feq, spec);
  const auto b = tensor_on_radial_set(maxwellian_cp(spec), spec);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("moments of the equilibrium") {
  BGKSpec spec;
  const auto feq = equilibrium_cp(spec);
  const auto m = moments(feq, spec);
  for (double u : m.mean_velocity) CHECK(std::abs(u) < 1e-10 * spec.thermal_speed());

  // Truncated Gaussian second moment over [-b_v, b_v] by 1D quadrature.
  const double bv = spec.velocity_half_width();
  const auto rule = composite_gauss_legendre(-bv, bv, 40, 16);
  const double m0 = integrate(rule, [&](double v) { return maxwellian_factor(v, spec); });
  const double m2 = integrate(rule, [&](double v) { return v * v * maxwellian_factor(v, spec); });
  const double truncated_t = m2 / m0 / spec.gas_constant;
  CHECK(m.mean_temperature / spec.temperature == doctest::Approx(1.0).epsilon(0.02));
  CHECK(m.mean_temperature == doctest::Approx(truncated_t).epsilon(0.02));
  CHECK(m.mean_density == doctest::Approx(spec.rho).epsilon(1e-3));

  const auto ic = moments(perturbed_ic(spec, 0.3), spec);
  CHECK(std::abs(ic.mean_density - m.mean_density) < 1e-10 * m.mean_density);

  CHECK_THROWS_AS(moments(scale(feq, -1.0), spec), InvalidStateError);
}

TEST_CASE("decay rate fit") {
  std::vector<double> t(50), y(50), flat(50, 0.3), floored(50);
  const double tau = 0.4;
  for (int i = 0; i < 50; ++i) {
    t[i] = 0.05 * i;
    y[i] = 2.0 * std::exp(-t[i] / tau);
    floored[i] = y[i] + 1e-4;
  }
  CHECK(std::abs(fit_decay_rate(t, y) - 1.0 / tau) < 1e-10);
  CHECK(std::abs(fit_decay_rate(t, flat)) < 1e-12);
  CHECK(fit_decay_rate(t, floored, 1e-4) == doctest::Approx(1.0 / tau).epsilon(0.02));
  CHECK_THROWS_AS(fit_decay_rate({0.0, 1.0}, {1.0, 0.5}), DomainError);
}
