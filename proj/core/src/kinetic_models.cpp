#include "lowrank/kinetic_models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "lowrank/errors.hpp"

namespace lowrank {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<BasisSpec> AdvectionSpec::specs() const {
  return std::vector<BasisSpec>(static_cast<std::size_t>(dims()), BasisSpec(modes, half_width));
}

bool AdvectionSpec::contracting() const {
  const Eigen::VectorXcd ev = c.eigenvalues();
  return (ev.real().array() > 0.0).all();
}

void validate(const AdvectionSpec& spec) {
  if (spec.c.rows() < 1 || spec.c.rows() != spec.c.cols()) throw ConfigError("advection: C must be square");
  if (!spec.c.allFinite()) throw ConfigError("advection: C must be finite");
  if (!(spec.half_width > 0.0)) throw ConfigError("advection: half width must be positive");
  if (spec.modes < 1 || spec.modes % 2 == 0) throw ConfigError("advection: modes must be a positive odd integer");
}

Eigen::MatrixXd propagator(const AdvectionSpec& spec, double t) {
  const Eigen::MatrixXd a = -t * spec.c;
  return a.exp();
}

double advection_analytic(const std::vector<double>& z, double t, const AdvectionSpec& spec) {
  if (static_cast<int>(z.size()) != spec.dims()) throw ShapeError("advection_analytic: point dimension mismatch");
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(z.data(), spec.dims());
  return std::exp(-(propagator(spec, t) * x).squaredNorm());
}

CPTensor advection_initial(const AdvectionSpec& spec) {
  validate(spec);
  const auto specs = spec.specs();
  const CVector g = project(specs[0], [](double z) { return std::exp(-z * z); });
  return rank_one(specs, std::vector<CVector>(specs.size(), g));
}

std::pair<double, double> enclosing_box(double eps, double t, const AdvectionSpec& spec) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("enclosing_box: eps must lie in (0, 1)");
  const Eigen::MatrixXd m = propagator(spec, t);
  const double lambda = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m.transpose() * m).eigenvalues().minCoeff();
  const double level = -std::log(eps);
  return {std::sqrt(level / (spec.dims() * lambda)), std::sqrt(level / lambda)};
}

double BGKSpec::thermal_speed() const { return std::sqrt(gas_constant * temperature); }

double BGKSpec::velocity_half_width() const { return b_v > 0.0 ? b_v : 5.0 * thermal_speed(); }

std::vector<BasisSpec> BGKSpec::specs() const {
  return {x_spec(), x_spec(), x_spec(), v_spec(), v_spec(), v_spec()};
}

void validate(const BGKSpec& s) {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("bgk: ") + name + " must be positive");
  };
  positive(s.temperature, "temperature");
  positive(s.number_density, "number_density");
  positive(s.gas_constant, "gas_constant");
  positive(s.tau_r, "tau_r");
  positive(s.b_x, "b_x");
  positive(s.velocity_half_width(), "b_v");
  positive(s.dt, "dt");
  positive(s.eps_tol, "eps_tol");
  positive(s.rho, "rho");
  if (s.n_iter < 0) throw ConfigError("bgk: n_iter must be non-negative");
  if (s.modes < 1 || s.modes % 2 == 0) throw ConfigError("bgk: modes must be a positive odd integer");
}

double maxwellian(const std::array<double, 3>& v, const BGKSpec& spec) {
  const double rt = spec.gas_constant * spec.temperature;
  const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return spec.rho / std::pow(2.0 * kPi * rt, 1.5) * std::exp(-v2 / (2.0 * rt));
}

double maxwellian_factor(double v, const BGKSpec& spec) {
  const double rt = spec.gas_constant * spec.temperature;
  return std::cbrt(spec.rho) / std::sqrt(2.0 * kPi * rt) * std::exp(-v * v / (2.0 * rt));
}

CPTensor maxwellian_cp(const BGKSpec& spec) {
  const BasisSpec vs = spec.v_spec();
  const CVector m = project(vs, [&](double v) { return maxwellian_factor(v, spec); });
  return rank_one({vs, vs, vs}, {m, m, m});
}

namespace {

CVector constant_coefficients(const BasisSpec& spec) {
  CVector c = CVector::Zero(spec.modes());
  c(spec.index_of(0)) = std::sqrt(2.0 * spec.half_width());
  return c;
}

// cos(2 pi x / b_x) = cos(pi * 2 * x / b_x): frequencies +-2 of the x basis.
CVector cosine_coefficients(const BasisSpec& spec) {
  if (!spec.contains_frequency(2)) throw DomainError("perturbed_ic: the x basis needs at least 5 modes");
  CVector c = CVector::Zero(spec.modes());
  c(spec.index_of(2)) = c(spec.index_of(-2)) = 0.5 * std::sqrt(2.0 * spec.half_width());
  return c;
}

}  // namespace

CPTensor equilibrium_cp(const BGKSpec& spec) {
  const CPTensor m = maxwellian_cp(spec);
  const CVector one = constant_coefficients(spec.x_spec());
  const CVector mv = m.factor(0).col(0);
  return rank_one(spec.specs(), {one, one, one, mv, mv, mv});
}

CPTensor perturbed_ic(const BGKSpec& spec, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DomainError("perturbed_ic: epsilon must lie in [0, 1)");
  const CPTensor eq = equilibrium_cp(spec);
  const CVector cosine = cosine_coefficients(spec.x_spec());
  const CVector mv = eq.factor(3).col(0);
  const CPTensor wave = rank_one(spec.specs(), {epsilon * cosine, cosine, cosine, mv, mv, mv});
  return add(eq, wave);
}

CPTensor pad_rank(const CPTensor& f, int rank) {
  if (rank <= f.rank()) return f;
  return add(f, CPTensor(f.specs(), rank - f.rank()));
}

SeparableOperator bgk_model_operator(const BGKSpec& spec) { return bgk_operator(spec.nu()); }

}  // namespace lowrank
