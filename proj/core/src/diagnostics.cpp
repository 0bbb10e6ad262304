#include "lowrank/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lowrank/errors.hpp"

namespace lowrank {
namespace {

template <typename Tensor>
double relative_error_impl(const ExactSolution& exact, const Tensor& approx, const std::vector<double>& z, double t) {
  const double reference = exact(z, t);
  if (reference == 0.0) throw UndefinedMetricError("relative_pointwise_error: exact value is zero");
  return std::abs(reference - evaluate(approx, z)) / std::abs(reference);
}

}  // namespace

double nmae(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) throw ShapeError("nmae: inputs must be non-empty and of equal length");
  double l1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) l1 += std::abs(x[i] - y[i]);
  const double range = *std::max_element(x.begin(), x.end()) - *std::min_element(y.begin(), y.end());
  if (std::abs(range) < 1e-300) throw UndefinedMetricError("nmae: max(X) - min(Y) vanishes");
  return l1 / static_cast<double>(x.size()) / range;
}

double relative_pointwise_error(const ExactSolution& exact, const CPTensor& approx, const std::vector<double>& z,
                                double t) {
  return relative_error_impl(exact, approx, z, t);
}

double relative_pointwise_error(const ExactSolution& exact, const HTTensor& approx, const std::vector<double>& z,
                                double t) {
  return relative_error_impl(exact, approx, z, t);
}

std::vector<double> radial_speeds(const BGKSpec& spec, int count) {
  if (count < 2) throw DomainError("radial_speeds: need at least two samples");
  std::vector<double> s(count);
  const double top = 5.0 * spec.thermal_speed();
  for (int i = 0; i < count; ++i) s[i] = top * i / (count - 1);
  return s;
}

std::vector<double> maxwellian_on_radial_set(const BGKSpec& spec, int count) {
  std::vector<double> out;
  for (double s : radial_speeds(spec, count)) out.push_back(maxwellian({s, 0.0, 0.0}, spec));
  return out;
}

std::vector<double> tensor_on_radial_set(const CPTensor& f, const BGKSpec& spec, int count) {
  if (f.dims() != 3 && f.dims() != 6) throw ShapeError("tensor_on_radial_set: expected 3 or 6 dimensions");
  std::vector<double> out;
  std::vector<double> z(f.dims(), 0.0);
  const int v1 = f.dims() - 3;
  for (double s : radial_speeds(spec, count)) {
    z[v1] = s;
    out.push_back(evaluate(f, z).real());
  }
  return out;
}

double nmae_vs_maxwellian(const CPTensor& f, const BGKSpec& spec, int count) {
  return nmae(maxwellian_on_radial_set(spec, count), tensor_on_radial_set(f, spec, count));
}

RawMoments raw_moments(const CPTensor& f) {
  if (f.dims() != 6) throw ShapeError("raw_moments: expected a 6-dimensional phase-space tensor");
  std::array<CVector, 6> m0;
  std::array<CVector, 3> m1, m2;
  for (int k = 0; k < 6; ++k) m0[k] = moment_integrals(f.spec(k), 0);
  for (int i = 0; i < 3; ++i) {
    m1[i] = moment_integrals(f.spec(3 + i), 1);
    m2[i] = moment_integrals(f.spec(3 + i), 2);
  }

  RawMoments out;
  for (int l = 0; l < f.rank(); ++l) {
    std::array<Complex, 6> base;
    for (int k = 0; k < 6; ++k) base[k] = (m0[k].transpose() * f.factor(k).col(l))(0);
    const auto product_except = [&](int skip) {
      Complex p = 1.0;
      for (int k = 0; k < 6; ++k) {
        if (k != skip) p *= base[k];
      }
      return p;
    };
    out.mass += product_except(-1).real();
    for (int i = 0; i < 3; ++i) {
      const Complex first = (m1[i].transpose() * f.factor(3 + i).col(l))(0);
      const Complex second = (m2[i].transpose() * f.factor(3 + i).col(l))(0);
      out.momentum[i] += (first * product_except(3 + i)).real();
      out.energy += (second * product_except(3 + i)).real();
    }
  }
  return out;
}

MomentReport moments(const CPTensor& f, const BGKSpec& spec, double time) {
  const RawMoments raw = raw_moments(f);
  const double volume = std::pow(2.0 * spec.b_x, 3);
  MomentReport out;
  out.time = time;
  out.mean_density = raw.mass / volume;
  if (!(out.mean_density > 0.0)) throw InvalidStateError("moments: mean density is not positive");
  double u2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    out.mean_velocity[i] = raw.momentum[i] / raw.mass;
    u2 += out.mean_velocity[i] * out.mean_velocity[i];
  }
  out.mean_temperature = (raw.energy / raw.mass - u2) / (3.0 * spec.gas_constant);
  return out;
}

double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values, double floor) {
  if (times.size() != values.size()) throw ShapeError("fit_decay_rate: series lengths differ");
  if (times.size() < 5) throw DomainError("fit_decay_rate: need at least five samples");
  std::vector<double> t, y;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw DomainError("fit_decay_rate: series must be positive");
    if (values[i] >= 2.0 * floor) {
      t.push_back(times[i]);
      y.push_back(std::log(values[i]));
    }
  }
  if (t.size() < 2) throw UndefinedMetricError("fit_decay_rate: fewer than two samples above the floor");
  const double n = static_cast<double>(t.size());
  const double t_mean = std::accumulate(t.begin(), t.end(), 0.0) / n;
  const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sxy += (t[i] - t_mean) * (y[i] - y_mean);
    sxx += (t[i] - t_mean) * (t[i] - t_mean);
  }
  if (sxx == 0.0) throw UndefinedMetricError("fit_decay_rate: all retained samples share one time");
  return -sxy / sxx;
}

}  // namespace lowrank
