#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/dense_tensor.hpp"
#include "lowrank/quadrature.hpp"
#include "lowrank/separable_operator.hpp"
#include "lowrank/spectral_basis.hpp"

namespace oracle {

using lowrank::BasisSpec;
using lowrank::CMatrix;
using lowrank::Complex;
using lowrank::CVector;

inline constexpr double kPi = 3.14159265358979323846;

// Basis function written out directly, independent of the library.
inline Complex phi(const BasisSpec& spec, int s, double z) {
  const double b = spec.half_width();
  return std::exp(Complex(0.0, kPi * s * z / b)) / std::sqrt(2.0 * b);
}

inline Complex phi_prime(const BasisSpec& spec, int s, double z) {
  return Complex(0.0, kPi * s / spec.half_width()) * phi(spec, s, z);
}

// Complex integral over [-b, b] by composite Gauss-Legendre.
template <typename F>
Complex integrate_complex(const BasisSpec& spec, F&& f, int panels = 64) {
  const auto rule = lowrank::composite_gauss_legendre(-spec.half_width(), spec.half_width(), panels, 16);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

// Action of a factor on phi_h evaluated at z.
inline Complex factor_image(const BasisSpec& spec, lowrank::FactorKind kind, int h, double z) {
  switch (kind) {
    case lowrank::FactorKind::Identity: return phi(spec, h, z);
    case lowrank::FactorKind::Derivative: return phi_prime(spec, h, z);
    case lowrank::FactorKind::CoordMultiply: return z * phi(spec, h, z);
    case lowrank::FactorKind::CoordTimesDerivative: return z * phi_prime(spec, h, z);
  }
  return 0.0;
}

// Galerkin matrix of a factor by quadrature.
inline CMatrix factor_by_quadrature(const BasisSpec& spec, lowrank::FactorKind kind) {
  const int q = spec.modes();
  CMatrix m(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      const int s = spec.frequency(i), h = spec.frequency(j);
      m(i, j) = integrate_complex(spec, [&](double z) { return std::conj(phi(spec, s, z)) * factor_image(spec, kind, h, z); });
    }
  }
  return m;
}

// Dense matrix of a separable operator on the row-major coefficient vector
// (last dimension fastest), built from quadrature Galerkin matrices.
inline CMatrix dense_operator(const std::vector<BasisSpec>& specs, const std::vector<std::vector<lowrank::FactorKind>>& terms,
                              const std::vector<Complex>& weights) {
  Eigen::Index size = 1;
  for (const auto& s : specs) size *= s.modes();
  CMatrix total = CMatrix::Zero(size, size);
  for (std::size_t q = 0; q < terms.size(); ++q) {
    CMatrix m = CMatrix::Ones(1, 1);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      m = Eigen::kroneckerProduct(m, factor_by_quadrature(specs[k], terms[q][k])).eval();
    }
    total += weights[q] * m;
  }
  return total;
}

inline CMatrix dense_operator(const std::vector<BasisSpec>& specs, const lowrank::SeparableOperator& op) {
  std::vector<std::vector<lowrank::FactorKind>> terms;
  std::vector<Complex> weights;
  for (const auto& t : op.terms()) {
    terms.push_back(t.factors);
    weights.push_back(t.alpha);
  }
  return dense_operator(specs, terms, weights);
}

// Full coefficient vector of a CP tensor assembled by explicit Kronecker products.
inline CVector dense_vector(const lowrank::CPTensor& f) {
  Eigen::Index size = 1;
  for (const auto& s : f.specs()) size *= s.modes();
  CVector v = CVector::Zero(size);
  for (int l = 0; l < f.rank(); ++l) {
    CMatrix t = CMatrix::Ones(1, 1);
    for (int k = 0; k < f.dims(); ++k) t = Eigen::kroneckerProduct(t, CMatrix(f.factor(k).col(l))).eval();
    v += t.col(0);
  }
  return v;
}

// Evaluates a full coefficient vector at z by looping over every multi-index.
inline Complex evaluate_dense(const std::vector<BasisSpec>& specs, const CVector& coeffs, const std::vector<double>& z) {
  const int n = static_cast<int>(specs.size());
  std::vector<int> index(n, 0);
  Complex sum = 0.0;
  for (Eigen::Index flat = 0; flat < coeffs.size(); ++flat) {
    Complex term = coeffs(flat);
    for (int k = 0; k < n; ++k) term *= phi(specs[k], specs[k].frequency(index[k]), z[k]);
    sum += term;
    for (int k = n - 1; k >= 0; --k) {
      if (++index[k] < specs[k].modes()) break;
      index[k] = 0;
    }
  }
  return sum;
}

inline std::vector<double> random_point(const std::vector<BasisSpec>& specs, std::mt19937_64& rng) {
  std::vector<double> z;
  for (const auto& s : specs) z.push_back(std::uniform_real_distribution<double>(-s.half_width(), s.half_width())(rng));
  return z;
}

inline std::vector<BasisSpec> uniform_specs(int n, int q, double b) { return std::vector<BasisSpec>(n, BasisSpec(q, b)); }

inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace oracle
