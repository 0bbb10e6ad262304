#include "lowrank/spectral_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lowrank/errors.hpp"
#include "lowrank/quadrature.hpp"

namespace lowrank {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

bool has_derivative(FactorKind kind) {
  return kind == FactorKind::Derivative || kind == FactorKind::CoordTimesDerivative;
}

bool has_coordinate(FactorKind kind) {
  return kind == FactorKind::CoordMultiply || kind == FactorKind::CoordTimesDerivative;
}

double sign_of_power(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

CMatrix coordinate_matrix(const BasisSpec& spec) {
  const int q = spec.modes();
  const double b = spec.half_width();
  CMatrix x = CMatrix::Zero(q, q);
  for (int row = 0; row < q; ++row) {
    for (int col = 0; col < q; ++col) {
      const int m = col - row;  // frequency difference h - s
      if (m == 0) continue;
      x(row, col) = -kI * b * sign_of_power(m) / (kPi * m);
    }
  }
  return x;
}

CMatrix flip_matrix(int q) {
  CMatrix j = CMatrix::Zero(q, q);
  for (int i = 0; i < q; ++i) j(i, q - 1 - i) = 1.0;
  return j;
}

CVector derivative_diagonal(const BasisSpec& spec) {
  CVector d(spec.modes());
  for (int i = 0; i < spec.modes(); ++i) d(i) = kI * spec.wavenumber(i);
  return d;
}

}  // namespace

BasisSpec::BasisSpec(int modes, double half_width) : modes_(modes), half_width_(half_width) {
  if (modes < 1 || modes % 2 == 0) {
    throw DomainError("BasisSpec: number of modes must be a positive odd integer, got " + std::to_string(modes));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("BasisSpec: half width must be positive and finite");
  }
}

double BasisSpec::wavenumber(int index) const noexcept { return kPi * frequency(index) / half_width_; }

const char* to_string(FactorKind kind) {
  switch (kind) {
    case FactorKind::Identity: return "identity";
    case FactorKind::Derivative: return "derivative";
    case FactorKind::CoordMultiply: return "coord";
    case FactorKind::CoordTimesDerivative: return "coord*derivative";
  }
  return "unknown";
}

Complex eval_basis(const BasisSpec& spec, int s, double z) {
  if (!spec.contains_frequency(s)) {
    throw DomainError("eval_basis: frequency " + std::to_string(s) + " outside basis");
  }
  const double b = spec.half_width();
  return std::polar(1.0 / std::sqrt(2.0 * b), kPi * s * z / b);
}

CVector eval_basis_all(const BasisSpec& spec, double z) {
  CVector values(spec.modes());
  const double b = spec.half_width();
  const double scale = 1.0 / std::sqrt(2.0 * b);
  for (int i = 0; i < spec.modes(); ++i) values(i) = std::polar(scale, kPi * spec.frequency(i) * z / b);
  return values;
}

Complex eval_expansion(const BasisSpec& spec, const CVector& coeffs, double z) {
  return eval_basis_all(spec, z).transpose() * coeffs;
}

CMatrix factor_matrix(const BasisSpec& spec, FactorKind kind) {
  const int q = spec.modes();
  switch (kind) {
    case FactorKind::Identity:
      return CMatrix::Identity(q, q);
    case FactorKind::Derivative:
      return derivative_diagonal(spec).asDiagonal();
    case FactorKind::CoordMultiply:
      return coordinate_matrix(spec);
    case FactorKind::CoordTimesDerivative:
      return coordinate_matrix(spec) * derivative_diagonal(spec).asDiagonal();
  }
  throw ConfigError("factor_matrix: unsupported factor kind");
}

CMatrix pair_matrix(const BasisSpec& spec, FactorKind e, FactorKind z, Pairing pairing) {
  const CMatrix fe = factor_matrix(spec, e);
  const CMatrix fz = factor_matrix(spec, z);
  if (pairing == Pairing::Sesquilinear) return fe.adjoint() * fz;
  return fe.transpose() * flip_matrix(spec.modes()) * fz;
}

CVector moment_integrals(const BasisSpec& spec, int power) {
  const int q = spec.modes();
  const double b = spec.half_width();
  const double norm = 1.0 / std::sqrt(2.0 * b);
  CVector out = CVector::Zero(q);
  for (int i = 0; i < q; ++i) {
    const int s = spec.frequency(i);
    switch (power) {
      case 0:
        if (s == 0) out(i) = 2.0 * b * norm;
        break;
      case 1:
        if (s != 0) out(i) = -kI * 2.0 * b * b * sign_of_power(s) / (kPi * s) * norm;
        break;
      case 2:
        out(i) = s == 0 ? 2.0 * b * b * b / 3.0 * norm
                        : 4.0 * b * b * b * sign_of_power(s) / (kPi * kPi * s * s) * norm;
        break;
      default:
        throw DomainError("moment_integrals: power must be 0, 1 or 2");
    }
  }
  return out;
}

CVector project(const BasisSpec& spec, const std::function<double(double)>& f) {
  const double b = spec.half_width();
  const QuadratureRule rule = composite_gauss_legendre(-b, b, std::max(32, 2 * spec.modes()));
  CVector coeffs = CVector::Zero(spec.modes());
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double value = f(rule.nodes[n]) * rule.weights[n];
    coeffs += value * eval_basis_all(spec, rule.nodes[n]).conjugate();
  }
  return coeffs;
}

CMatrix KernelCache::pair(const BasisSpec& spec, FactorKind e, FactorKind z, Pairing pairing) {
  const Base be = has_coordinate(e) ? Base::Coord : Base::Identity;
  const Base bz = has_coordinate(z) ? Base::Coord : Base::Identity;
  CMatrix out = base_kernel(spec, pairing, be, bz);
  const CVector d = derivative_diagonal(spec);
  if (has_derivative(e)) {
    const CVector left = pairing == Pairing::Sesquilinear ? CVector(d.conjugate()) : d;
    out = left.asDiagonal() * out;
  }
  if (has_derivative(z)) out = out * d.asDiagonal();
  return out;
}

std::size_t KernelCache::size() const {
  std::lock_guard lock(mutex_);
  return kernels_.size();
}

const CMatrix& KernelCache::base_kernel(const BasisSpec& spec, Pairing pairing, Base a, Base b) {
  // Both pairings are symmetric in the base pair (the coordinate matrix is
  // Hermitian and commutes with the flip up to transposition), so key on the
  // unordered pair.
  if (a > b) std::swap(a, b);
  const Key key{spec.modes(), spec.half_width(), static_cast<int>(pairing), static_cast<int>(a),
                static_cast<int>(b)};
  std::lock_guard lock(mutex_);
  if (auto it = kernels_.find(key); it != kernels_.end()) return it->second;

  const auto kind_of = [](Base base) { return base == Base::Coord ? FactorKind::CoordMultiply : FactorKind::Identity; };
  return kernels_.emplace(key, pair_matrix(spec, kind_of(a), kind_of(b), pairing)).first->second;
}

}  // namespace lowrank
