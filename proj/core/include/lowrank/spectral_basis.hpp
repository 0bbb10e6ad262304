#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Dense>

namespace lowrank {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// One-dimensional periodic Fourier basis on [-b, b].
///
/// Mode index i in [0, Q) carries the integer frequency s = i - (Q-1)/2, and
/// phi_s(z) = exp(i pi s z / b) / sqrt(2b). The basis is orthonormal under the
/// conjugated L2 pairing on [-b, b].
class BasisSpec {
 public:
  BasisSpec(int modes, double half_width);

  int modes() const noexcept { return modes_; }
  double half_width() const noexcept { return half_width_; }
  int max_frequency() const noexcept { return (modes_ - 1) / 2; }

  int frequency(int index) const noexcept { return index - max_frequency(); }
  int index_of(int frequency) const noexcept { return frequency + max_frequency(); }
  bool contains_frequency(int s) const noexcept { return s >= -max_frequency() && s <= max_frequency(); }

  /// Wavenumber pi * s / b of the mode at `index`.
  double wavenumber(int index) const noexcept;

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
  friend auto operator<=>(const BasisSpec&, const BasisSpec&) = default;

 private:
  int modes_;
  double half_width_;
};

/// Per-dimension operator factors that appear in the advection and BGK operators.
enum class FactorKind { Identity, Derivative, CoordMultiply, CoordTimesDerivative };

/// Bilinear: integral of (E^e phi_s)(E^z phi_h). Sesquilinear: conjugate on the left.
enum class Pairing { Bilinear, Sesquilinear };

const char* to_string(FactorKind kind);

/// phi_s(z). Throws DomainError if s is not one of the spec's frequencies.
Complex eval_basis(const BasisSpec& spec, int s, double z);

/// All Q basis values at z, in mode-index order.
CVector eval_basis_all(const BasisSpec& spec, double z);

/// Evaluates sum_i coeffs[i] phi_{s_i}(z).
Complex eval_expansion(const BasisSpec& spec, const CVector& coeffs, double z);

/// Galerkin matrix F[s][h] = int conj(phi_s) (E phi_h) over [-b, b], closed form.
CMatrix factor_matrix(const BasisSpec& spec, FactorKind kind);

/// Pairwise integrals of projected factor images, combined from factor matrices:
/// Bilinear gives F_e^T J F_z (J is the frequency-flip s -> -s), Sesquilinear
/// gives F_e^H F_z. For Identity/Derivative factors both coincide with the
/// exact integrals.
CMatrix pair_matrix(const BasisSpec& spec, FactorKind e, FactorKind z, Pairing pairing = Pairing::Bilinear);

/// Exact integrals int_{-b}^{b} z^power phi_s(z) dz for power in {0, 1, 2}.
CVector moment_integrals(const BasisSpec& spec, int power);

/// Galerkin projection of a real function onto the basis (composite Gauss-Legendre).
CVector project(const BasisSpec& spec, const std::function<double(double)>& f);

/// Cache of pair kernels. Derivative factors are diagonal, so every pair matrix
/// is diag(d_e)^* K diag(d_z) with K depending only on the coordinate parts
/// {Identity, CoordMultiply} of the two factors. Only those base kernels are
/// stored, once per (spec, pairing, unordered base pair).
class KernelCache {
 public:
  CMatrix pair(const BasisSpec& spec, FactorKind e, FactorKind z, Pairing pairing = Pairing::Sesquilinear);

  /// Number of distinct base kernels computed so far.
  std::size_t size() const;

 private:
  enum class Base { Identity, Coord };
  using Key = std::tuple<int, double, int, int, int>;

  const CMatrix& base_kernel(const BasisSpec& spec, Pairing pairing, Base a, Base b);

  mutable std::mutex mutex_;
  std::map<Key, CMatrix> kernels_;
};

}  // namespace lowrank
