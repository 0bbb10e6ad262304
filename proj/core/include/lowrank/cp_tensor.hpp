#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "lowrank/spectral_basis.hpp"

namespace lowrank {

class DenseTensor;

/// Canonical polyadic expansion f(z) = sum_l prod_k sum_s beta[l][k][s] phi_s(z_k).
///
/// The coefficients of dimension k are stored as a Q_k x r matrix whose column l
/// is the coefficient vector of term l in that dimension.
class CPTensor {
 public:
  CPTensor() = default;
  /// Zero tensor of the given rank.
  CPTensor(std::vector<BasisSpec> specs, int rank);
  CPTensor(std::vector<BasisSpec> specs, std::vector<CMatrix> factors);

  int dims() const noexcept { return static_cast<int>(specs_.size()); }
  int rank() const noexcept { return rank_; }
  const std::vector<BasisSpec>& specs() const noexcept { return specs_; }
  const BasisSpec& spec(int k) const { return specs_.at(k); }

  const CMatrix& factor(int k) const { return factors_.at(k); }
  CMatrix& factor(int k) { return factors_.at(k); }
  const std::vector<CMatrix>& factors() const noexcept { return factors_; }

  Complex coeff(int l, int k, int s_index) const { return factors_[k](s_index, l); }

  /// Single term l as a rank-1 tensor.
  CPTensor term(int l) const;

  bool all_finite() const;

 private:
  std::vector<BasisSpec> specs_;
  std::vector<CMatrix> factors_;
  int rank_ = 0;
};

/// Rank-1 tensor from one coefficient vector per dimension.
CPTensor rank_one(std::vector<BasisSpec> specs, const std::vector<CVector>& vectors);

/// Random tensor with i.i.d. standard normal real and imaginary parts.
CPTensor random_cp(std::vector<BasisSpec> specs, int rank, std::mt19937_64& rng);

Complex evaluate(const CPTensor& f, const std::vector<double>& z);

CPTensor add(const CPTensor& f, const CPTensor& g);
CPTensor scale(const CPTensor& f, Complex alpha);
/// alpha*f + beta*g as a rank r_f + r_g tensor.
CPTensor linear_combination(Complex alpha, const CPTensor& f, Complex beta, const CPTensor& g);

/// Conjugated L2 inner product <f, g> over the hyperrectangle.
Complex inner_product(const CPTensor& f, const CPTensor& g);
double norm(const CPTensor& f);

/// ||f - g||, computed through an orthogonalised hierarchical representation of
/// the difference so that it stays accurate when f and g nearly coincide.
double distance(const CPTensor& f, const CPTensor& g);

void require_same_specs(const std::vector<BasisSpec>& a, const std::vector<BasisSpec>& b, const char* what);

/// Sum of products of one-dimensional real functions, projected per dimension.
struct SeparableFunction {
  using Function1D = std::function<double(double)>;
  std::vector<std::vector<Function1D>> terms;  // terms[l][k]
};

CPTensor project_separable(const SeparableFunction& f, const std::vector<BasisSpec>& specs);

struct ALSApproxConfig {
  int max_sweeps = 500;
  /// Stop when a sweep lowers the squared residual by less than this fraction.
  double change_tol = 1e-10;
  /// Stop when the relative residual drops below this value.
  double residual_tol = 1e-14;
  double regularization = 1e-12;
  std::uint64_t seed = 0;
  std::optional<CPTensor> initial;
};

struct ALSApproxResult {
  CPTensor tensor;
  double residual = 0.0;           // ||target - tensor||
  double relative_residual = 0.0;  // residual / ||target||
  int sweeps = 0;
  bool converged = false;
  /// Residual after every sweep; non-increasing up to round-off.
  std::vector<double> sweep_residuals;
  bool monotone = true;
};

ALSApproxResult cp_approx_als(const CPTensor& target, int rank, const ALSApproxConfig& config = {});
ALSApproxResult cp_approx_als(const SeparableFunction& target, const std::vector<BasisSpec>& specs, int rank,
                              const ALSApproxConfig& config = {});
ALSApproxResult cp_approx_als(const DenseTensor& target, int rank, const ALSApproxConfig& config = {});
/// General target: projected onto the full tensor-product basis (small N only).
ALSApproxResult cp_approx_als(const std::function<double(const std::vector<double>&)>& target,
                              const std::vector<BasisSpec>& specs, int rank, const ALSApproxConfig& config = {});

struct RankReduceResult {
  CPTensor tensor;
  double relative_error = 0.0;
  bool converged = true;
};

/// Adaptive rank reduction: tries ranks start_rank..r_target and returns the
/// first whose relative error is at most eps (or the r_target result).
RankReduceResult rank_reduce_als(const CPTensor& f, int r_target, double eps, const ALSApproxConfig& config = {},
                                 int start_rank = 1);

}  // namespace lowrank
