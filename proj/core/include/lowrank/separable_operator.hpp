#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/spectral_basis.hpp"

namespace lowrank {

struct OperatorTerm {
  Complex alpha;
  std::vector<FactorKind> factors;  // one per dimension
};

/// L = sum_q alpha_q L_1^q ... L_N^q with per-dimension factors from a closed set.
class SeparableOperator {
 public:
  SeparableOperator(int dims, std::vector<OperatorTerm> terms);

  int dims() const noexcept { return dims_; }
  int separation_rank() const noexcept { return static_cast<int>(terms_.size()); }
  const std::vector<OperatorTerm>& terms() const noexcept { return terms_; }
  const OperatorTerm& term(int q) const { return terms_.at(q); }

 private:
  int dims_;
  std::vector<OperatorTerm> terms_;
};

SeparableOperator identity_operator(int dims, Complex alpha = 1.0);

/// Advection with velocity field C z: N^2 terms, row-major over (j, k), weight
/// -C_jk. Dimension j carries z_j d/dz_j when k == j and d/dz_j otherwise; for
/// k != j dimension k carries the coordinate z_k.
SeparableOperator advection_operator(const Eigen::MatrixXd& c);

/// Linearised BGK operator over (x1, x2, x3, v1, v2, v3):
/// -nu I - v1 d/dx1 - v2 d/dx2 - v3 d/dx3, in that order.
SeparableOperator bgk_operator(double nu);

/// Output term (q, l) sits at index q * r_f + l; rank is r_L * r_f.
CPTensor apply(const SeparableOperator& op, const CPTensor& f);

/// A = I - (dt/2) L and B = I + (dt/2) L over a shared factor list.
/// Terms of L made only of identity factors are folded into the leading
/// identity term, so eta_0 = 1 - (dt/2) sum alpha_id and zeta_0 = 1 + (dt/2) sum alpha_id.
/// Remaining terms carry eta_q = -(dt/2) alpha_q and zeta_q = (dt/2) alpha_q.
struct CrankNicolsonPair {
  double dt = 0.0;
  std::vector<std::vector<FactorKind>> factors;
  std::vector<Complex> eta;
  std::vector<Complex> zeta;

  int dims() const { return factors.empty() ? 0 : static_cast<int>(factors.front().size()); }
  int size() const { return static_cast<int>(factors.size()); }
  SeparableOperator a() const;
  SeparableOperator b() const;
};

CrankNicolsonPair crank_nicolson_pair(const SeparableOperator& op, double dt);

}  // namespace lowrank
