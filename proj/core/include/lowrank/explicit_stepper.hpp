#pragma once

#include <vector>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/ht_tensor.hpp"
#include "lowrank/separable_operator.hpp"

namespace lowrank {

struct ExplicitConfig {
  double dt = 1e-3;
  int r_max = 8;
  /// Relative tolerance of every rank reduction.
  double eps_rank = 1e-8;
  /// Used by the CP format only.
  ALSApproxConfig als;
};

void validate(const ExplicitConfig& config);

struct ReductionRecord {
  int rank_before = 0;
  int rank_after = 0;
  double error = 0.0;  // absolute L2 error estimate of this reduction
  bool converged = true;
};

template <typename Tensor>
struct ExplicitStepResult {
  Tensor tensor;
  std::vector<ReductionRecord> reductions;

  double total_error() const {
    double sum = 0.0;
    for (const auto& r : reductions) sum += r.error;
    return sum;
  }
};

/// Second-order Adams-Bashforth step f_{n+2} = f_{n+1} + (dt/2) L (3 f_{n+1} - f_n),
/// reducing after the combination, after applying L, and after the update.
ExplicitStepResult<CPTensor> ab2_step(const CPTensor& f_n, const CPTensor& f_n1, const SeparableOperator& op,
                                      const ExplicitConfig& config);
ExplicitStepResult<HTTensor> ab2_step(const HTTensor& f_n, const HTTensor& f_n1, const SeparableOperator& op,
                                      const ExplicitConfig& config);

/// Explicit midpoint step f_1 = f_0 + dt L (f_0 + (dt/2) L f_0) with the same
/// reduction policy.
ExplicitStepResult<CPTensor> startup_step(const CPTensor& f_0, const SeparableOperator& op,
                                          const ExplicitConfig& config);
ExplicitStepResult<HTTensor> startup_step(const HTTensor& f_0, const SeparableOperator& op,
                                          const ExplicitConfig& config);

/// Rank reduction used by the stepper for each format.
ExplicitStepResult<CPTensor> reduce(const CPTensor& f, const ExplicitConfig& config);
ExplicitStepResult<HTTensor> reduce(const HTTensor& f, const ExplicitConfig& config);

}  // namespace lowrank
