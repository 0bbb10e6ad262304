#include "lowrank/explicit_stepper.hpp"

#include "lowrank/errors.hpp"

namespace lowrank {
namespace {

int rank_of(const CPTensor& f) { return f.rank(); }
int rank_of(const HTTensor& f) { return f.max_rank(); }

CPTensor apply_op(const SeparableOperator& op, const CPTensor& f) { return apply(op, f); }
HTTensor apply_op(const SeparableOperator& op, const HTTensor& f) { return apply_operator(op, f); }

template <typename Tensor>
Tensor reduce_into(const Tensor& f, const ExplicitConfig& config, std::vector<ReductionRecord>& log) {
  auto r = reduce(f, config);
  log.insert(log.end(), r.reductions.begin(), r.reductions.end());
  return std::move(r.tensor);
}

template <typename Tensor>
ExplicitStepResult<Tensor> ab2(const Tensor& f_n, const Tensor& f_n1, const SeparableOperator& op,
                               const ExplicitConfig& config) {
  validate(config);
  ExplicitStepResult<Tensor> out{f_n1, {}};
  const Tensor w = reduce_into(linear_combination(3.0, f_n1, -1.0, f_n), config, out.reductions);
  const Tensor lw = reduce_into(apply_op(op, w), config, out.reductions);
  out.tensor = reduce_into(linear_combination(1.0, f_n1, 0.5 * config.dt, lw), config, out.reductions);
  return out;
}

template <typename Tensor>
ExplicitStepResult<Tensor> midpoint(const Tensor& f_0, const SeparableOperator& op, const ExplicitConfig& config) {
  validate(config);
  ExplicitStepResult<Tensor> out{f_0, {}};
  const Tensor k1 = reduce_into(apply_op(op, f_0), config, out.reductions);
  const Tensor mid = reduce_into(linear_combination(1.0, f_0, 0.5 * config.dt, k1), config, out.reductions);
  const Tensor k2 = reduce_into(apply_op(op, mid), config, out.reductions);
  out.tensor = reduce_into(linear_combination(1.0, f_0, config.dt, k2), config, out.reductions);
  return out;
}

}  // namespace

void validate(const ExplicitConfig& config) {
  if (!(config.dt > 0.0)) throw ConfigError("explicit stepper: dt must be positive");
  if (config.r_max < 1) throw ConfigError("explicit stepper: r_max must be at least 1");
  if (config.eps_rank < 0.0) throw ConfigError("explicit stepper: eps_rank must be non-negative");
}

ExplicitStepResult<CPTensor> reduce(const CPTensor& f, const ExplicitConfig& config) {
  const RankReduceResult r = rank_reduce_als(f, config.r_max, config.eps_rank, config.als);
  const double error = r.relative_error * norm(f);
  return {r.tensor, {{rank_of(f), r.tensor.rank(), error, r.converged}}};
}

ExplicitStepResult<HTTensor> reduce(const HTTensor& f, const ExplicitConfig& config) {
  TruncationResult r = truncate(f, config.r_max, config.eps_rank);
  const int after = r.tensor.max_rank();
  return {std::move(r.tensor), {{rank_of(f), after, r.error_estimate, true}}};
}

ExplicitStepResult<CPTensor> ab2_step(const CPTensor& f_n, const CPTensor& f_n1, const SeparableOperator& op,
                                      const ExplicitConfig& config) {
  return ab2(f_n, f_n1, op, config);
}

ExplicitStepResult<HTTensor> ab2_step(const HTTensor& f_n, const HTTensor& f_n1, const SeparableOperator& op,
                                      const ExplicitConfig& config) {
  return ab2(f_n, f_n1, op, config);
}

ExplicitStepResult<CPTensor> startup_step(const CPTensor& f_0, const SeparableOperator& op,
                                          const ExplicitConfig& config) {
  return midpoint(f_0, op, config);
}

ExplicitStepResult<HTTensor> startup_step(const HTTensor& f_0, const SeparableOperator& op,
                                          const ExplicitConfig& config) {
  return midpoint(f_0, op, config);
}

}  // namespace lowrank
