#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/lsqr.hpp"
#include "lowrank/separable_operator.hpp"
#include "lowrank/spectral_basis.hpp"

namespace lowrank {

class WorkerPool;

/// Separable source term weight * source added to the right-hand side, so a
/// step solves A f_{n+1} = B f_n + dt * weight * source.
struct Forcing {
  CPTensor source;
  double weight = 1.0;
};

enum class SweepSchedule {
  Jacobi,     // all dimensions assembled from one snapshot, then solved (parallel over k)
  Sequential  // dimensions updated one after another with the latest iterate
};

struct ALSStepConfig {
  double eps_tol = 1e-8;
  int max_sweeps = 2000;
  double delta_beta = 4.0;
  double lsqr_tol = 1e-12;
  int lsqr_maxit = 0;  // 0: automatic
  int workers = 1;
  std::uint64_t seed = 0;
  /// Relative size of a random perturbation of the warm start; 0 starts from f_n exactly.
  double warm_start_perturbation = 0.0;
  SweepSchedule schedule = SweepSchedule::Jacobi;
};

void validate(const ALSStepConfig& config);

/// Precomputed Galerkin data of a Crank-Nicolson pair: for every dimension k
/// and every ordered pair of terms (e, z) the kernel F_e^H F_z of dimension k,
/// plus the single factor matrices F_e, and the weight matrices
/// K^L_ez = conj(eta_e) eta_z and K^R_ez = conj(eta_e) zeta_z.
struct OperatorTables {
  std::vector<BasisSpec> specs;
  int terms = 0;
  double dt = 0.0;
  std::vector<std::vector<CMatrix>> kernels;  // kernels[k][e * terms + z]
  std::vector<std::vector<CMatrix>> factors;  // factors[k][e]
  CMatrix weight_left;
  CMatrix weight_right;
  std::vector<Complex> eta;
  /// Number of distinct base kernels computed while building the tables.
  std::size_t distinct_kernels = 0;

  const CMatrix& kernel(int k, int e, int z) const { return kernels[k][e * terms + z]; }
};

OperatorTables build_tables(const std::vector<BasisSpec>& specs, const CrankNicolsonPair& pair);

/// Per-dimension coefficient blocks: beta[k] is the Q_k x r factor matrix.
using Coefficients = std::vector<CMatrix>;

/// Normal matrix of the step residual in dimension q, (rQ) x (rQ), block
/// (l, m) at rows l*Q.., cols m*Q.. (rank-major, mode-minor).
CMatrix build_M(int q, const Coefficients& beta_new, const OperatorTables& tables);

/// Right-hand side in dimension q for the current iterate beta_new and the
/// previous time level beta_old.
CVector build_gamma(int q, const Coefficients& beta_new, const Coefficients& beta_old, const OperatorTables& tables,
                    const Forcing* forcing = nullptr);

/// Warm-started iterative least-squares solve of M beta = gamma.
LsqrResult solve_beta(const CMatrix& m, const CVector& gamma, const CVector& beta_init, double tol = 1e-12,
                      int max_iterations = 0);

/// max_k ||beta_new_k - beta_int_k|| / ||beta_int_k||. A zero snapshot block
/// counts as converged only when the new block is zero too (else +infinity).
double convergence(const Coefficients& beta_int, const Coefficients& beta_new);

struct StepReport {
  int sweeps = 0;
  double eps_conv = 0.0;
  bool converged = false;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
  double wall_seconds = 0.0;
  int lsqr_unconverged = 0;
};

struct StepResult {
  CPTensor tensor;
  StepReport report;
};

/// Implicit Crank-Nicolson stepper: minimises ||A f_{n+1} - B f_n - dt w c||
/// over rank-r CP tensors by damped alternating least squares.
class ImplicitStepper {
 public:
  ImplicitStepper(const std::vector<BasisSpec>& specs, const CrankNicolsonPair& pair, ALSStepConfig config,
                  std::optional<Forcing> forcing = std::nullopt);
  ~ImplicitStepper();

  ImplicitStepper(const ImplicitStepper&) = delete;
  ImplicitStepper& operator=(const ImplicitStepper&) = delete;

  const OperatorTables& tables() const noexcept { return tables_; }
  const ALSStepConfig& config() const noexcept { return config_; }

  /// One time step. The result has the same rank as f_n.
  StepResult step(const CPTensor& f_n);

 private:
  OperatorTables tables_;
  ALSStepConfig config_;
  std::optional<Forcing> forcing_;
  std::unique_ptr<WorkerPool> pool_;
  std::uint64_t steps_taken_ = 0;
};

}  // namespace lowrank
