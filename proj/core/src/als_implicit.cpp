#include "lowrank/als_implicit.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "lowrank/errors.hpp"
#include "lowrank/worker_pool.hpp"

namespace lowrank {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_shapes(const Coefficients& beta, const OperatorTables& tables, const char* what) {
  if (beta.size() != tables.specs.size()) throw ShapeError(std::string(what) + ": dimension count mismatch");
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (beta[k].rows() != tables.specs[k].modes()) throw ShapeError(std::string(what) + ": mode count mismatch");
    if (beta[k].cols() != beta[0].cols()) throw ShapeError(std::string(what) + ": inconsistent rank");
  }
}

CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix unvec(const CVector& v, Eigen::Index rows) { return Eigen::Map<const CMatrix>(v.data(), rows, v.size() / rows); }

}  // namespace

void validate(const ALSStepConfig& c) {
  if (!(c.eps_tol > 0.0)) throw ConfigError("ALS step: eps_tol must be positive");
  if (!(c.delta_beta >= 1.0)) throw ConfigError("ALS step: delta_beta must be at least 1");
  if (c.max_sweeps < 1) throw ConfigError("ALS step: max_sweeps must be at least 1");
  if (!(c.lsqr_tol > 0.0)) throw ConfigError("ALS step: lsqr_tol must be positive");
  if (c.workers < 1) throw ConfigError("ALS step: workers must be at least 1");
  if (c.warm_start_perturbation < 0.0) throw ConfigError("ALS step: perturbation must be non-negative");
}

OperatorTables build_tables(const std::vector<BasisSpec>& specs, const CrankNicolsonPair& pair) {
  if (static_cast<int>(specs.size()) != pair.dims()) throw ShapeError("build_tables: dimension count mismatch");
  OperatorTables t;
  t.specs = specs;
  t.terms = pair.size();
  t.dt = pair.dt;
  t.eta = pair.eta;
  KernelCache cache;
  const int n = static_cast<int>(specs.size());
  t.kernels.resize(n);
  t.factors.resize(n);
  for (int k = 0; k < n; ++k) {
    for (int e = 0; e < t.terms; ++e) {
      t.factors[k].push_back(factor_matrix(specs[k], pair.factors[e][k]));
      for (int z = 0; z < t.terms; ++z) {
        t.kernels[k].push_back(cache.pair(specs[k], pair.factors[e][k], pair.factors[z][k], Pairing::Sesquilinear));
      }
    }
  }
  t.distinct_kernels = cache.size();
  t.weight_left.resize(t.terms, t.terms);
  t.weight_right.resize(t.terms, t.terms);
  for (int e = 0; e < t.terms; ++e) {
    for (int z = 0; z < t.terms; ++z) {
      t.weight_left(e, z) = std::conj(pair.eta[e]) * pair.eta[z];
      t.weight_right(e, z) = std::conj(pair.eta[e]) * pair.zeta[z];
    }
  }
  return t;
}

CMatrix build_M(int q, const Coefficients& beta_new, const OperatorTables& tables) {
  require_shapes(beta_new, tables, "build_M");
  const int n = static_cast<int>(beta_new.size());
  const Eigen::Index r = beta_new[0].cols();
  const Eigen::Index modes = tables.specs[q].modes();
  CMatrix m = CMatrix::Zero(r * modes, r * modes);
  for (int e = 0; e < tables.terms; ++e) {
    for (int z = 0; z < tables.terms; ++z) {
      const Complex w = tables.weight_left(e, z);
      if (w == 0.0) continue;
      CMatrix h = CMatrix::Ones(r, r);
      for (int k = 0; k < n; ++k) {
        if (k != q) h.array() *= (beta_new[k].adjoint() * tables.kernel(k, e, z) * beta_new[k]).array();
      }
      m += w * Eigen::kroneckerProduct(h, tables.kernel(q, e, z)).eval();
    }
  }
  return m;
}

CVector build_gamma(int q, const Coefficients& beta_new, const Coefficients& beta_old, const OperatorTables& tables,
                    const Forcing* forcing) {
  require_shapes(beta_new, tables, "build_gamma");
  require_shapes(beta_old, tables, "build_gamma");
  const int n = static_cast<int>(beta_new.size());
  const Eigen::Index r = beta_new[0].cols();
  const Eigen::Index modes = tables.specs[q].modes();
  CMatrix gamma = CMatrix::Zero(modes, r);  // column l is block l of the vector

  for (int e = 0; e < tables.terms; ++e) {
    for (int z = 0; z < tables.terms; ++z) {
      const Complex w = tables.weight_right(e, z);
      if (w == 0.0) continue;
      CMatrix g = CMatrix::Ones(r, beta_old[0].cols());
      for (int k = 0; k < n; ++k) {
        if (k != q) g.array() *= (beta_new[k].adjoint() * tables.kernel(k, e, z) * beta_old[k]).array();
      }
      gamma += w * tables.kernel(q, e, z) * beta_old[q] * g.transpose();
    }
  }

  if (forcing != nullptr) {
    const CPTensor& c = forcing->source;
    require_same_specs(c.specs(), tables.specs, "build_gamma forcing");
    const double scale = tables.dt * forcing->weight;
    for (int e = 0; e < tables.terms; ++e) {
      const Complex w = std::conj(tables.eta[e]) * scale;
      if (w == 0.0) continue;
      CMatrix o = CMatrix::Ones(r, c.rank());
      for (int k = 0; k < n; ++k) {
        if (k != q) o.array() *= ((tables.factors[k][e] * beta_new[k]).adjoint() * c.factor(k)).array();
      }
      gamma += w * tables.factors[q][e].adjoint() * c.factor(q) * o.transpose();
    }
  }
  return vec(gamma);
}

LsqrResult solve_beta(const CMatrix& m, const CVector& gamma, const CVector& beta_init, double tol,
                      int max_iterations) {
  return lsqr(m, gamma, beta_init, tol, max_iterations);
}

double convergence(const Coefficients& beta_int, const Coefficients& beta_new) {
  if (beta_int.size() != beta_new.size()) throw ShapeError("convergence: dimension count mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < beta_int.size(); ++k) {
    if (beta_int[k].rows() != beta_new[k].rows() || beta_int[k].cols() != beta_new[k].cols()) {
      throw ShapeError("convergence: block shape mismatch");
    }
    const double base = beta_int[k].norm();
    const double diff = (beta_new[k] - beta_int[k]).norm();
    if (base == 0.0) {
      if (beta_new[k].norm() != 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, diff / base);
  }
  return worst;
}

ImplicitStepper::ImplicitStepper(const std::vector<BasisSpec>& specs, const CrankNicolsonPair& pair,
                                 ALSStepConfig config, std::optional<Forcing> forcing)
    : tables_(build_tables(specs, pair)),
      config_(config),
      forcing_(std::move(forcing)),
      pool_(std::make_unique<WorkerPool>(config.workers)) {
  validate(config_);
  if (forcing_) require_same_specs(forcing_->source.specs(), specs, "ImplicitStepper forcing");
}

ImplicitStepper::~ImplicitStepper() = default;

StepResult ImplicitStepper::step(const CPTensor& f_n) {
  require_same_specs(f_n.specs(), tables_.specs, "ImplicitStepper::step");
  const auto wall_start = Clock::now();
  const int n = f_n.dims();
  const Forcing* forcing = forcing_ ? &*forcing_ : nullptr;

  const Coefficients beta_old = f_n.factors();
  Coefficients beta_new = beta_old;
  if (config_.warm_start_perturbation > 0.0) {
    std::mt19937_64 rng(config_.seed + steps_taken_);
    std::normal_distribution<double> normal;
    for (auto& b : beta_new) {
      const double size = config_.warm_start_perturbation * b.norm() / std::sqrt(static_cast<double>(b.size()));
      for (Eigen::Index i = 0; i < b.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        b(i) += size * Complex(re, im);
      }
    }
  }
  ++steps_taken_;

  StepReport report;
  std::vector<CMatrix> m(n);
  std::vector<CVector> gamma(n);
  std::vector<LsqrResult> solved(n);

  const auto solve_one = [&](int k, const Coefficients& current) {
    solved[k] = solve_beta(m[k], gamma[k], vec(current[k]), config_.lsqr_tol, config_.lsqr_maxit);
  };

  for (int sweep = 1; sweep <= config_.max_sweeps; ++sweep) {
    const Coefficients beta_int = beta_new;
    Coefficients beta_solved = beta_int;

    if (config_.schedule == SweepSchedule::Jacobi) {
      auto t0 = Clock::now();
      pool_->parallel_for(n, [&](int k) {
        m[k] = build_M(k, beta_int, tables_);
        gamma[k] = build_gamma(k, beta_int, beta_old, tables_, forcing);
      });
      report.assemble_seconds += seconds_since(t0);
      t0 = Clock::now();
      pool_->parallel_for(n, [&](int k) { solve_one(k, beta_int); });
      report.solve_seconds += seconds_since(t0);
      for (int k = 0; k < n; ++k) beta_solved[k] = unvec(solved[k].x, beta_int[k].rows());
      for (int k = 0; k < n; ++k) {
        beta_new[k] = beta_int[k] + (beta_solved[k] - beta_int[k]) / config_.delta_beta;
      }
    } else {
      for (int k = 0; k < n; ++k) {
        auto t0 = Clock::now();
        m[k] = build_M(k, beta_new, tables_);
        gamma[k] = build_gamma(k, beta_new, beta_old, tables_, forcing);
        report.assemble_seconds += seconds_since(t0);
        t0 = Clock::now();
        solve_one(k, beta_new);
        report.solve_seconds += seconds_since(t0);
        beta_solved[k] = unvec(solved[k].x, beta_new[k].rows());
        beta_new[k] = beta_int[k] + (beta_solved[k] - beta_int[k]) / config_.delta_beta;
      }
    }
    for (const auto& s : solved) {
      if (!s.converged) ++report.lsqr_unconverged;
    }

    report.sweeps = sweep;
    report.eps_conv = convergence(beta_int, beta_solved);
    if (report.eps_conv <= config_.eps_tol) {
      report.converged = true;
      break;
    }
  }

  report.wall_seconds = seconds_since(wall_start);
  return {CPTensor(tables_.specs, std::move(beta_new)), report};
}

}  // namespace lowrank
