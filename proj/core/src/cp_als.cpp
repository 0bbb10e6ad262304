#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <string>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/dense_tensor.hpp"
#include "lowrank/errors.hpp"

namespace lowrank {
namespace {

// What ALS needs from a target t: ||t||^2 and, for dimension j, the matrix
// whose column l is <prod_{k != j} b_{k,l}, t> with dimension j left open.
class Target {
 public:
  virtual ~Target() = default;
  virtual const std::vector<BasisSpec>& specs() const = 0;
  virtual double norm2() const = 0;
  virtual CMatrix rhs(int j, const std::vector<CMatrix>& factors) const = 0;
  virtual double distance_to(const CPTensor& f) const = 0;
};

class CPTarget final : public Target {
 public:
  explicit CPTarget(const CPTensor& t) : t_(t), norm2_(std::max(0.0, inner_product(t, t).real())) {}
  const std::vector<BasisSpec>& specs() const override { return t_.specs(); }
  double norm2() const override { return norm2_; }
  CMatrix rhs(int j, const std::vector<CMatrix>& factors) const override {
    CMatrix g = CMatrix::Ones(factors[j].cols(), t_.rank());
    for (int k = 0; k < t_.dims(); ++k) {
      if (k != j) g.array() *= (factors[k].adjoint() * t_.factor(k)).array();
    }
    return t_.factor(j) * g.transpose();
  }
  double distance_to(const CPTensor& f) const override { return distance(t_, f); }

 private:
  const CPTensor& t_;
  double norm2_;
};

class DenseTarget final : public Target {
 public:
  explicit DenseTarget(const DenseTensor& t) : t_(t), norm2_(t.data().squaredNorm()) {}
  const std::vector<BasisSpec>& specs() const override { return t_.specs(); }
  double norm2() const override { return norm2_; }
  CMatrix rhs(int j, const std::vector<CMatrix>& factors) const override { return contract_all_but(t_, factors, j); }
  double distance_to(const CPTensor& f) const override { return (to_dense(f).data() - t_.data()).norm(); }

 private:
  const DenseTensor& t_;
  double norm2_;
};

CMatrix hadamard_gram(const std::vector<CMatrix>& factors, int skip) {
  const Eigen::Index r = factors[0].cols();
  CMatrix h = CMatrix::Ones(r, r);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (static_cast<int>(k) != skip) h.array() *= (factors[k].adjoint() * factors[k]).array();
  }
  return h;
}

// Rescales each term so all its factor columns have the same norm.
void balance(std::vector<CMatrix>& factors) {
  const int n = static_cast<int>(factors.size());
  for (Eigen::Index l = 0; l < factors[0].cols(); ++l) {
    double log_sum = 0.0;
    bool zero = false;
    for (const auto& f : factors) {
      const double c = f.col(l).norm();
      if (c == 0.0) zero = true;
      log_sum += zero ? 0.0 : std::log(c);
    }
    if (zero) continue;
    const double target = std::exp(log_sum / n);
    for (auto& f : factors) f.col(l) *= target / f.col(l).norm();
  }
}

std::vector<CMatrix> random_init(const std::vector<BasisSpec>& specs, int rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CPTensor init = random_cp(specs, rank, rng);
  std::vector<CMatrix> factors = init.factors();
  for (auto& f : factors) f.colwise().normalize();
  return factors;
}

ALSApproxResult run_als(const Target& target, int rank, const ALSApproxConfig& config) {
  if (rank < 1) throw DomainError("cp_approx_als: rank must be at least 1");
  const auto& specs = target.specs();
  const int n = static_cast<int>(specs.size());
  const double t2 = target.norm2();

  ALSApproxResult result;
  if (t2 == 0.0) {
    result.tensor = CPTensor(specs, rank);
    result.converged = true;
    return result;
  }

  std::vector<CMatrix> factors;
  if (config.initial) {
    require_same_specs(config.initial->specs(), specs, "cp_approx_als initial guess");
    if (config.initial->rank() != rank) throw ShapeError("cp_approx_als: initial guess has the wrong rank");
    factors = config.initial->factors();
  } else {
    factors = random_init(specs, rank, config.seed);
  }

  double previous = std::numeric_limits<double>::infinity();
  const double noise = 1e-12 * t2;
  for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
    double cross = 0.0;
    double f2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const CMatrix h = hadamard_gram(factors, j);
      const CMatrix rhs = target.rhs(j, factors);
      const double lambda = config.regularization * std::max(h.trace().real() / rank, 1e-300);
      CMatrix reg = h;
      reg.diagonal().array() += lambda;
      Eigen::LDLT<CMatrix> ldlt(reg);
      if (ldlt.info() != Eigen::Success) {
        throw ConditioningError("cp_approx_als: normal equations singular in dimension " + std::to_string(j));
      }
      CMatrix solved = ldlt.solve(CMatrix(rhs.transpose())).transpose();
      if (!solved.allFinite()) {
        throw ConditioningError("cp_approx_als: non-finite solution in dimension " + std::to_string(j));
      }
      factors[j] = std::move(solved);
      if (j == n - 1) {
        cross = (factors[j].adjoint() * rhs).trace().real();
        f2 = (h.array() * (factors[j].adjoint() * factors[j]).array()).sum().real();
      }
    }
    balance(factors);

    double res2 = std::max(0.0, t2 - 2.0 * cross + f2);
    // The expanded form resolves res2 only to ~1e-16 t2; below 1e-12 t2 use
    // the orthogonalised difference instead.
    double resolution = 1e-16 * t2;
    if (res2 < 1e-12 * t2) {
      const double d = target.distance_to(CPTensor(specs, factors));
      res2 = d * d;
      resolution = 1e-28 * t2;
    }
    result.sweep_residuals.push_back(std::sqrt(res2));
    result.sweeps = sweep;
    if (res2 > previous + noise) result.monotone = false;

    const bool small = res2 <= config.residual_tol * config.residual_tol * t2;
    const bool stalled = previous - res2 <= config.change_tol * previous + resolution;
    previous = std::min(previous, res2);
    if (small || (sweep > 1 && stalled)) {
      result.converged = true;
      break;
    }
  }

  result.tensor = CPTensor(specs, std::move(factors));
  result.residual = target.distance_to(result.tensor);
  result.relative_residual = result.residual / std::sqrt(t2);
  return result;
}

}  // namespace

ALSApproxResult cp_approx_als(const CPTensor& target, int rank, const ALSApproxConfig& config) {
  return run_als(CPTarget(target), rank, config);
}

ALSApproxResult cp_approx_als(const SeparableFunction& target, const std::vector<BasisSpec>& specs, int rank,
                              const ALSApproxConfig& config) {
  const CPTensor projected = project_separable(target, specs);
  return run_als(CPTarget(projected), rank, config);
}

ALSApproxResult cp_approx_als(const DenseTensor& target, int rank, const ALSApproxConfig& config) {
  return run_als(DenseTarget(target), rank, config);
}

ALSApproxResult cp_approx_als(const std::function<double(const std::vector<double>&)>& target,
                              const std::vector<BasisSpec>& specs, int rank, const ALSApproxConfig& config) {
  const DenseTensor projected = project_dense(target, specs);
  return run_als(DenseTarget(projected), rank, config);
}

RankReduceResult rank_reduce_als(const CPTensor& f, int r_target, double eps, const ALSApproxConfig& config,
                                 int start_rank) {
  if (r_target < 1) throw DomainError("rank_reduce_als: target rank must be at least 1");
  start_rank = std::clamp(start_rank, 1, r_target);

  const double f_norm = norm(f);
  if (f_norm == 0.0) return {CPTensor(f.specs(), 1), 0.0, true};

  // Terms ordered by decreasing norm seed the initial guesses.
  std::vector<double> term_norm(f.rank(), 1.0);
  for (int k = 0; k < f.dims(); ++k) {
    for (int l = 0; l < f.rank(); ++l) term_norm[l] *= f.factor(k).col(l).norm();
  }
  std::vector<int> order(f.rank());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return term_norm[a] > term_norm[b]; });

  RankReduceResult best;
  for (int r = start_rank; r <= r_target; ++r) {
    if (f.rank() <= r) return {f, 0.0, true};
    ALSApproxConfig cfg = config;
    cfg.residual_tol = std::max(cfg.residual_tol, eps);
    if (!cfg.initial) {
      // Leading terms plus a small seeded perturbation, so repeated terms do
      // not start ALS on a symmetric (stuck) guess.
      std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(r));
      std::normal_distribution<double> normal;
      std::vector<CMatrix> init;
      for (int k = 0; k < f.dims(); ++k) {
        CMatrix m(f.factor(k).rows(), r);
        for (int l = 0; l < r; ++l) {
          m.col(l) = f.factor(k).col(order[l]);
          const double size = 1e-2 * m.col(l).norm() / std::sqrt(static_cast<double>(m.rows()));
          for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, l) += size * Complex(normal(rng), normal(rng));
        }
        init.push_back(std::move(m));
      }
      cfg.initial = CPTensor(f.specs(), std::move(init));
    } else if (cfg.initial->rank() != r) {
      cfg.initial.reset();
    }
    ALSApproxResult als = cp_approx_als(f, r, cfg);
    best = {std::move(als.tensor), als.residual / f_norm, als.converged};
    if (best.relative_error <= eps) return best;
  }
  return best;
}

}  // namespace lowrank
