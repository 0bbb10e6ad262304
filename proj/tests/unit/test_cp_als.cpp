#include "doctest.h"
#include "oracles.hpp"

#include "lowrank/diagnostics.hpp"
#include "lowrank/kinetic_models.hpp"

using namespace lowrank;

namespace {

double gauss_a(const std::vector<double>& z) { return std::exp(-(z[0] - 1.0) * (z[0] - 1.0) - (z[1] + 0.5) * (z[1] + 0.5)); }
double gauss_b(const std::vector<double>& z) {
  return 0.7 * std::exp(-2.0 * (z[0] + 1.0) * (z[0] + 1.0) - 0.5 * (z[1] - 1.0) * (z[1] - 1.0));
}

}  // namespace

TEST_CASE("separable Gaussian is recovered at rank 1") {
  BasisSpec spec(31, 5.0);
  SeparableFunction sf;
  sf.terms.push_back(std::vector<SeparableFunction::Function1D>(3, [](double z) { return std::exp(-z * z); }));
  const auto r = cp_approx_als(sf, std::vector<BasisSpec>(3, spec), 1);
  CHECK(r.residual < 1e-8);
  CHECK(r.monotone);
}

TEST_CASE("Maxwellian approximation meets the half-percent target") {
  BGKSpec spec;
  SeparableFunction sf;
  sf.terms.push_back(std::vector<SeparableFunction::Function1D>(3, [&](double v) { return maxwellian_factor(v, spec); }));
  const auto r = cp_approx_als(sf, std::vector<BasisSpec>(3, spec.v_spec()), 1);
  CHECK(nmae_vs_maxwellian(r.tensor, spec) < 0.005);
}

TEST_CASE("sum of two Gaussians needs rank 2") {
  const auto specs = oracle::uniform_specs(2, 31, 5.0);
  const auto target = [](const std::vector<double>& z) { return gauss_a(z) + gauss_b(z); };
  const DenseTensor dense = project_dense(target, specs);
  ALSApproxConfig cfg;
  cfg.seed = 5;
  const auto r2 = cp_approx_als(dense, 2, cfg);
  const auto r1 = cp_approx_als(dense, 1, cfg);
  const double res2 = (dense.data() - oracle::dense_vector(r2.tensor)).norm();
  const double res1 = (dense.data() - oracle::dense_vector(r1.tensor)).norm();
  CHECK(res2 < 1e-6);
  CHECK(res1 > res2);
  CHECK(std::abs(res2 - r2.residual) < 1e-8);
  CHECK(r2.monotone);
  CHECK(r1.monotone);

  const auto via_function = cp_approx_als(target, specs, 2, cfg);
  CHECK(via_function.residual < 1e-6);
}

TEST_CASE("sweep residuals never increase") {
  std::mt19937_64 rng(23);
  const auto specs = oracle::uniform_specs(3, 7, 1.0);
  const auto target = random_cp(specs, 5, rng);
  for (int rank : {1, 2, 3}) {
    ALSApproxConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(rank);
    cfg.max_sweeps = 200;
    const auto r = cp_approx_als(target, rank, cfg);
    CHECK(r.monotone);
    for (std::size_t i = 1; i < r.sweep_residuals.size(); ++i) {
      CHECK(r.sweep_residuals[i] <= r.sweep_residuals[i - 1] * (1 + 1e-9) + 1e-12 * norm(target));
    }
  }
}

TEST_CASE("rank reduction keeps tensors already in the class") {
  std::mt19937_64 rng(29);
  const auto specs = oracle::uniform_specs(3, 5, 1.0);
  const auto one = random_cp(specs, 1, rng);
  CHECK(rank_reduce_als(one, 1, 1e-12).relative_error < 1e-10);

  const auto four = random_cp(specs, 4, rng);
  const auto r = rank_reduce_als(four, 4, 1e-12);
  CHECK(r.relative_error < 1e-8);
  CHECK(distance(four, r.tensor) < 1e-8 * norm(four));
}

TEST_CASE("rank reduction is near the best rank-2 error for matrices") {
  std::mt19937_64 rng(31);
  const auto specs = oracle::uniform_specs(2, 5, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = random_cp(specs, 6, rng);
    const CMatrix m = f.factor(0) * f.factor(1).transpose();
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto sv = svd.singularValues();
    const double best = std::sqrt(sv.tail(sv.size() - 2).squaredNorm()) / sv.norm();
    ALSApproxConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    cfg.max_sweeps = 2000;
    const auto r = rank_reduce_als(f, 2, 1e-14, cfg);
    CHECK(r.tensor.rank() == 2);
    CHECK(r.relative_error <= 1.1 * best);
  }
}

TEST_CASE("adaptive rank stops at the first rank meeting the tolerance") {
  std::mt19937_64 rng(37);
  const auto specs = oracle::uniform_specs(3, 5, 1.0);
  const auto two = random_cp(specs, 2, rng);
  const auto doubled = add(scale(two, 0.5), scale(two, 0.5));
  const auto r = rank_reduce_als(doubled, 4, 1e-8);
  CHECK(r.tensor.rank() == 2);
  CHECK(r.relative_error < 1e-8);
}
