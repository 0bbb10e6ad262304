#include "doctest.h"
#include "oracles.hpp"

#include <functional>

#include "lowrank/ht_tensor.hpp"

using namespace lowrank;

namespace {

// Reference hierarchical SVD of a full row-major coefficient array: for every
// non-root node the singular values of the matricisation that separates the
// node's dimensions from the rest.
std::vector<double> matricisation_tail(const DenseTensor& t, int first, int count, int keep) {
  const int n = t.dims();
  Eigen::Index rows = 1, cols = 1;
  for (int k = 0; k < n; ++k) (k >= first && k < first + count ? rows : cols) *= t.specs()[k].modes();
  CMatrix m(rows, cols);
  std::vector<int> index(n, 0);
  for (Eigen::Index flat = 0; flat < t.data().size(); ++flat) {
    Eigen::Index r = 0, c = 0;
    for (int k = 0; k < n; ++k) {
      if (k >= first && k < first + count) {
        r = r * t.specs()[k].modes() + index[k];
      } else {
        c = c * t.specs()[k].modes() + index[k];
      }
    }
    m(r, c) = t.data()(flat);
    for (int k = n - 1; k >= 0; --k) {
      if (++index[k] < t.specs()[k].modes()) break;
      index[k] = 0;
    }
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  return {sv.data() + std::min<Eigen::Index>(keep, sv.size()), sv.data() + sv.size()};
}

}  // namespace

TEST_CASE("dimension tree layout") {
  DimensionTree t(5);
  CHECK(t.size() == 9);
  CHECK(t.node(0).count == 5);
  CHECK(t.node(t.node(0).left).count == 3);
  CHECK(t.node(t.node(0).right).count == 2);
  for (int k = 0; k < 5; ++k) {
    const auto& leaf = t.node(t.leaf(k));
    CHECK(leaf.is_leaf());
    CHECK(leaf.first == k);
  }
  for (int i = 1; i < t.size(); ++i) CHECK(t.node(i).parent < i);
  CHECK(DimensionTree(1).size() == 1);
}

TEST_CASE("conversion from CP preserves values") {
  std::mt19937_64 rng(101);
  const auto specs = oracle::uniform_specs(4, 5, 1.0);
  const auto f = random_cp(specs, 3, rng);
  const auto h = HTTensor::from_cp(f);
  for (int i = 0; i < 100; ++i) {
    const auto z = oracle::random_point(specs, rng);
    CHECK(oracle::rel(evaluate(h, z), evaluate(f, z)) < 1e-10);
  }
  CHECK((to_dense(h).data() - to_dense(f).data()).norm() < 1e-10 * norm(f));

  const auto one = HTTensor::from_cp(random_cp(specs, 1, rng));
  for (int i = 1; i < one.tree().size(); ++i) CHECK(one.node_rank(i) == 1);

  const auto zero = HTTensor::from_cp(CPTensor(specs, 2));
  CHECK(std::abs(evaluate(zero, oracle::random_point(specs, rng))) == 0.0);
  CHECK(norm(zero) == 0.0);
  CHECK(norm(HTTensor::zeros(specs)) == 0.0);
}

TEST_CASE("single dimension tensor is a plain expansion") {
  BasisSpec spec(7, 2.0);
  const CVector c = project(spec, [](double z) { return std::exp(-z * z); });
  const auto h = HTTensor::from_cp(rank_one({spec}, {c}));
  for (double z : {-1.5, 0.0, 0.8}) CHECK(std::abs(evaluate(h, {z}) - eval_expansion(spec, c, z)) < 1e-14);
  CHECK(std::abs(norm(h) - c.norm()) < 1e-14);
}

TEST_CASE("inner product and addition agree with CP") {
  std::mt19937_64 rng(103);
  const auto specs = oracle::uniform_specs(3, 5, 1.0);
  const auto f = random_cp(specs, 2, rng);
  const auto g = random_cp(specs, 3, rng);
  const auto hf = HTTensor::from_cp(f), hg = HTTensor::from_cp(g);
  CHECK(std::abs(inner_product(hf, hg) - inner_product(f, g)) < 1e-10 * norm(f) * norm(g));
  CHECK(std::abs(norm(hf) - norm(f)) < 1e-12 * norm(f));

  const auto sum = add(hf, hg);
  for (int i = 1; i < sum.tree().size(); ++i) CHECK(sum.node_rank(i) == hf.node_rank(i) + hg.node_rank(i));
  const auto combo = linear_combination(2.0, hf, Complex(0, -1), hg);
  const auto zero = HTTensor::zeros(specs);
  for (int i = 0; i < 20; ++i) {
    const auto z = oracle::random_point(specs, rng);
    CHECK(std::abs(evaluate(sum, z) - evaluate(add(f, g), z)) < 1e-10);
    CHECK(std::abs(evaluate(combo, z) - (2.0 * evaluate(f, z) - Complex(0, 1) * evaluate(g, z))) < 1e-10);
    CHECK(std::abs(evaluate(add(hf, zero), z) - evaluate(hf, z)) < 1e-12);
    CHECK(std::abs(evaluate(scale(hf, 3.0), z) - 3.0 * evaluate(hf, z)) < 1e-10);
  }
}

TEST_CASE("operator application agrees with CP") {
  std::mt19937_64 rng(107);
  Eigen::MatrixXd c(3, 3);
  c << 0.5, 1.5, 0.0, -0.5, 0.5, 0.5, 0.0, -0.5, 0.5;
  const auto specs = oracle::uniform_specs(3, 5, 2.0);
  const auto f = random_cp(specs, 2, rng);
  const auto op = advection_operator(c);
  const auto h = apply_operator(op, HTTensor::from_cp(f));
  const auto g = apply(op, f);
  for (int i = 0; i < 20; ++i) {
    const auto z = oracle::random_point(specs, rng);
    CHECK(oracle::rel(evaluate(h, z), evaluate(g, z)) < 1e-9);
  }
  const auto same = apply_operator(identity_operator(3), HTTensor::from_cp(f));
  CHECK((to_dense(same).data() - to_dense(f).data()).norm() < 1e-12 * norm(f));

  CVector mode = CVector::Zero(5);
  mode(specs[0].index_of(1)) = 1.0;
  const auto single = HTTensor::from_cp(rank_one(specs, {mode, mode, mode}));
  const SeparableOperator d(3, {{1.0, {FactorKind::Identity, FactorKind::Derivative, FactorKind::Identity}}});
  const auto dh = apply_operator(d, single);
  const std::vector<double> z{0.3, -0.2, 0.9};
  CHECK(std::abs(evaluate(dh, z) - Complex(0, oracle::kPi / 2.0) * evaluate(single, z)) < 1e-12);
}

TEST_CASE("orthogonalisation keeps the tensor and orthonormalises frames") {
  std::mt19937_64 rng(109);
  const auto specs = oracle::uniform_specs(4, 5, 1.0);
  const auto h = HTTensor::from_cp(random_cp(specs, 3, rng));
  const auto o = orthogonalize(h);
  CHECK((to_dense(o).data() - to_dense(h).data()).norm() < 1e-10 * norm(h));
  for (int i = 0; i < o.tree().size(); ++i) {
    if (!o.tree().node(i).is_leaf()) continue;
    const CMatrix& u = o.node(i);
    CHECK((u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).norm() < 1e-12);
  }
  CHECK(std::abs(norm(o) - o.node(0).norm()) < 1e-10 * norm(o));
}

TEST_CASE("truncation matches the dense hierarchical SVD") {
  std::mt19937_64 rng(113);
  const auto specs = oracle::uniform_specs(3, 5, 1.0);
  const auto h = HTTensor::from_cp(random_cp(specs, 6, rng));
  const DenseTensor full = to_dense(h);
  const DimensionTree& tree = h.tree();
  for (int keep : {1, 2, 3, 4}) {
    const auto t = truncate(h, keep, 0.0);
    double discarded = 0.0;
    for (int i = 1; i < tree.size(); ++i) {
      if (i == tree.node(0).right) continue;  // same spectrum as the left child
      for (double s : matricisation_tail(full, tree.node(i).first, tree.node(i).count, keep)) discarded += s * s;
    }
    CHECK(std::abs(t.error_estimate - std::sqrt(discarded)) < 1e-9 * full.norm());
    const double actual = (to_dense(t.tensor).data() - full.data()).norm();
    CHECK(actual <= t.error_estimate * (1 + 1e-9) + 1e-12);
    CHECK(t.tensor.max_rank() <= keep);
  }
}

TEST_CASE("truncation of rank-1 input is exact") {
  std::mt19937_64 rng(127);
  const auto specs = oracle::uniform_specs(3, 5, 1.0);
  const auto h = HTTensor::from_cp(random_cp(specs, 1, rng));
  const auto t = truncate(h, 4, 1e-14);
  CHECK(t.tensor.max_rank() == 1);
  for (int i = 0; i < 10; ++i) {
    const auto z = oracle::random_point(specs, rng);
    CHECK(std::abs(evaluate(t.tensor, z) - evaluate(h, z)) < 1e-12 * (1 + std::abs(evaluate(h, z))));
  }
}

TEST_CASE("truncation resolves exact cancellation") {
  std::mt19937_64 rng(131);
  const auto specs = oracle::uniform_specs(4, 5, 1.0);
  const auto h = HTTensor::from_cp(random_cp(specs, 2, rng));
  const auto t = truncate(add(h, scale(h, -1.0)), 1, 0.0);
  CHECK(norm(t.tensor) < 1e-10);
}

TEST_CASE("tolerance-driven truncation respects the requested accuracy") {
  std::mt19937_64 rng(137);
  const auto specs = oracle::uniform_specs(4, 7, 1.0);
  auto f = random_cp(specs, 2, rng);
  const auto noise = scale(random_cp(specs, 3, rng), 1e-6);
  const auto h = HTTensor::from_cp(add(f, noise));
  const auto t = truncate(h, 50, 1e-4);
  CHECK(t.tensor.max_rank() == 2);
  CHECK((to_dense(t.tensor).data() - to_dense(h).data()).norm() <= 1e-4 * norm(h));
}
