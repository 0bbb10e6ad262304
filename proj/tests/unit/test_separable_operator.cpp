#include "doctest.h"
#include "oracles.hpp"

#include "lowrank/errors.hpp"
#include "lowrank/kinetic_models.hpp"

using namespace lowrank;

namespace {

CPTensor projected_gaussian(const std::vector<BasisSpec>& specs, double shift = 0.0) {
  std::vector<CVector> v;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const double c = shift * static_cast<double>(k + 1);
    v.push_back(project(specs[k], [c](double z) { return std::exp(-(z - c) * (z - c)); }));
  }
  return rank_one(specs, v);
}

}  // namespace

TEST_CASE("identity operator leaves the tensor unchanged") {
  std::mt19937_64 rng(41);
  const auto specs = oracle::uniform_specs(3, 5, 1.0);
  const auto f = random_cp(specs, 2, rng);
  const auto g = apply(identity_operator(3), f);
  for (int i = 0; i < 10; ++i) {
    const auto z = oracle::random_point(specs, rng);
    CHECK(std::abs(evaluate(g, z) - evaluate(f, z)) < 1e-12);
  }
}

TEST_CASE("derivative acts on a single mode as a multiplier") {
  const auto specs = oracle::uniform_specs(2, 7, 1.5);
  CVector e1 = CVector::Zero(7), e0 = CVector::Zero(7);
  e1(specs[0].index_of(2)) = 1.0;
  e0(specs[1].index_of(0)) = 1.0;
  const auto f = rank_one(specs, {e1, e0});
  const SeparableOperator d(2, {{1.0, {FactorKind::Derivative, FactorKind::Identity}}});
  const auto g = apply(d, f);
  const Complex factor(0.0, oracle::kPi * 2 / 1.5);
  for (double a : {-1.0, 0.2, 1.3}) {
    const std::vector<double> z{a, 0.5 * a};
    CHECK(std::abs(evaluate(g, z) - factor * evaluate(f, z)) < 1e-12);
  }
}

TEST_CASE("operator application matches the dense operator matrix") {
  std::mt19937_64 rng(43);
  Eigen::MatrixXd c(3, 3);
  c << 0.5, 1.0, -0.3, -1.0, 0.5, 0.2, 0.4, -0.1, 0.7;
  const auto specs = oracle::uniform_specs(3, 5, 2.0);
  const auto op = advection_operator(c);
  const auto f = random_cp(specs, 2, rng);
  const CVector expected = oracle::dense_operator(specs, op) * oracle::dense_vector(f);
  const CVector got = oracle::dense_vector(apply(op, f));
  CHECK((got - expected).norm() < 1e-10 * expected.norm());
}

TEST_CASE("advection term ordering") {
  Eigen::MatrixXd c(2, 2);
  c << 1.0, 2.0, 3.0, 4.0;
  const auto op = advection_operator(c);
  REQUIRE(op.separation_rank() == 4);
  using K = FactorKind;
  CHECK(op.term(0).factors == std::vector<K>{K::CoordTimesDerivative, K::Identity});
  CHECK(op.term(1).factors == std::vector<K>{K::Derivative, K::CoordMultiply});
  CHECK(op.term(2).factors == std::vector<K>{K::CoordMultiply, K::Derivative});
  CHECK(op.term(3).factors == std::vector<K>{K::Identity, K::CoordTimesDerivative});
  CHECK(op.term(0).alpha == Complex(-1.0));
  CHECK(op.term(1).alpha == Complex(-2.0));
  CHECK(op.term(2).alpha == Complex(-3.0));
  CHECK(op.term(3).alpha == Complex(-4.0));
}

TEST_CASE("zero velocity field gives a zero operator") {
  const auto specs = oracle::uniform_specs(2, 9, 4.0);
  const auto op = advection_operator(Eigen::MatrixXd::Zero(2, 2));
  for (const auto& t : op.terms()) CHECK(t.alpha == Complex(0.0));
  const auto g = apply(op, projected_gaussian(specs));
  CHECK(std::abs(evaluate(g, {0.3, -0.7})) == 0.0);
}

TEST_CASE("rotation field matches the symbolic directional derivative") {
  // C = [[0,1],[-1,0]]: L f = -(z2 d1 f - z1 d2 f).
  Eigen::MatrixXd c(2, 2);
  c << 0.0, 1.0, -1.0, 0.0;
  const auto specs = oracle::uniform_specs(2, 41, 6.0);
  const auto f = projected_gaussian(specs, 0.4);
  const auto g = apply(advection_operator(c), f);
  // Symbolic derivative of the band-limited expansion itself.
  const auto eval_with = [&](int k, FactorKind kind, const std::vector<double>& z) {
    Complex v = 1.0;
    for (int d = 0; d < 2; ++d) {
      Complex s = 0.0;
      for (int i = 0; i < 41; ++i) {
        const int freq = specs[d].frequency(i);
        s += f.factor(d)(i, 0) * (d == k ? oracle::factor_image(specs[d], kind, freq, z[d]) : oracle::phi(specs[d], freq, z[d]));
      }
      v *= s;
    }
    return v;
  };
  for (double a : {-2.0, -0.5, 0.0, 0.9, 2.2}) {
    const std::vector<double> z{a, 0.7 - 0.4 * a};
    const Complex expected = -(z[1] * eval_with(0, FactorKind::Derivative, z) - z[0] * eval_with(1, FactorKind::Derivative, z));
    CHECK(std::abs(evaluate(g, z) - expected) < 1e-8);
  }
}

TEST_CASE("BGK operator terms") {
  const auto op = bgk_operator(2.5);
  REQUIRE(op.separation_rank() == 4);
  CHECK(op.term(0).alpha == Complex(-2.5));
  for (int q = 1; q < 4; ++q) {
    CHECK(op.term(q).alpha == Complex(-1.0));
    CHECK(op.term(q).factors[q - 1] == FactorKind::Derivative);
    CHECK(op.term(q).factors[q + 2] == FactorKind::CoordMultiply);
  }
  CHECK_THROWS_AS(bgk_operator(0.0), DomainError);

  BGKSpec spec;
  const auto feq = equilibrium_cp(spec);
  const SeparableOperator collision(6, {op.term(0)});
  const SeparableOperator transport(6, {op.term(1), op.term(2), op.term(3)});
  std::mt19937_64 rng(47);
  for (int i = 0; i < 5; ++i) {
    const auto z = oracle::random_point(feq.specs(), rng);
    CHECK(std::abs(evaluate(apply(collision, feq), z) + 2.5 * evaluate(feq, z)) < 1e-12 * std::abs(evaluate(feq, z)) + 1e-300);
    CHECK(std::abs(evaluate(apply(transport, feq), z)) < 1e-12);
  }
}

TEST_CASE("Crank-Nicolson pair identities") {
  std::mt19937_64 rng(53);
  Eigen::MatrixXd c(2, 2);
  c << 0.5, 1.5, -0.5, 0.5;
  const auto specs = oracle::uniform_specs(2, 5, 2.0);
  const auto op = advection_operator(c);
  const double dt = 0.01;
  const auto pair = crank_nicolson_pair(op, dt);
  CHECK(pair.size() == 5);
  const auto f = random_cp(specs, 2, rng);
  const CVector af = oracle::dense_vector(apply(pair.a(), f));
  const CVector bf = oracle::dense_vector(apply(pair.b(), f));
  const CVector lf = oracle::dense_vector(apply(op, f));
  CHECK((af - bf + dt * lf).norm() < 1e-10 * lf.norm());
  CHECK(((af + bf) / 2.0 - oracle::dense_vector(f)).norm() < 1e-12 * af.norm());

  const auto tiny = crank_nicolson_pair(op, 1e-9);
  const CVector fv = oracle::dense_vector(f);
  CHECK((oracle::dense_vector(apply(tiny.a(), f)) - fv).norm() < 1e-7 * fv.norm());
  CHECK((oracle::dense_vector(apply(tiny.b(), f)) - fv).norm() < 1e-7 * fv.norm());

  const auto bgk = crank_nicolson_pair(bgk_operator(2.0), 0.1);
  REQUIRE(bgk.size() == 4);
  CHECK(std::abs(bgk.eta[0] - Complex(1.1)) < 1e-15);
  CHECK(std::abs(bgk.zeta[0] - Complex(0.9)) < 1e-15);
  CHECK_THROWS_AS(crank_nicolson_pair(op, 0.0), DomainError);
}

TEST_CASE("malformed operators are rejected") {
  CHECK_THROWS_AS(SeparableOperator(2, {{1.0, {FactorKind::Identity}}}), ShapeError);
  CHECK_THROWS_AS(advection_operator(Eigen::MatrixXd::Zero(2, 3)), ShapeError);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(apply(identity_operator(3), random_cp(oracle::uniform_specs(2, 3, 1.0), 1, rng)), ShapeError);
}
