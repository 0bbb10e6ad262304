#include "lowrank/separable_operator.hpp"

#include <algorithm>
#include <string>

#include "lowrank/errors.hpp"

namespace lowrank {

SeparableOperator::SeparableOperator(int dims, std::vector<OperatorTerm> terms) : dims_(dims), terms_(std::move(terms)) {
  if (dims < 1) throw ShapeError("SeparableOperator: at least one dimension required");
  for (std::size_t q = 0; q < terms_.size(); ++q) {
    if (static_cast<int>(terms_[q].factors.size()) != dims) {
      throw ShapeError("SeparableOperator: term " + std::to_string(q) + " has " +
                       std::to_string(terms_[q].factors.size()) + " factors, expected " + std::to_string(dims));
    }
  }
}

SeparableOperator identity_operator(int dims, Complex alpha) {
  return SeparableOperator(dims, {{alpha, std::vector<FactorKind>(dims, FactorKind::Identity)}});
}

SeparableOperator advection_operator(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols() || c.rows() < 1) throw ShapeError("advection_operator: C must be square");
  if (!c.allFinite()) throw DomainError("advection_operator: C must be finite");
  const int n = static_cast<int>(c.rows());
  std::vector<OperatorTerm> terms;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      std::vector<FactorKind> factors(n, FactorKind::Identity);
      if (k == j) {
        factors[j] = FactorKind::CoordTimesDerivative;
      } else {
        factors[j] = FactorKind::Derivative;
        factors[k] = FactorKind::CoordMultiply;
      }
      terms.push_back({-c(j, k), std::move(factors)});
    }
  }
  return SeparableOperator(n, std::move(terms));
}

SeparableOperator bgk_operator(double nu) {
  if (!(nu > 0.0)) throw DomainError("bgk_operator: collision frequency must be positive");
  std::vector<OperatorTerm> terms;
  terms.push_back({-nu, std::vector<FactorKind>(6, FactorKind::Identity)});
  for (int i = 0; i < 3; ++i) {
    std::vector<FactorKind> factors(6, FactorKind::Identity);
    factors[i] = FactorKind::Derivative;
    factors[3 + i] = FactorKind::CoordMultiply;
    terms.push_back({-1.0, std::move(factors)});
  }
  return SeparableOperator(6, std::move(terms));
}

CPTensor apply(const SeparableOperator& op, const CPTensor& f) {
  if (op.dims() != f.dims()) throw ShapeError("apply: operator and tensor dimension counts differ");
  const int rf = f.rank();
  const int rl = op.separation_rank();
  std::vector<CMatrix> out;
  for (int k = 0; k < f.dims(); ++k) {
    CMatrix m(f.spec(k).modes(), rl * rf);
    for (int q = 0; q < rl; ++q) {
      const OperatorTerm& term = op.term(q);
      CMatrix block = term.factors[k] == FactorKind::Identity
                          ? f.factor(k)
                          : CMatrix(factor_matrix(f.spec(k), term.factors[k]) * f.factor(k));
      if (k == 0) block *= term.alpha;
      m.middleCols(q * rf, rf) = block;
    }
    out.push_back(std::move(m));
  }
  return CPTensor(f.specs(), std::move(out));
}

SeparableOperator CrankNicolsonPair::a() const {
  std::vector<OperatorTerm> terms;
  for (int q = 0; q < size(); ++q) terms.push_back({eta[q], factors[q]});
  return SeparableOperator(dims(), std::move(terms));
}

SeparableOperator CrankNicolsonPair::b() const {
  std::vector<OperatorTerm> terms;
  for (int q = 0; q < size(); ++q) terms.push_back({zeta[q], factors[q]});
  return SeparableOperator(dims(), std::move(terms));
}

CrankNicolsonPair crank_nicolson_pair(const SeparableOperator& op, double dt) {
  if (!(dt > 0.0)) throw DomainError("crank_nicolson_pair: dt must be positive");
  CrankNicolsonPair pair;
  pair.dt = dt;
  pair.factors.push_back(std::vector<FactorKind>(op.dims(), FactorKind::Identity));
  pair.eta.push_back(1.0);
  pair.zeta.push_back(1.0);
  for (const auto& term : op.terms()) {
    const bool identity = std::all_of(term.factors.begin(), term.factors.end(),
                                      [](FactorKind k) { return k == FactorKind::Identity; });
    if (identity) {
      pair.eta[0] -= 0.5 * dt * term.alpha;
      pair.zeta[0] += 0.5 * dt * term.alpha;
    } else {
      pair.factors.push_back(term.factors);
      pair.eta.push_back(-0.5 * dt * term.alpha);
      pair.zeta.push_back(0.5 * dt * term.alpha);
    }
  }
  return pair;
}

}  // namespace lowrank
