#include "lowrank/cp_tensor.hpp"

#include <cmath>
#include <string>

#include "lowrank/errors.hpp"
#include "lowrank/ht_tensor.hpp"

namespace lowrank {

CPTensor::CPTensor(std::vector<BasisSpec> specs, int rank) : specs_(std::move(specs)), rank_(rank) {
  if (rank < 0) throw ShapeError("CPTensor: negative rank");
  if (specs_.empty()) throw ShapeError("CPTensor: at least one dimension required");
  for (const auto& s : specs_) factors_.push_back(CMatrix::Zero(s.modes(), rank));
}

CPTensor::CPTensor(std::vector<BasisSpec> specs, std::vector<CMatrix> factors)
    : specs_(std::move(specs)), factors_(std::move(factors)) {
  if (specs_.empty()) throw ShapeError("CPTensor: at least one dimension required");
  if (specs_.size() != factors_.size()) throw ShapeError("CPTensor: one factor matrix per dimension required");
  rank_ = static_cast<int>(factors_[0].cols());
  for (std::size_t k = 0; k < specs_.size(); ++k) {
    if (factors_[k].rows() != specs_[k].modes() || factors_[k].cols() != rank_) {
      throw ShapeError("CPTensor: factor " + std::to_string(k) + " has shape " + std::to_string(factors_[k].rows()) +
                       "x" + std::to_string(factors_[k].cols()));
    }
  }
}

CPTensor CPTensor::term(int l) const {
  std::vector<CMatrix> cols;
  for (const auto& f : factors_) cols.push_back(f.col(l));
  return CPTensor(specs_, std::move(cols));
}

bool CPTensor::all_finite() const {
  for (const auto& f : factors_) {
    if (!f.allFinite()) return false;
  }
  return true;
}

void require_same_specs(const std::vector<BasisSpec>& a, const std::vector<BasisSpec>& b, const char* what) {
  if (a != b) throw ShapeError(std::string(what) + ": operands have different dimensions or basis specs");
}

CPTensor rank_one(std::vector<BasisSpec> specs, const std::vector<CVector>& vectors) {
  if (vectors.size() != specs.size()) throw ShapeError("rank_one: one vector per dimension required");
  std::vector<CMatrix> factors;
  for (const auto& v : vectors) factors.emplace_back(v);
  return CPTensor(std::move(specs), std::move(factors));
}

CPTensor random_cp(std::vector<BasisSpec> specs, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CPTensor f(std::move(specs), rank);
  for (int k = 0; k < f.dims(); ++k) {
    CMatrix& m = f.factor(k);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        m(i, j) = Complex(re, im);
      }
    }
  }
  return f;
}

Complex evaluate(const CPTensor& f, const std::vector<double>& z) {
  if (static_cast<int>(z.size()) != f.dims()) {
    throw ShapeError("evaluate: expected " + std::to_string(f.dims()) + " coordinates, got " +
                     std::to_string(z.size()));
  }
  Eigen::RowVectorXcd terms = Eigen::RowVectorXcd::Ones(f.rank());
  for (int k = 0; k < f.dims(); ++k) {
    terms.array() *= (eval_basis_all(f.spec(k), z[k]).transpose() * f.factor(k)).array();
  }
  return terms.sum();
}

CPTensor linear_combination(Complex alpha, const CPTensor& f, Complex beta, const CPTensor& g) {
  require_same_specs(f.specs(), g.specs(), "add");
  std::vector<CMatrix> factors;
  for (int k = 0; k < f.dims(); ++k) {
    CMatrix m(f.factor(k).rows(), f.rank() + g.rank());
    m << f.factor(k), g.factor(k);
    if (k == 0) {
      m.leftCols(f.rank()) *= alpha;
      m.rightCols(g.rank()) *= beta;
    }
    factors.push_back(std::move(m));
  }
  return CPTensor(f.specs(), std::move(factors));
}

CPTensor add(const CPTensor& f, const CPTensor& g) { return linear_combination(1.0, f, 1.0, g); }

CPTensor scale(const CPTensor& f, Complex alpha) {
  CPTensor out = f;
  out.factor(0) *= alpha;
  return out;
}

Complex inner_product(const CPTensor& f, const CPTensor& g) {
  require_same_specs(f.specs(), g.specs(), "inner_product");
  CMatrix gram = CMatrix::Ones(f.rank(), g.rank());
  for (int k = 0; k < f.dims(); ++k) gram.array() *= (f.factor(k).adjoint() * g.factor(k)).array();
  return gram.sum();
}

double norm(const CPTensor& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

double distance(const CPTensor& f, const CPTensor& g) {
  require_same_specs(f.specs(), g.specs(), "distance");
  return orthogonalize(HTTensor::from_cp(linear_combination(1.0, f, -1.0, g))).node(DimensionTree::root()).norm();
}

CPTensor project_separable(const SeparableFunction& f, const std::vector<BasisSpec>& specs) {
  CPTensor out(specs, static_cast<int>(f.terms.size()));
  for (std::size_t l = 0; l < f.terms.size(); ++l) {
    if (f.terms[l].size() != specs.size()) throw ShapeError("project_separable: term has wrong dimension count");
    for (std::size_t k = 0; k < specs.size(); ++k) {
      out.factor(static_cast<int>(k)).col(static_cast<Eigen::Index>(l)) = project(specs[k], f.terms[l][k]);
    }
  }
  return out;
}

}  // namespace lowrank
