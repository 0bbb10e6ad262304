#include "lowrank/dense_tensor.hpp"

#include <algorithm>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/errors.hpp"
#include "lowrank/quadrature.hpp"

namespace lowrank {
namespace {

std::size_t product(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  return n;
}

// Applies `m` (rows x shape[k]) along dimension k of a row-major array.
CVector mode_product(const CVector& in, std::vector<int>& shape, int k, const CMatrix& m) {
  std::size_t outer = 1;
  for (int i = 0; i < k; ++i) outer *= shape[i];
  std::size_t inner = 1;
  for (std::size_t i = k + 1; i < shape.size(); ++i) inner *= shape[i];
  const int n_in = shape[k];
  const int n_out = static_cast<int>(m.rows());

  CVector out = CVector::Zero(static_cast<Eigen::Index>(outer * n_out * inner));
  for (std::size_t o = 0; o < outer; ++o) {
    Eigen::Map<const CMatrix> block(in.data() + o * n_in * inner, inner, n_in);
    Eigen::Map<CMatrix> target(out.data() + o * n_out * inner, inner, n_out);
    target.noalias() = block * m.transpose();
  }
  shape[k] = n_out;
  return out;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<BasisSpec> specs) : specs_(std::move(specs)) {
  std::size_t n = 1;
  for (const auto& s : specs_) n *= static_cast<std::size_t>(s.modes());
  data_ = CVector::Zero(static_cast<Eigen::Index>(n));
}

std::size_t DenseTensor::stride(int k) const {
  std::size_t s = 1;
  for (int i = dims() - 1; i > k; --i) s *= static_cast<std::size_t>(specs_[i].modes());
  return s;
}

Complex& DenseTensor::at(const std::vector<int>& index) {
  std::size_t flat = 0;
  for (int k = 0; k < dims(); ++k) flat = flat * specs_[k].modes() + index[k];
  return data_(static_cast<Eigen::Index>(flat));
}

Complex DenseTensor::at(const std::vector<int>& index) const { return const_cast<DenseTensor*>(this)->at(index); }

DenseTensor to_dense(const CPTensor& f) {
  DenseTensor out(f.specs());
  std::vector<int> shape;
  for (const auto& s : f.specs()) shape.push_back(s.modes());
  for (int l = 0; l < f.rank(); ++l) {
    CVector term = CVector::Ones(1);
    for (int k = 0; k < f.dims(); ++k) {
      const CVector col = f.factor(k).col(l);
      CVector next(term.size() * col.size());
      for (Eigen::Index i = 0; i < term.size(); ++i) next.segment(i * col.size(), col.size()) = term(i) * col;
      term = std::move(next);
    }
    out.data() += term;
  }
  return out;
}

DenseTensor project_dense(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<BasisSpec>& specs) {
  const int n = static_cast<int>(specs.size());
  std::vector<QuadratureRule> rules;
  std::vector<int> shape;
  for (const auto& spec : specs) {
    rules.push_back(composite_gauss_legendre(-spec.half_width(), spec.half_width(), std::max(8, spec.modes())));
    shape.push_back(static_cast<int>(rules.back().nodes.size()));
  }

  CVector values(static_cast<Eigen::Index>(product(shape)));
  std::vector<int> index(n, 0);
  std::vector<double> z(n);
  for (Eigen::Index flat = 0; flat < values.size(); ++flat) {
    for (int k = 0; k < n; ++k) z[k] = rules[k].nodes[index[k]];
    values(flat) = f(z);
    for (int k = n - 1; k >= 0; --k) {
      if (++index[k] < shape[k]) break;
      index[k] = 0;
    }
  }

  for (int k = 0; k < n; ++k) {
    const auto& rule = rules[k];
    CMatrix proj(specs[k].modes(), static_cast<Eigen::Index>(rule.nodes.size()));
    for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
      proj.col(static_cast<Eigen::Index>(p)) = rule.weights[p] * eval_basis_all(specs[k], rule.nodes[p]).conjugate();
    }
    values = mode_product(values, shape, k, proj);
  }
  DenseTensor out(specs);
  out.data() = std::move(values);
  return out;
}

Complex evaluate(const DenseTensor& t, const std::vector<double>& z) {
  if (static_cast<int>(z.size()) != t.dims()) throw ShapeError("evaluate: point dimension mismatch");
  std::vector<int> shape;
  for (const auto& s : t.specs()) shape.push_back(s.modes());
  CVector values = t.data();
  for (int k = 0; k < t.dims(); ++k) {
    const CMatrix row = eval_basis_all(t.specs()[k], z[k]).transpose();
    values = mode_product(values, shape, k, row);
  }
  return values(0);
}

CMatrix contract_all_but(const DenseTensor& t, const std::vector<CMatrix>& vectors, int keep) {
  const int n = t.dims();
  const Eigen::Index r = vectors.at(keep).cols();
  CMatrix out(t.specs()[keep].modes(), r);
  std::vector<int> base_shape;
  for (const auto& s : t.specs()) base_shape.push_back(s.modes());
  for (Eigen::Index l = 0; l < r; ++l) {
    std::vector<int> shape = base_shape;
    CVector values = t.data();
    for (int k = 0; k < n; ++k) {
      if (k == keep) continue;
      values = mode_product(values, shape, k, vectors[k].col(l).adjoint());
    }
    out.col(l) = values;
  }
  return out;
}

}  // namespace lowrank
