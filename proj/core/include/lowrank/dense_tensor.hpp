#pragma once

#include <functional>
#include <vector>

#include "lowrank/spectral_basis.hpp"

namespace lowrank {

class CPTensor;

/// Full coefficient array over a tensor-product basis, row-major (last
/// dimension fastest). Only practical for a handful of dimensions.
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<BasisSpec> specs);

  int dims() const noexcept { return static_cast<int>(specs_.size()); }
  const std::vector<BasisSpec>& specs() const noexcept { return specs_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(data_.size()); }

  CVector& data() noexcept { return data_; }
  const CVector& data() const noexcept { return data_; }

  Complex& at(const std::vector<int>& index);
  Complex at(const std::vector<int>& index) const;

  /// Stride of dimension k in the flat storage.
  std::size_t stride(int k) const;

  double norm() const { return data_.norm(); }

 private:
  std::vector<BasisSpec> specs_;
  CVector data_;
};

DenseTensor to_dense(const CPTensor& f);

/// Galerkin projection of f onto the tensor-product basis via tensor-product
/// Gauss-Legendre quadrature.
DenseTensor project_dense(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<BasisSpec>& specs);

Complex evaluate(const DenseTensor& t, const std::vector<double>& z);

/// Contracts every dimension except `keep` with the columns of `vectors[k]`
/// (conjugated), returning a Q_keep x r matrix whose column l is
/// sum_{s without s_keep} t[s] prod_{k != keep} conj(vectors[k](s_k, l)).
CMatrix contract_all_but(const DenseTensor& t, const std::vector<CMatrix>& vectors, int keep);

}  // namespace lowrank
