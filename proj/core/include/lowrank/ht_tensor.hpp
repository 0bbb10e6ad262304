#pragma once

#include <vector>

#include "lowrank/spectral_basis.hpp"

namespace lowrank {

class CPTensor;
class DenseTensor;
class SeparableOperator;

/// Balanced binary tree over dimensions 0..N-1. Nodes are stored in pre-order,
/// so node 0 is the root and every child has a larger index than its parent.
/// Each interior node splits its dimensions into ceil(n/2) left, floor(n/2) right.
class DimensionTree {
 public:
  struct Node {
    int first = 0;  // dimensions [first, first + count)
    int count = 0;
    int left = -1;
    int right = -1;
    int parent = -1;
    bool is_leaf() const noexcept { return left < 0; }
  };

  explicit DimensionTree(int dims);

  int dims() const noexcept { return dims_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const { return nodes_.at(i); }
  static constexpr int root() noexcept { return 0; }
  /// Node index of the leaf holding dimension k.
  int leaf(int k) const { return leaf_of_.at(k); }

  friend bool operator==(const DimensionTree& a, const DimensionTree& b) { return a.dims_ == b.dims_; }

 private:
  int build(int first, int count, int parent);

  int dims_;
  std::vector<Node> nodes_;
  std::vector<int> leaf_of_;
};

/// Hierarchical Tucker tensor. Leaf nodes carry Q x k frames; interior nodes
/// carry transfer matrices of shape (k_left * k_right) x k_node with row index
/// i_left + k_left * i_right. The root has rank 1. For N = 1 the root is the
/// single leaf and its frame is a Q x 1 coefficient vector.
class HTTensor {
 public:
  HTTensor(DimensionTree tree, std::vector<BasisSpec> specs, std::vector<CMatrix> nodes);

  static HTTensor from_cp(const CPTensor& f);
  static HTTensor zeros(std::vector<BasisSpec> specs);

  const DimensionTree& tree() const noexcept { return tree_; }
  const std::vector<BasisSpec>& specs() const noexcept { return specs_; }
  int dims() const noexcept { return tree_.dims(); }

  /// Frame (leaf) or transfer matrix (interior) of node i.
  const CMatrix& node(int i) const { return nodes_.at(i); }
  CMatrix& node(int i) { return nodes_.at(i); }
  int node_rank(int i) const { return static_cast<int>(nodes_.at(i).cols()); }
  int max_rank() const;

 private:
  DimensionTree tree_;
  std::vector<BasisSpec> specs_;
  std::vector<CMatrix> nodes_;
};

Complex evaluate(const HTTensor& h, const std::vector<double>& z);

HTTensor add(const HTTensor& a, const HTTensor& b);
HTTensor scale(const HTTensor& h, Complex alpha);
HTTensor linear_combination(Complex alpha, const HTTensor& a, Complex beta, const HTTensor& b);

Complex inner_product(const HTTensor& a, const HTTensor& b);
double norm(const HTTensor& h);

/// Sum over operator terms of alpha_q times the per-leaf factor images.
HTTensor apply_operator(const SeparableOperator& op, const HTTensor& h);

/// Orthonormalises every non-root frame (leaves to root, thin QR). The
/// represented tensor is unchanged.
HTTensor orthogonalize(const HTTensor& h);

struct TruncationResult {
  HTTensor tensor;
  /// sqrt of the sum of discarded squared singular values over all nodes.
  double error_estimate = 0.0;
};

/// Hierarchical SVD. Every non-root node keeps at most r_max singular vectors
/// and discards a tail of squared singular values of at most
/// eps^2 ||h||^2 / (2N - 3). eps = 0 keeps every nonzero singular value.
TruncationResult truncate(const HTTensor& h, int r_max, double eps);

DenseTensor to_dense(const HTTensor& h);

}  // namespace lowrank
