#include "lowrank/ht_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/dense_tensor.hpp"
#include "lowrank/errors.hpp"
#include "lowrank/separable_operator.hpp"

namespace lowrank {
namespace {

// Row index of the pair (i_left, i_right) in a transfer matrix is
// i_left + k_left * i_right, which is exactly the row order of kron(R, L).
// kron(right, left) * m without forming the Kronecker product: each column
// of m is a k_left x k_right matrix X mapped to left * X * right^T.
CMatrix kron_apply(const CMatrix& right, const CMatrix& left, const CMatrix& m) {
  if (m.rows() != left.cols() * right.cols()) throw ShapeError("kron_apply: row count mismatch");
  CMatrix out(left.rows() * right.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const Eigen::Map<const CMatrix> x(m.col(c).data(), left.cols(), right.cols());
    Eigen::Map<CMatrix>(out.col(c).data(), left.rows(), right.rows()) = left * x * right.transpose();
  }
  return out;
}

struct ThinQR {
  CMatrix q;
  CMatrix r;
};

ThinQR thin_qr(const CMatrix& m) {
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<CMatrix> qr(m);
  ThinQR out;
  out.q = qr.householderQ() * CMatrix::Identity(m.rows(), k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return out;
}

void require_compatible(const HTTensor& a, const HTTensor& b, const char* what) {
  if (!(a.tree() == b.tree())) throw ShapeError(std::string(what) + ": trees differ");
  require_same_specs(a.specs(), b.specs(), what);
}

}  // namespace

DimensionTree::DimensionTree(int dims) : dims_(dims), leaf_of_(dims, -1) {
  if (dims < 1) throw ShapeError("DimensionTree: at least one dimension required");
  build(0, dims, -1);
}

int DimensionTree::build(int first, int count, int parent) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.push_back({first, count, -1, -1, parent});
  if (count == 1) {
    leaf_of_[first] = index;
    return index;
  }
  const int left_count = (count + 1) / 2;
  const int left = build(first, left_count, index);
  const int right = build(first + left_count, count - left_count, index);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

HTTensor::HTTensor(DimensionTree tree, std::vector<BasisSpec> specs, std::vector<CMatrix> nodes)
    : tree_(std::move(tree)), specs_(std::move(specs)), nodes_(std::move(nodes)) {
  if (static_cast<int>(specs_.size()) != tree_.dims()) throw ShapeError("HTTensor: one spec per dimension required");
  if (static_cast<int>(nodes_.size()) != tree_.size()) throw ShapeError("HTTensor: one matrix per tree node required");
  for (int i = 0; i < tree_.size(); ++i) {
    const auto& n = tree_.node(i);
    const CMatrix& m = nodes_[i];
    if (n.is_leaf()) {
      if (m.rows() != specs_[n.first].modes()) throw ShapeError("HTTensor: leaf frame has wrong row count");
    } else if (m.rows() != nodes_[n.left].cols() * nodes_[n.right].cols()) {
      throw ShapeError("HTTensor: transfer matrix rows do not match child ranks at node " + std::to_string(i));
    }
  }
  if (nodes_[0].cols() != 1) throw ShapeError("HTTensor: root rank must be 1");
}

HTTensor HTTensor::from_cp(const CPTensor& f) {
  DimensionTree tree(f.dims());
  const int r = std::max(f.rank(), 1);
  std::vector<CMatrix> nodes(tree.size());
  for (int i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    if (n.is_leaf()) {
      CMatrix frame = CMatrix::Zero(f.spec(n.first).modes(), r);
      frame.leftCols(f.rank()) = f.factor(n.first);
      nodes[i] = i == DimensionTree::root() ? CMatrix(frame.rowwise().sum()) : frame;
      continue;
    }
    const bool root = i == DimensionTree::root();
    CMatrix b = CMatrix::Zero(r * r, root ? 1 : r);
    for (int l = 0; l < r; ++l) b(l + r * l, root ? 0 : l) = 1.0;
    nodes[i] = std::move(b);
  }
  return HTTensor(std::move(tree), f.specs(), std::move(nodes));
}

HTTensor HTTensor::zeros(std::vector<BasisSpec> specs) { return from_cp(CPTensor(std::move(specs), 1)); }

int HTTensor::max_rank() const {
  int r = 0;
  for (int i = 1; i < tree_.size(); ++i) r = std::max(r, node_rank(i));
  return std::max(r, 1);
}

Complex evaluate(const HTTensor& h, const std::vector<double>& z) {
  if (static_cast<int>(z.size()) != h.dims()) throw ShapeError("evaluate: point dimension mismatch");
  const auto& tree = h.tree();
  std::vector<Eigen::RowVectorXcd> values(tree.size());
  for (int i = tree.size() - 1; i >= 0; --i) {
    const auto& n = tree.node(i);
    if (n.is_leaf()) {
      values[i] = eval_basis_all(h.specs()[n.first], z[n.first]).transpose() * h.node(i);
    } else {
      values[i] = Eigen::kroneckerProduct(values[n.right], values[n.left]).eval() * h.node(i);
    }
  }
  return values[0](0);
}

HTTensor add(const HTTensor& a, const HTTensor& b) {
  require_compatible(a, b, "add");
  const auto& tree = a.tree();
  std::vector<CMatrix> nodes(tree.size());
  for (int i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    const CMatrix& ma = a.node(i);
    const CMatrix& mb = b.node(i);
    const bool root = i == DimensionTree::root();
    if (n.is_leaf()) {
      if (root) {
        nodes[i] = ma + mb;
      } else {
        nodes[i].resize(ma.rows(), ma.cols() + mb.cols());
        nodes[i] << ma, mb;
      }
      continue;
    }
    const Eigen::Index la = a.node(n.left).cols(), lb = b.node(n.left).cols();
    const Eigen::Index ra = a.node(n.right).cols(), rb = b.node(n.right).cols();
    const Eigen::Index kl = la + lb;
    CMatrix m = CMatrix::Zero(kl * (ra + rb), root ? 1 : ma.cols() + mb.cols());
    const Eigen::Index shift = root ? 0 : ma.cols();
    for (Eigen::Index c = 0; c < ma.cols(); ++c) {
      for (Eigen::Index j = 0; j < ra; ++j) m.col(c).segment(kl * j, la) = ma.col(c).segment(la * j, la);
    }
    for (Eigen::Index c = 0; c < mb.cols(); ++c) {
      for (Eigen::Index j = 0; j < rb; ++j) m.col(shift + c).segment(la + kl * (ra + j), lb) = mb.col(c).segment(lb * j, lb);
    }
    nodes[i] = std::move(m);
  }
  return HTTensor(tree, a.specs(), std::move(nodes));
}

HTTensor scale(const HTTensor& h, Complex alpha) {
  HTTensor out = h;
  out.node(DimensionTree::root()) *= alpha;
  return out;
}

HTTensor linear_combination(Complex alpha, const HTTensor& a, Complex beta, const HTTensor& b) {
  return add(scale(a, alpha), scale(b, beta));
}

Complex inner_product(const HTTensor& a, const HTTensor& b) {
  require_compatible(a, b, "inner_product");
  const auto& tree = a.tree();
  std::vector<CMatrix> gram(tree.size());
  for (int i = tree.size() - 1; i >= 0; --i) {
    const auto& n = tree.node(i);
    if (n.is_leaf()) {
      gram[i] = a.node(i).adjoint() * b.node(i);
    } else {
      gram[i] = a.node(i).adjoint() * kron_apply(gram[n.right], gram[n.left], b.node(i));
    }
  }
  return gram[0](0, 0);
}

double norm(const HTTensor& h) { return std::sqrt(std::max(0.0, inner_product(h, h).real())); }

HTTensor apply_operator(const SeparableOperator& op, const HTTensor& h) {
  if (op.dims() != h.dims()) throw ShapeError("apply_operator: operator and tensor dimension counts differ");
  if (op.separation_rank() == 0) return scale(h, 0.0);
  const auto& tree = h.tree();
  std::optional<HTTensor> sum;
  for (const auto& term : op.terms()) {
    HTTensor part = h;
    for (int k = 0; k < h.dims(); ++k) {
      if (term.factors[k] == FactorKind::Identity) continue;
      CMatrix& frame = part.node(tree.leaf(k));
      frame = factor_matrix(h.specs()[k], term.factors[k]) * frame;
    }
    part.node(DimensionTree::root()) *= term.alpha;
    sum = sum ? add(*sum, part) : std::move(part);
  }
  return *sum;
}

HTTensor orthogonalize(const HTTensor& h) {
  HTTensor out = h;
  const auto& tree = h.tree();
  std::vector<CMatrix> r(tree.size());
  for (int i = tree.size() - 1; i >= 0; --i) {
    const auto& n = tree.node(i);
    CMatrix& m = out.node(i);
    if (!n.is_leaf()) m = kron_apply(r[n.right], r[n.left], m);
    if (i == DimensionTree::root()) break;
    ThinQR qr = thin_qr(m);
    m = std::move(qr.q);
    r[i] = std::move(qr.r);
  }
  return out;
}

TruncationResult truncate(const HTTensor& h, int r_max, double eps) {
  if (r_max < 1) throw DomainError("truncate: r_max must be at least 1");
  if (eps < 0.0) throw DomainError("truncate: eps must be non-negative");
  HTTensor out = orthogonalize(h);
  const auto& tree = out.tree();
  if (tree.size() == 1) return {out, 0.0};

  const double total2 = out.node(DimensionTree::root()).squaredNorm();
  const double node_budget = eps * eps * total2 / (2.0 * tree.dims() - 3.0);

  // Reduced Gramians, root to leaves: G_t = X X^H where U_t X is the
  // t-matricisation of h with orthonormal U_t.
  std::vector<CMatrix> gram(tree.size());
  gram[0] = CMatrix::Ones(1, 1);
  for (int i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    if (n.is_leaf()) continue;
    const CMatrix& b = out.node(i);
    const Eigen::Index kl = out.node(n.left).cols();
    const Eigen::Index kr = out.node(n.right).cols();
    // With X_a the k_l x k_r reshape of column a and Y_a that of (B G)_a:
    // G_left = sum_a Y_a X_a^H, G_right = sum_a Y_a^T conj(X_a).
    const CMatrix bg = b * gram[i];
    CMatrix gl = CMatrix::Zero(kl, kl);
    CMatrix gr = CMatrix::Zero(kr, kr);
    for (Eigen::Index a = 0; a < b.cols(); ++a) {
      const Eigen::Map<const CMatrix> x(b.col(a).data(), kl, kr);
      const Eigen::Map<const CMatrix> y(bg.col(a).data(), kl, kr);
      gl.noalias() += y * x.adjoint();
      gr.noalias() += y.transpose() * x.conjugate();
    }
    gram[n.left] = std::move(gl);
    gram[n.right] = std::move(gr);
  }

  // The two children of the root share one spectrum; the right one follows
  // the left one's rank and its tail is not counted twice.
  const int root_left = tree.node(DimensionTree::root()).left;
  const int root_right = tree.node(DimensionTree::root()).right;
  double discarded = 0.0;
  std::vector<CMatrix> basis(tree.size());
  for (int i = 1; i < tree.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram[i]);
    const Eigen::Index k = gram[i].rows();
    // Descending order.
    Eigen::VectorXd values = eig.eigenvalues().reverse().cwiseMax(0.0);
    CMatrix vectors = eig.eigenvectors().rowwise().reverse();
    Eigen::Index keep = k;
    double tail = 0.0;
    if (i == root_right) {
      keep = std::min<Eigen::Index>(k, basis[root_left].cols());
    } else {
      while (keep > 1 && tail + values(keep - 1) <= node_budget) tail += values(--keep);
      while (keep > r_max) tail += values(--keep);
    }
    discarded += tail;
    basis[i] = vectors.leftCols(keep);
  }

  for (int i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    CMatrix& m = out.node(i);
    if (!n.is_leaf()) m = kron_apply(basis[n.right].adjoint(), basis[n.left].adjoint(), m);
    if (i != DimensionTree::root()) m = m * basis[i];
  }
  return {out, std::sqrt(discarded)};
}

DenseTensor to_dense(const HTTensor& h) {
  const auto& tree = h.tree();
  std::vector<CMatrix> frames(tree.size());
  for (int i = tree.size() - 1; i >= 0; --i) {
    const auto& n = tree.node(i);
    if (n.is_leaf()) {
      frames[i] = h.node(i);
      continue;
    }
    const CMatrix& ul = frames[n.left];
    const CMatrix& ur = frames[n.right];
    const CMatrix& b = h.node(i);
    CMatrix u(ul.rows() * ur.rows(), b.cols());
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      Eigen::Map<const CMatrix> coupling(b.col(c).data(), ul.cols(), ur.cols());
      const CMatrix block = (ul * coupling * ur.transpose()).transpose();
      u.col(c) = Eigen::Map<const CVector>(block.data(), block.size());
    }
    frames[i] = std::move(u);
  }
  DenseTensor out(h.specs());
  out.data() = frames[0].col(0);
  return out;
}

}  // namespace lowrank
