#pragma once

#include <span>
#include <vector>

#include "mixbound/core.hpp"

namespace mixbound {

/// Column-stochastic transition operator on a finite state space:
/// entry(target, source) = P(target | source). Columns are the conditional
/// distributions, so the column-pair TV sweep below reads them directly.
class Kernel {
 public:
  /// From a target-row / source-column matrix. Each column must sum to 1
  /// within `tol` and is renormalized; worse deviations are rejected.
  static Kernel validated(const Matrix& target_by_source, double tol = kInputTol);

  /// From a row-per-source layout (rows[s][t] = P(t|s)), the file convention.
  static Kernel from_source_rows(const std::vector<std::vector<double>>& rows,
                                 double tol = kInputTol);

  std::size_t targets() const { return targets_; }
  std::size_t sources() const { return sources_; }
  bool square() const { return targets_ == sources_; }

  double operator()(std::size_t target, std::size_t source) const {
    return col_[source * targets_ + target];
  }
  std::span<const double> column(std::size_t source) const {
    return {col_.data() + source * targets_, targets_};
  }

 private:
  Kernel(std::size_t t, std::size_t s, std::vector<double> colmajor)
      : targets_(t), sources_(s), col_(std::move(colmajor)) {}
  std::size_t targets_ = 0;
  std::size_t sources_ = 0;
  std::vector<double> col_;  // column-major: col_[s * targets_ + t]
};

/// Contraction (Doeblin/Dobrushin) coefficient: the largest TV distance
/// between any two columns. Always in [0,1] for stochastic input.
double doeblin_coefficient(const Kernel& k);

/// Apply the kernel to a signed measure. A balanced input stays balanced.
SignedVec contract(const Kernel& k, const SignedVec& v);

/// Matrix product of two kernels (apply b first, then a).
Kernel compose(const Kernel& a, const Kernel& b);

/// The inclusion-exclusion combiner: alpha({x}) = x and
/// alpha(xs + {y}) = y + (1-y) * alpha(xs). Empty input yields 0.
/// Symmetric in its arguments; evaluated in sorted descending order so the
/// floating-point result does not depend on the caller's ordering.
double alpha(std::vector<double> xs);

/// TV tensorization for a pair of product measures:
/// ||p ox q - p' ox q'|| <= dp + dq - dp*dq where dp = ||p-p'||, dq = ||q-q'||.
double product_tv_bound(double dp, double dq);

/// One factor of a bipartite tensor product: a kernel carried by the edge
/// source_node -> target_node.
struct EdgeKernel {
  int source_node = 0;
  int target_node = 0;
  Kernel k;
};

/// Kernel between product spaces Sigma^I (columns) and Sigma^J (rows).
/// Indices are flattened row-major over the sorted node list, lexicographic
/// by node index then symbol index; this layout is part of the contract so
/// oracle comparisons stay index-stable.
class BlockKernel {
 public:
  BlockKernel(std::vector<int> col_nodes, std::vector<int> row_nodes,
              std::size_t sigma, std::vector<double> colmajor);

  const std::vector<int>& col_nodes() const { return col_nodes_; }
  const std::vector<int>& row_nodes() const { return row_nodes_; }
  std::size_t sigma() const { return sigma_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t row, std::size_t col) const {
    return col_[col * rows_ + row];
  }
  std::span<const double> column(std::size_t col) const {
    return {col_.data() + col * rows_, rows_};
  }

 private:
  std::vector<int> col_nodes_;  // I, sorted
  std::vector<int> row_nodes_;  // J, sorted
  std::size_t sigma_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> col_;
};

inline constexpr std::size_t kDefaultBlockCap = 1u << 22;

/// Tensor product of edge kernels over a bipartite graph I -> J. Every
/// target node must have exactly one incident edge; source nodes may feed
/// any number of targets (zero is allowed). The result is column-stochastic.
BlockKernel block_tensor(std::span<const EdgeKernel> edges, std::size_t sigma,
                         std::size_t cap = kDefaultBlockCap);

/// Column-pair TV sweep over the product columns.
double doeblin_coefficient(const BlockKernel& k);

}  // namespace mixbound
