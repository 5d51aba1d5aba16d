#include "mixbound/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace mixbound {

Kernel Kernel::validated(const Matrix& m, double tol) {
  if (m.rows == 0 || m.cols == 0) throw NumericError("kernel must be nonempty");
  std::vector<double> col(m.rows * m.cols);
  for (std::size_t s = 0; s < m.cols; ++s) {
    double sum = 0.0;
    for (std::size_t t = 0; t < m.rows; ++t) {
      const double p = m(t, s);
      if (!std::isfinite(p) || p < 0.0)
        throw NumericError("kernel entries must be finite and nonnegative");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
      throw NumericError("kernel column " + std::to_string(s) + " sums to " +
                         std::to_string(sum) + ", outside tolerance");
    for (std::size_t t = 0; t < m.rows; ++t) col[s * m.rows + t] = m(t, s) / sum;
  }
  return Kernel(m.rows, m.cols, std::move(col));
}

Kernel Kernel::from_source_rows(const std::vector<std::vector<double>>& rows,
                                double tol) {
  if (rows.empty()) throw NumericError("kernel must be nonempty");
  const std::size_t targets = rows.front().size();
  Matrix m(targets, rows.size());
  for (std::size_t s = 0; s < rows.size(); ++s) {
    if (rows[s].size() != targets)
      throw NumericError("kernel rows have inconsistent lengths");
    for (std::size_t t = 0; t < targets; ++t) m(t, s) = rows[s][t];
  }
  return validated(m, tol);
}

double doeblin_coefficient(const Kernel& k) {
  double worst = 0.0;
  for (std::size_t j = 0; j < k.sources(); ++j)
    for (std::size_t j2 = j + 1; j2 < k.sources(); ++j2)
      worst = std::max(worst, tv_distance(k.column(j), k.column(j2)));
  return worst;
}

SignedVec contract(const Kernel& k, const SignedVec& v) {
  if (v.size() != k.sources())
    throw std::invalid_argument("contract: dimension mismatch");
  SignedVec out;
  out.v.assign(k.targets(), 0.0);
  for (std::size_t s = 0; s < k.sources(); ++s) {
    const auto col = k.column(s);
    const double w = v.v[s];
    for (std::size_t t = 0; t < k.targets(); ++t) out.v[t] += col[t] * w;
  }
  return out;
}

Kernel compose(const Kernel& a, const Kernel& b) {
  if (a.sources() != b.targets())
    throw std::invalid_argument("compose: dimension mismatch");
  Matrix m(a.targets(), b.sources());
  for (std::size_t s = 0; s < b.sources(); ++s)
    for (std::size_t t = 0; t < a.targets(); ++t) {
      double sum = 0.0;
      for (std::size_t u = 0; u < a.sources(); ++u) sum += a(t, u) * b(u, s);
      m(t, s) = sum;
    }
  return Kernel::validated(m, 1e-6);
}

double alpha(std::vector<double> xs) {
  for (double x : xs)
    if (!(x >= 0.0 && x <= 1.0))
      throw std::invalid_argument("alpha: arguments must lie in [0,1]");
  std::sort(xs.begin(), xs.end(), std::greater<double>());
  double acc = 0.0;  // alpha of the empty set
  for (double x : xs) acc = x + (1.0 - x) * acc;
  return acc;
}

double product_tv_bound(double dp, double dq) {
  if (!(dp >= 0.0 && dp <= 1.0 && dq >= 0.0 && dq <= 1.0))
    throw std::invalid_argument("product_tv_bound: inputs must lie in [0,1]");
  return dp + dq - dp * dq;
}

BlockKernel::BlockKernel(std::vector<int> col_nodes, std::vector<int> row_nodes,
                         std::size_t sigma, std::vector<double> colmajor)
    : col_nodes_(std::move(col_nodes)),
      row_nodes_(std::move(row_nodes)),
      sigma_(sigma),
      col_(std::move(colmajor)) {
  rows_ = 1;
  for (std::size_t i = 0; i < row_nodes_.size(); ++i) rows_ *= sigma_;
  cols_ = 1;
  for (std::size_t i = 0; i < col_nodes_.size(); ++i) cols_ *= sigma_;
  if (col_.size() != rows_ * cols_)
    throw std::invalid_argument("block kernel storage size mismatch");
}

BlockKernel block_tensor(std::span<const EdgeKernel> edges, std::size_t sigma,
                         std::size_t cap) {
  if (edges.empty()) throw std::invalid_argument("block_tensor: no edges");

  std::vector<int> sources, targets;
  std::map<int, std::size_t> edge_of_target;  // target node -> edge position
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ek = edges[e];
    if (ek.k.targets() != sigma || ek.k.sources() != sigma)
      throw std::invalid_argument("block_tensor: edge kernel is not sigma x sigma");
    if (!edge_of_target.emplace(ek.target_node, e).second)
      throw std::invalid_argument("block_tensor: target node " +
                                  std::to_string(ek.target_node) +
                                  " has multiple incident edges");
    sources.push_back(ek.source_node);
    targets.push_back(ek.target_node);
  }
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::sort(targets.begin(), targets.end());
  for (int s : sources)
    if (edge_of_target.count(s))
      throw std::invalid_argument("block_tensor: node sets I and J must be disjoint");

  const std::size_t ncols = checked_pow(sigma, sources.size(), cap);
  const std::size_t nrows = checked_pow(sigma, targets.size(), cap);
  if (nrows > cap / std::max<std::size_t>(ncols, 1))
    throw CapError("block_tensor: product space exceeds cap");

  // Position of each source node in the sorted column index set.
  std::map<int, std::size_t> col_pos;
  for (std::size_t i = 0; i < sources.size(); ++i) col_pos[sources[i]] = i;

  std::vector<double> colmajor(nrows * ncols);
  std::vector<Sym> x(sources.size()), y(targets.size());
  for (std::size_t c = 0; c < ncols; ++c) {
    decode_seq(c, sigma, x);
    for (std::size_t r = 0; r < nrows; ++r) {
      decode_seq(r, sigma, y);
      double p = 1.0;
      for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        const auto& ek = edges[edge_of_target.at(targets[ti])];
        p *= ek.k(y[ti], x[col_pos.at(ek.source_node)]);
      }
      colmajor[c * nrows + r] = p;
    }
  }
  return BlockKernel(std::move(sources), std::vector<int>(targets), sigma,
                     std::move(colmajor));
}

double doeblin_coefficient(const BlockKernel& k) {
  double worst = 0.0;
  for (std::size_t j = 0; j < k.cols(); ++j)
    for (std::size_t j2 = j + 1; j2 < k.cols(); ++j2)
      worst = std::max(worst, tv_distance(k.column(j), k.column(j2)));
  return worst;
}

}  // namespace mixbound
