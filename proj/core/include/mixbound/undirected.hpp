#pragma once

#include <span>
#include <vector>

#include "mixbound/chain.hpp"
#include "mixbound/core.hpp"

namespace mixbound {

/// Chain random field on Sigma^n given by n-1 nonnegative pairwise
/// potentials. potential(i)(a, b) scores (x_i = a, x_{i+1} = b). A missing
/// edge is expressed as an all-ones matrix; the format requires all n-1
/// consecutive potentials explicitly.
class UndirectedChainSpec {
 public:
  static UndirectedChainSpec make(Alphabet alphabet, std::vector<Matrix> potentials);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t length() const { return potentials_.size() + 1; }

  /// 1 <= i < n.
  const Matrix& potential(std::size_t i) const;

 private:
  UndirectedChainSpec(Alphabet a, std::vector<Matrix> ps)
      : alphabet_(std::move(a)), potentials_(std::move(ps)) {}
  Alphabet alphabet_;
  std::vector<Matrix> potentials_;
};

/// prod_i psi_i(x_i, x_{i+1}) / Z with Z accumulated by transfer matrices,
/// never by enumeration. Throws NumericError when Z = 0.
double field_density(const UndirectedChainSpec& spec, std::span<const Sym> x);

/// The directed chain inducing the same joint density. Kernels come from
/// suffix-product accumulators: p_i(x|y) is proportional to
/// psi_i(y, x) * suffix_i+1(x). A conditioning state with zero total mass
/// makes the column undefined; the spec is rejected naming (i, y).
ChainSpec derive_kernels(const UndirectedChainSpec& spec);

/// (R_i - r_i) / (R_i + r_i) over the entries of psi_{i,i+1}. Returns 1
/// when r_i = 0 and R_i > 0 (valid but vacuous); rejects R_i = r_i = 0.
double undirected_theta_bound(const UndirectedChainSpec& spec, std::size_t i);

}  // namespace mixbound
