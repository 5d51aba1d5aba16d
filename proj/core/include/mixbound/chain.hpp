#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mixbound/contraction.hpp"
#include "mixbound/core.hpp"

namespace mixbound {

/// Inhomogeneous Markov chain on Sigma^n given by an initial distribution
/// and n-1 square kernels. kernel(i) carries the step from position i to
/// i+1 in the 1-based position convention used throughout.
class ChainSpec {
 public:
  /// Trivial single-position chain on a one-symbol alphabet.
  ChainSpec() : alphabet_(Alphabet::of_size(1)), p0_(ProbVec::validated({1.0})) {}

  static ChainSpec make(Alphabet alphabet, ProbVec p0, std::vector<Kernel> kernels);
  /// n-1 slots sharing one kernel.
  static ChainSpec homogeneous(Alphabet alphabet, ProbVec p0, Kernel k, std::size_t n);

  const Alphabet& alphabet() const { return alphabet_; }
  const ProbVec& p0() const { return p0_; }
  std::size_t length() const { return kernels_.size() + 1; }

  /// 1 <= i < n.
  const Kernel& kernel(std::size_t i) const;

 private:
  ChainSpec(Alphabet a, ProbVec p0, std::vector<std::shared_ptr<const Kernel>> ks)
      : alphabet_(std::move(a)), p0_(std::move(p0)), kernels_(std::move(ks)) {}
  Alphabet alphabet_;
  ProbVec p0_;
  std::vector<std::shared_ptr<const Kernel>> kernels_;
};

/// mu(x) = p0(x_1) * prod_i p_i(x_{i+1} | x_i).
double chain_density(const ChainSpec& spec, std::span<const Sym> x);

/// Contraction coefficient of the i-th step, 1 <= i < n.
double chain_theta(const ChainSpec& spec, std::size_t i);

/// Product bound on the eta-mixing coefficient: theta_i * ... * theta_{j-1}.
double chain_eta_bound(const ChainSpec& spec, std::size_t i, std::size_t j);

/// Exact eta_bar_{ij}: the column difference at step i pushed through the
/// intervening kernels. The conditioning prefix drops out, so the maximum
/// over symbol pairs at position i is the supremum itself.
/// Cost O((j-i) |Sigma|^2) per symbol pair.
double chain_eta_exact(const ChainSpec& spec, std::size_t i, std::size_t j);

}  // namespace mixbound
