#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mixbound/chain.hpp"
#include "mixbound/contraction.hpp"
#include "mixbound/core.hpp"

namespace mixbound {

/// Markov marginal process: the observed coordinate of a Markov chain on
/// observed x hidden pairs. Pair states are flattened obs-major:
/// pair = obs * |hidden| + hid. This ordering is part of the file format.
class MmpSpec {
 public:
  static MmpSpec make(Alphabet obs, Alphabet hid, ProbVec p0,
                      std::vector<Kernel> kernels);

  const Alphabet& obs_alphabet() const { return obs_; }
  const Alphabet& hid_alphabet() const { return hid_; }
  const ProbVec& p0() const { return p0_; }
  std::size_t pair_count() const { return obs_.size() * hid_.size(); }
  std::size_t length() const { return kernels_.size() + 1; }

  std::size_t pair_index(Sym obs, Sym hid) const { return obs * hid_.size() + hid; }

  /// 1 <= i < n.
  const Kernel& kernel(std::size_t i) const;

 private:
  MmpSpec(Alphabet o, Alphabet h, ProbVec p0,
          std::vector<std::shared_ptr<const Kernel>> ks)
      : obs_(std::move(o)), hid_(std::move(h)), p0_(std::move(p0)),
        kernels_(std::move(ks)) {}
  Alphabet obs_;
  Alphabet hid_;
  ProbVec p0_;
  std::vector<std::shared_ptr<const Kernel>> kernels_;
};

/// Probability of an observed sequence by forward recursion over hidden
/// weight vectors; equals the brute-force hidden-path sum. Plain double
/// accumulation: a positive result underflowing 1e-300 raises NumericError.
double mmp_density(const MmpSpec& spec, std::span<const Sym> xo);

/// Contraction coefficient of the i-th pair kernel over the full pair
/// alphabet (conditioning pairs differing only in the hidden coordinate
/// included).
double mmp_theta(const MmpSpec& spec, std::size_t i);

/// Upper bound theta_i ... theta_{j-1} on the observed process's
/// eta-mixing coefficient. Advertised as a bound, not an equality.
double mmp_eta_bound(const MmpSpec& spec, std::size_t i, std::size_t j);

/// The |hidden| = 1 degeneration as a plain chain over the observed
/// alphabet; outputs of the two modules then agree exactly.
ChainSpec observed_chain(const MmpSpec& spec);

/// Hidden-state distribution at position i conditioned on an observed
/// prefix xo_1..xo_i; requires prefix probability above the conditioning
/// floor. Used by the h-vector diagnostics.
std::vector<double> hidden_posterior(const MmpSpec& spec, std::span<const Sym> xo_prefix);

}  // namespace mixbound
