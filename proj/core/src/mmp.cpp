#include "mixbound/mmp.hpp"

#include <cfloat>
#include <cmath>
#include <string>

namespace mixbound {

MmpSpec MmpSpec::make(Alphabet obs, Alphabet hid, ProbVec p0,
                      std::vector<Kernel> kernels) {
  const std::size_t pairs = obs.size() * hid.size();
  if (p0.size() != pairs)
    throw NumericError("p0 must cover the " + std::to_string(pairs) +
                       " observed x hidden pairs");
  std::vector<std::shared_ptr<const Kernel>> ks;
  ks.reserve(kernels.size());
  for (auto& k : kernels) {
    if (k.targets() != pairs || k.sources() != pairs)
      throw NumericError("MMP kernels must be square over the pair alphabet");
    ks.push_back(std::make_shared<const Kernel>(std::move(k)));
  }
  return MmpSpec(std::move(obs), std::move(hid), std::move(p0), std::move(ks));
}

const Kernel& MmpSpec::kernel(std::size_t i) const {
  if (i < 1 || i >= length())
    throw std::invalid_argument("kernel index " + std::to_string(i) +
                                " out of range [1, " + std::to_string(length()) + ")");
  return *kernels_[i - 1];
}

namespace {

void check_weights(std::span<const double> w) {
  double total = 0.0;
  for (double x : w) total += x;
  if (total > 0.0 && total < 1e-300)
    throw NumericError("forward recursion underflow: prefix mass " +
                       std::to_string(total) + " below 1e-300");
}

// Forward pass: hidden weight vector after conditioning the observed prefix.
// w[h] = P(observed prefix, hidden state h at the last prefix position).
std::vector<double> forward_weights(const MmpSpec& spec, std::span<const Sym> xo) {
  const std::size_t nh = spec.hid_alphabet().size();
  std::vector<double> w(nh), next(nh);
  for (std::size_t h = 0; h < nh; ++h) w[h] = spec.p0()[spec.pair_index(xo[0], h)];
  check_weights(w);
  for (std::size_t t = 1; t < xo.size(); ++t) {
    const Kernel& k = spec.kernel(t);
    for (std::size_t h2 = 0; h2 < nh; ++h2) {
      double s = 0.0;
      for (std::size_t h = 0; h < nh; ++h)
        s += k(spec.pair_index(xo[t], static_cast<Sym>(h2)),
               spec.pair_index(xo[t - 1], static_cast<Sym>(h))) *
             w[h];
      next[h2] = s;
    }
    w.swap(next);
    check_weights(w);
  }
  return w;
}

}  // namespace

double mmp_density(const MmpSpec& spec, std::span<const Sym> xo) {
  if (xo.size() != spec.length())
    throw std::invalid_argument("observed sequence length does not match spec");
  const auto w = forward_weights(spec, xo);
  double total = 0.0;
  for (double x : w) total += x;
  return total;
}

double mmp_theta(const MmpSpec& spec, std::size_t i) {
  return doeblin_coefficient(spec.kernel(i));
}

double mmp_eta_bound(const MmpSpec& spec, std::size_t i, std::size_t j) {
  if (!(1 <= i && i < j && j <= spec.length()))
    throw std::invalid_argument("mmp_eta_bound: need 1 <= i < j <= n");
  double prod = 1.0;
  for (std::size_t t = i; t < j; ++t) prod *= mmp_theta(spec, t);
  return prod;
}

ChainSpec observed_chain(const MmpSpec& spec) {
  if (spec.hid_alphabet().size() != 1)
    throw std::invalid_argument("observed_chain requires a single hidden state");
  std::vector<double> p0(spec.p0().weights().begin(), spec.p0().weights().end());
  std::vector<Kernel> kernels;
  const std::size_t m = spec.obs_alphabet().size();
  for (std::size_t i = 1; i < spec.length(); ++i) {
    const Kernel& k = spec.kernel(i);
    Matrix t(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) t(a, b) = k(a, b);
    kernels.push_back(Kernel::validated(t, 1e-6));
  }
  return ChainSpec::make(spec.obs_alphabet(), ProbVec::validated(std::move(p0), 1e-6),
                         std::move(kernels));
}

std::vector<double> hidden_posterior(const MmpSpec& spec,
                                     std::span<const Sym> xo_prefix) {
  if (xo_prefix.empty() || xo_prefix.size() > spec.length())
    throw std::invalid_argument("prefix length out of range");
  auto w = forward_weights(spec, xo_prefix);
  double total = 0.0;
  for (double x : w) total += x;
  if (total <= kConditioningFloor)
    throw NumericError("observed prefix has probability below the conditioning floor");
  for (double& x : w) x /= total;
  return w;
}

}  // namespace mixbound
