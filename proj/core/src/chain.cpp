#include "mixbound/chain.hpp"

#include <algorithm>
#include <string>

namespace mixbound {

namespace {

void check_pair(std::size_t i, std::size_t j, std::size_t n) {
  if (!(1 <= i && i < j && j <= n))
    throw std::invalid_argument("index pair (" + std::to_string(i) + "," +
                                std::to_string(j) + ") must satisfy 1 <= i < j <= " +
                                std::to_string(n));
}

}  // namespace

ChainSpec ChainSpec::make(Alphabet alphabet, ProbVec p0, std::vector<Kernel> kernels) {
  const std::size_t m = alphabet.size();
  if (p0.size() != m) throw NumericError("p0 size does not match alphabet");
  std::vector<std::shared_ptr<const Kernel>> ks;
  ks.reserve(kernels.size());
  for (auto& k : kernels) {
    if (k.targets() != m || k.sources() != m)
      throw NumericError("chain kernels must be square over the alphabet");
    ks.push_back(std::make_shared<const Kernel>(std::move(k)));
  }
  return ChainSpec(std::move(alphabet), std::move(p0), std::move(ks));
}

ChainSpec ChainSpec::homogeneous(Alphabet alphabet, ProbVec p0, Kernel k,
                                 std::size_t n) {
  const std::size_t m = alphabet.size();
  if (p0.size() != m) throw NumericError("p0 size does not match alphabet");
  if (k.targets() != m || k.sources() != m)
    throw NumericError("chain kernels must be square over the alphabet");
  if (n < 1) throw NumericError("chain length must be >= 1");
  auto shared = std::make_shared<const Kernel>(std::move(k));
  std::vector<std::shared_ptr<const Kernel>> ks(n - 1, shared);
  return ChainSpec(std::move(alphabet), std::move(p0), std::move(ks));
}

const Kernel& ChainSpec::kernel(std::size_t i) const {
  if (i < 1 || i >= length())
    throw std::invalid_argument("kernel index " + std::to_string(i) +
                                " out of range [1, " + std::to_string(length()) + ")");
  return *kernels_[i - 1];
}

double chain_density(const ChainSpec& spec, std::span<const Sym> x) {
  if (x.size() != spec.length())
    throw std::invalid_argument("sequence length does not match chain length");
  double p = spec.p0()[x[0]];
  for (std::size_t t = 1; t < x.size(); ++t) p = spec.kernel(t)(x[t], x[t - 1]) * p;
  return p;
}

double chain_theta(const ChainSpec& spec, std::size_t i) {
  return doeblin_coefficient(spec.kernel(i));
}

double chain_eta_bound(const ChainSpec& spec, std::size_t i, std::size_t j) {
  check_pair(i, j, spec.length());
  double prod = 1.0;
  for (std::size_t t = i; t < j; ++t) prod *= chain_theta(spec, t);
  return prod;
}

double chain_eta_exact(const ChainSpec& spec, std::size_t i, std::size_t j) {
  check_pair(i, j, spec.length());
  const Kernel& ki = spec.kernel(i);
  const std::size_t m = spec.alphabet().size();
  double worst = 0.0;
  for (std::size_t w = 0; w < m; ++w) {
    for (std::size_t w2 = w + 1; w2 < m; ++w2) {
      SignedVec h;
      h.v.resize(m);
      const auto cw = ki.column(w);
      const auto cw2 = ki.column(w2);
      for (std::size_t t = 0; t < m; ++t) h.v[t] = cw[t] - cw2[t];
      for (std::size_t t = i + 1; t < j; ++t) h = contract(spec.kernel(t), h);
      worst = std::max(worst, tv_norm(h));
    }
  }
  return worst;
}

}  // namespace mixbound
