#include "mixbound/undirected.hpp"

#include <cmath>
#include <string>

namespace mixbound {

namespace {

// suffix[i-1][x] = sum over completions z_{i+1..n} of
// psi_i(x, z_{i+1}) * psi_{i+1}(z_{i+1}, z_{i+2}) * ... ; suffix at i = n is 1.
std::vector<std::vector<double>> suffix_accumulators(const UndirectedChainSpec& spec) {
  const std::size_t n = spec.length();
  const std::size_t m = spec.alphabet().size();
  std::vector<std::vector<double>> suf(n, std::vector<double>(m, 1.0));
  for (std::size_t i = n - 1; i >= 1; --i) {
    const Matrix& psi = spec.potential(i);
    for (std::size_t a = 0; a < m; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < m; ++b) s += psi(a, b) * suf[i][b];
      suf[i - 1][a] = s;
    }
  }
  return suf;
}

}  // namespace

UndirectedChainSpec UndirectedChainSpec::make(Alphabet alphabet,
                                              std::vector<Matrix> potentials) {
  const std::size_t m = alphabet.size();
  if (potentials.empty())
    throw NumericError("an undirected chain needs at least one potential");
  for (std::size_t t = 0; t < potentials.size(); ++t) {
    const Matrix& psi = potentials[t];
    if (psi.rows != m || psi.cols != m)
      throw NumericError("potential " + std::to_string(t + 1) +
                         " is not square over the alphabet");
    bool any_positive = false;
    for (double v : psi.a) {
      if (!std::isfinite(v) || v < 0.0)
        throw NumericError("potential " + std::to_string(t + 1) +
                           " has a negative or non-finite entry");
      any_positive |= v > 0.0;
    }
    if (!any_positive)
      throw NumericError("potential " + std::to_string(t + 1) +
                         " is identically zero; the field is not normalizable");
  }
  return UndirectedChainSpec(std::move(alphabet), std::move(potentials));
}

const Matrix& UndirectedChainSpec::potential(std::size_t i) const {
  if (i < 1 || i >= length())
    throw std::invalid_argument("potential index " + std::to_string(i) +
                                " out of range [1, " + std::to_string(length()) + ")");
  return potentials_[i - 1];
}

double field_density(const UndirectedChainSpec& spec, std::span<const Sym> x) {
  const std::size_t n = spec.length();
  const std::size_t m = spec.alphabet().size();
  if (x.size() != n)
    throw std::invalid_argument("sequence length does not match field length");

  // Z by prefix accumulation.
  std::vector<double> v(m, 1.0), next(m);
  for (std::size_t t = 1; t < n; ++t) {
    const Matrix& psi = spec.potential(t);
    for (std::size_t b = 0; b < m; ++b) {
      double s = 0.0;
      for (std::size_t a = 0; a < m; ++a) s += v[a] * psi(a, b);
      next[b] = s;
    }
    v.swap(next);
  }
  double z = 0.0;
  for (double s : v) z += s;
  if (z <= 0.0) throw NumericError("field normalizer Z is zero");

  double w = 1.0;
  for (std::size_t t = 1; t < n; ++t) w *= spec.potential(t)(x[t - 1], x[t]);
  return w / z;
}

ChainSpec derive_kernels(const UndirectedChainSpec& spec) {
  const std::size_t n = spec.length();
  const std::size_t m = spec.alphabet().size();
  const auto suf = suffix_accumulators(spec);

  double z = 0.0;
  for (std::size_t a = 0; a < m; ++a) z += suf[0][a];
  if (z <= 0.0) throw NumericError("field normalizer Z is zero");
  std::vector<double> p0(m);
  for (std::size_t a = 0; a < m; ++a) p0[a] = suf[0][a] / z;

  std::vector<Kernel> kernels;
  kernels.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const Matrix& psi = spec.potential(i);
    Matrix k(m, m);
    for (std::size_t y = 0; y < m; ++y) {
      double mass = 0.0;
      for (std::size_t x = 0; x < m; ++x) mass += psi(y, x) * suf[i][x];
      if (mass <= 0.0)
        throw NumericError("conditioning state (" + std::to_string(i) + ", '" +
                           spec.alphabet().label(static_cast<Sym>(y)) +
                           "') has zero total mass; kernel column undefined");
      for (std::size_t x = 0; x < m; ++x) k(x, y) = psi(y, x) * suf[i][x] / mass;
    }
    kernels.push_back(Kernel::validated(k, 1e-6));
  }
  return ChainSpec::make(spec.alphabet(), ProbVec::validated(std::move(p0), 1e-6),
                         std::move(kernels));
}

double undirected_theta_bound(const UndirectedChainSpec& spec, std::size_t i) {
  const Matrix& psi = spec.potential(i);
  double lo = psi.a.front(), hi = psi.a.front();
  for (double v : psi.a) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == 0.0)
    throw NumericError("potential " + std::to_string(i) +
                       " is identically zero; the ratio bound is undefined");
  if (lo == 0.0) return 1.0;
  return (hi - lo) / (hi + lo);
}

}  // namespace mixbound
