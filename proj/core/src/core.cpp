#include "mixbound/core.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

namespace mixbound {

Alphabet Alphabet::from_labels(std::vector<std::string> labels) {
  if (labels.empty()) throw SchemaError("alphabet must contain at least one symbol");
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second)
      throw SchemaError("alphabet labels must be unique; duplicate '" + l + "'");
  }
  return Alphabet(std::move(labels));
}

Alphabet Alphabet::of_size(std::size_t k) {
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
  return from_labels(std::move(labels));
}

std::optional<Sym> Alphabet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Sym>(i);
  return std::nullopt;
}

ProbVec ProbVec::validated(std::vector<double> weights, double tol) {
  if (weights.empty()) throw NumericError("distribution must not be empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw NumericError("distribution weights must be finite and nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol)
    throw NumericError("distribution sums to " + std::to_string(sum) +
                       ", outside tolerance " + std::to_string(tol));
  for (double& w : weights) w /= sum;
  return ProbVec(std::move(weights));
}

bool SignedVec::balanced(double tol) const {
  double sum = 0.0;
  for (double x : v) sum += x;
  return std::abs(sum) <= tol;
}

SignedVec operator-(const ProbVec& p, const ProbVec& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("distribution sizes differ");
  SignedVec d;
  d.v.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d.v[i] = p[i] - q[i];
  return d;
}

double tv_norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += std::abs(x);
  return 0.5 * s;
}

double tv_norm(const SignedVec& a) { return tv_norm(std::span<const double>(a.v)); }

double tv_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sizes differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

std::size_t hamming_distance(std::span<const Sym> x, std::span<const Sym> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("hamming_distance: sequence lengths differ");
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] != y[i]) ? 1 : 0;
  return d;
}

double HammingConfig::scale() const {
  switch (normalization) {
    case Normalization::PerCoordinate:
      return 1.0 / static_cast<double>(n);
    case Normalization::Root:
      return 1.0 / std::sqrt(static_cast<double>(n));
  }
  return 0.0;  // unreachable
}

double lipschitz_constant(std::span<const double> f, std::size_t sigma,
                          const HammingConfig& metric, std::size_t cap) {
  const std::size_t n = metric.n;
  if (n < 1 || sigma < 1) throw std::invalid_argument("empty domain");
  const std::size_t total = checked_pow(sigma, n, std::numeric_limits<std::size_t>::max());
  if (f.size() != total)
    throw std::invalid_argument("tabulated function has wrong size");
  if (n * total > cap)
    throw CapError("lipschitz_constant: n * sigma^n = " + std::to_string(n * total) +
                   " exceeds cap " + std::to_string(cap));

  std::vector<Sym> xs(n), ys(n);
  double sup = 0.0;
  for (std::size_t xi = 0; xi < total; ++xi) {
    decode_seq(xi, sigma, xs);
    for (std::size_t yi = xi + 1; yi < total; ++yi) {
      decode_seq(yi, sigma, ys);
      const std::size_t d = hamming_distance(xs, ys);
      const double ratio = std::abs(f[xi] - f[yi]) / static_cast<double>(d);
      if (ratio > sup) sup = ratio;
    }
  }
  return sup;
}

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base)
      throw CapError("state space size " + std::to_string(base) + "^" +
                     std::to_string(exp) + " exceeds cap " + std::to_string(cap));
    r *= base;
  }
  return r;
}

std::size_t seq_index(std::span<const Sym> x, std::size_t sigma) {
  std::size_t idx = 0;
  for (Sym s : x) idx = idx * sigma + s;
  return idx;
}

void decode_seq(std::size_t index, std::size_t sigma, std::span<Sym> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Sym>(index % sigma);
    index /= sigma;
  }
}

}  // namespace mixbound
