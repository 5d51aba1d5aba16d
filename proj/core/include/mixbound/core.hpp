#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mixbound {

/// Symbol of a finite alphabet, stored as its index.
using Sym = std::uint32_t;

// Error categories map to process exit codes (see README):
// SchemaError -> 2, CapError -> 3, NumericError -> 4.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input files carry decimal text: validate at 1e-9. Internal double
// arithmetic is compared at 1e-12.
inline constexpr double kInputTol = 1e-9;
inline constexpr double kInternalTol = 1e-12;

// Conditioning events below this probability have no usable conditional law.
inline constexpr double kConditioningFloor = 1e-15;

/// Ordered finite alphabet with unique labels; symbol <-> label is bijective.
class Alphabet {
 public:
  static Alphabet from_labels(std::vector<std::string> labels);
  /// Alphabet with labels "0", "1", ..., convenient for programmatic use.
  static Alphabet of_size(std::size_t k);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Sym s) const { return labels_.at(s); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Sym> index_of(std::string_view label) const;

  bool operator==(const Alphabet&) const = default;

 private:
  explicit Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {}
  std::vector<std::string> labels_;
};

/// Probability distribution over an alphabet: nonnegative, sums to one.
class ProbVec {
 public:
  /// Accepts weights whose sum deviates from 1 by at most `tol` and
  /// renormalizes; anything worse is rejected.
  static ProbVec validated(std::vector<double> weights, double tol = kInputTol);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> weights() const { return w_; }

 private:
  explicit ProbVec(std::vector<double> w) : w_(std::move(w)) {}
  std::vector<double> w_;
};

/// Signed measure on a finite index set. "Balanced" means the entries sum
/// to zero, the precondition of the contraction lemma.
struct SignedVec {
  std::vector<double> v;

  std::size_t size() const { return v.size(); }
  bool balanced(double tol = kInternalTol) const;
};

SignedVec operator-(const ProbVec& p, const ProbVec& q);

/// Total variation norm with the 1/2 factor: ||nu|| = (1/2) sum |nu(x)|.
/// The halved convention is used everywhere; no unhalved variant exists.
double tv_norm(const SignedVec& a);
double tv_norm(std::span<const double> a);

/// (1/2) * L1 distance between two vectors of equal length.
double tv_distance(std::span<const double> a, std::span<const double> b);

/// Unnormalized Hamming metric: number of disagreeing coordinates.
/// Throws on length mismatch.
std::size_t hamming_distance(std::span<const Sym> x, std::span<const Sym> y);

/// Sequence length plus the Lipschitz normalization under which tail bounds
/// are stated: f built as d(.,ref)*scale() has Lip(f) <= scale() under the
/// unnormalized Hamming metric.
struct HammingConfig {
  enum class Normalization { PerCoordinate, Root };

  std::size_t n = 1;
  Normalization normalization = Normalization::PerCoordinate;

  double scale() const;
};

inline constexpr std::size_t kDefaultLipschitzCap = 1u << 14;

/// Lipschitz constant of a function tabulated over Sigma^n (lexicographic,
/// first coordinate most significant) with respect to the unnormalized
/// Hamming metric: sup over x != y of |f(x)-f(y)| / d(x,y).
/// Guarded by n * sigma^n <= cap since it enumerates all pairs.
double lipschitz_constant(std::span<const double> f, std::size_t sigma,
                          const HammingConfig& metric,
                          std::size_t cap = kDefaultLipschitzCap);

/// Dense row-major matrix. Used for potentials and the mixing matrices.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), a(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

/// base^exp, throws CapError when the result would exceed `cap`.
std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap);

/// Index of a sequence in the dense lexicographic layout over Sigma^n
/// (first coordinate most significant).
std::size_t seq_index(std::span<const Sym> x, std::size_t sigma);

/// Inverse of seq_index.
void decode_seq(std::size_t index, std::size_t sigma, std::span<Sym> out);

}  // namespace mixbound
