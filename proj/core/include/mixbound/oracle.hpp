#pragma once

#include <span>
#include <vector>

#include "mixbound/core.hpp"
#include "mixbound/process_spec.hpp"

namespace mixbound {

inline constexpr std::size_t kDefaultOracleCap = 2'000'000;

/// Dense joint distribution over Sigma^n, lexicographic order (first
/// coordinate most significant). Ground truth for every bound in the
/// library, built by exhaustive evaluation of the density operations.
struct JointTable {
  Alphabet alphabet{Alphabet::of_size(1)};
  std::size_t n = 0;
  std::vector<double> p;

  std::size_t sigma() const { return alphabet.size(); }
  double at(std::span<const Sym> x) const { return p[seq_index(x, sigma())]; }
};

/// Materializes the joint table by evaluating the family's density at
/// every sequence. Throws CapError when sigma^n exceeds max_entries.
JointTable enumerate_joint(const ProcessSpec& spec,
                           std::size_t max_entries = kDefaultOracleCap);

struct EtaExactResult {
  double value = 0.0;
  /// True when no admissible conditioning triple exists.
  bool vacuous = false;
  /// Conditioning events (y, w) skipped for having probability below the
  /// floor; the supremum quantifies only over the rest.
  std::size_t excluded = 0;
};

/// Exact eta_bar_{ij} from the definition: the largest TV distance between
/// conditional suffix laws under prefixes differing in coordinate i only.
/// The prefix space is swept in parallel blocks with a deterministic
/// max-merge.
EtaExactResult exact_eta(const JointTable& table, std::size_t i, std::size_t j);

/// Law of the target coordinates given a prefix assignment, marginalized
/// over everything else. Targets are 1-based, strictly increasing; a target
/// inside the prefix is reproduced as a point mass. Throws NumericError
/// when the conditioning event has probability below the floor.
ProbVec conditional_law(const JointTable& table, std::span<const Sym> prefix,
                        std::span<const std::size_t> targets);

/// Mean of a tabulated statistic under the joint table.
double table_mean(const JointTable& table, std::span<const double> f);

}  // namespace mixbound
