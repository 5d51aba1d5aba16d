#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mixbound/mixing.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/process_spec.hpp"

namespace mixbound {

/// Which statistic a sampling run evaluates: Hamming distance to a fixed
/// reference, scaled to meet the Lipschitz hypothesis of the envelope
/// under test (1/n for the product-measure bound, 1/sqrt(n) for the
/// mixing-matrix bound).
enum class FKind { HammingOverN, HammingOverSqrtN };

struct SampleRun {
  ProcessSpec spec;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  FKind f_kind = FKind::HammingOverN;
  std::vector<Sym> reference;  // length n
};

/// Ancestral sampling. Each trajectory derives its own stream from
/// (seed, trajectory index), so parallel generation is order-independent
/// and the output is a deterministic function of (seed, count, spec).
/// For an MMP the hidden states are sampled and discarded.
std::vector<std::vector<Sym>> sample(const ProcessSpec& spec, std::uint64_t seed,
                                     std::size_t count);

enum class EnvelopeKind { McDiarmid, Marton, Samson, KontRam };

/// Mixing-side inputs for the envelope under test.
struct MixingInputs {
  std::size_t n = 1;
  std::optional<double> theta;      // Marton
  std::optional<double> gamma2;     // Samson
  std::optional<double> delta_inf;  // KontRam
};

struct TailPoint {
  double t = 0.0;
  double empirical = 0.0;
  double envelope = 0.0;
  double slack = 0.0;  // 3 sigma binomial, worst-case parameter = min(envelope, 1)
  bool pass = true;
};

struct TailReport {
  std::vector<TailPoint> points;
  bool all_pass = true;
  double mean = 0.0;      // center used for |f - mean| > t
  bool exact_mean = false;  // true when the enumerated mean was available
  std::size_t count = 0;
};

/// Samples the run, centers f at the exact enumerated mean when the state
/// space is under the oracle cap (empirical mean otherwise), and compares
/// empirical exceedance frequencies against the envelope plus binomial
/// slack at every grid point. The envelope's Lipschitz hypothesis must
/// match the run's f_kind.
TailReport verify_envelope(const SampleRun& run, EnvelopeKind kind,
                           const MixingInputs& inputs, std::span<const double> t_grid,
                           std::size_t oracle_cap = kDefaultOracleCap);

}  // namespace mixbound
