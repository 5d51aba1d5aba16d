#include "mixbound/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mixbound/parallel.hpp"

namespace mixbound {

namespace {

// splitmix64; decorrelates the per-trajectory streams derived from
// (seed, trajectory index).
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(mix64(seed ^ mix64(index + 1)));
}

Sym draw(std::span<const double> weights, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  double acc = 0.0;
  for (std::size_t s = 0; s + 1 < weights.size(); ++s) {
    acc += weights[s];
    if (u < acc) return static_cast<Sym>(s);
  }
  return static_cast<Sym>(weights.size() - 1);
}

struct Sampler {
  std::uint64_t seed;

  std::vector<Sym> operator()(const ChainSpec& s, std::uint64_t idx) const {
    auto rng = stream_for(seed, idx);
    std::vector<Sym> x(s.length());
    x[0] = draw(s.p0().weights(), rng);
    for (std::size_t t = 1; t < s.length(); ++t)
      x[t] = draw(s.kernel(t).column(x[t - 1]), rng);
    return x;
  }

  std::vector<Sym> operator()(const UndirectedChainSpec&, std::uint64_t) const {
    throw std::logic_error("undirected specs are sampled through derived kernels");
  }

  std::vector<Sym> operator()(const TreeSpec& s, std::uint64_t idx) const {
    auto rng = stream_for(seed, idx);
    std::vector<Sym> x(s.length());
    x[0] = draw(s.p0().weights(), rng);
    for (int v = 2; v <= static_cast<int>(s.length()); ++v)
      x[v - 1] = draw(s.kernel_to(v).column(x[s.parent_of(v) - 1]), rng);
    return x;
  }

  std::vector<Sym> operator()(const MmpSpec& s, std::uint64_t idx) const {
    auto rng = stream_for(seed, idx);
    const std::size_t nh = s.hid_alphabet().size();
    std::vector<Sym> xo(s.length());
    std::size_t pair = draw(s.p0().weights(), rng);
    xo[0] = static_cast<Sym>(pair / nh);
    for (std::size_t t = 1; t < s.length(); ++t) {
      pair = draw(s.kernel(t).column(pair), rng);
      xo[t] = static_cast<Sym>(pair / nh);
    }
    return xo;
  }
};

}  // namespace

std::vector<std::vector<Sym>> sample(const ProcessSpec& spec, std::uint64_t seed,
                                     std::size_t count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");

  // Chains induced by potentials are sampled via their derived kernels.
  if (const auto* und = std::get_if<UndirectedChainSpec>(&spec)) {
    ProcessSpec derived = derive_kernels(*und);
    return sample(derived, seed, count);
  }

  std::vector<std::vector<Sym>> out(count);
  Sampler sampler{seed};
  parallel_blocks(count, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = std::visit([&](const auto& s) { return sampler(s, i); }, spec);
  });
  return out;
}

TailReport verify_envelope(const SampleRun& run, EnvelopeKind kind,
                           const MixingInputs& inputs, std::span<const double> t_grid,
                           std::size_t oracle_cap) {
  const std::size_t n = process_length(run.spec);
  if (run.reference.size() != n)
    throw std::invalid_argument("reference length does not match the process");

  HammingConfig cfg{n, run.f_kind == FKind::HammingOverN
                           ? HammingConfig::Normalization::PerCoordinate
                           : HammingConfig::Normalization::Root};
  const double scale = cfg.scale();

  // Lipschitz hypothesis of the envelope must match the statistic.
  switch (kind) {
    case EnvelopeKind::McDiarmid:
    case EnvelopeKind::Marton:
      if (run.f_kind != FKind::HammingOverN)
        throw std::invalid_argument(
            "hypothesis mismatch: this envelope assumes Lip(f) <= 1/n");
      break;
    case EnvelopeKind::KontRam:
      if (run.f_kind != FKind::HammingOverSqrtN)
        throw std::invalid_argument(
            "hypothesis mismatch: this envelope assumes Lip(f) <= 1/sqrt(n)");
      break;
    case EnvelopeKind::Samson:
      throw std::invalid_argument(
          "hypothesis mismatch: the convex-Lipschitz envelope does not cover "
          "Hamming statistics");
  }

  auto envelope_at = [&](double t) {
    switch (kind) {
      case EnvelopeKind::McDiarmid:
        return envelope_mcdiarmid(t, inputs.n);
      case EnvelopeKind::Marton:
        if (!inputs.theta) throw std::invalid_argument("Marton envelope needs theta");
        return envelope_marton(t, inputs.n, *inputs.theta);
      case EnvelopeKind::KontRam:
        if (!inputs.delta_inf)
          throw std::invalid_argument("this envelope needs ||Delta||_inf");
        return envelope_kontram(t, *inputs.delta_inf);
      case EnvelopeKind::Samson:
        break;
    }
    throw std::logic_error("unreachable");
  };

  const auto trajectories = sample(run.spec, run.seed, run.count);
  std::vector<double> fvals(trajectories.size());
  for (std::size_t i = 0; i < trajectories.size(); ++i)
    fvals[i] = scale * static_cast<double>(hamming_distance(trajectories[i], run.reference));

  TailReport report;
  report.count = run.count;

  // Exact mean when the joint is enumerable; the empirical mean otherwise.
  report.exact_mean = false;
  try {
    const JointTable table = enumerate_joint(run.spec, oracle_cap);
    const std::size_t m = table.sigma();
    std::vector<double> f(table.p.size());
    std::vector<Sym> x(n);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
      decode_seq(idx, m, x);
      f[idx] = scale * static_cast<double>(hamming_distance(x, run.reference));
    }
    report.mean = table_mean(table, f);
    report.exact_mean = true;
  } catch (const CapError&) {
    double sum = 0.0;
    for (double v : fvals) sum += v;
    report.mean = sum / static_cast<double>(fvals.size());
  }

  for (double t : t_grid) {
    TailPoint pt;
    pt.t = t;
    std::size_t exceed = 0;
    for (double v : fvals)
      if (std::abs(v - report.mean) > t) ++exceed;
    pt.empirical = static_cast<double>(exceed) / static_cast<double>(fvals.size());
    pt.envelope = envelope_at(t);
    const double p = std::min(pt.envelope, 1.0);
    pt.slack = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(fvals.size()));
    pt.pass = pt.empirical <= pt.envelope + pt.slack;
    report.all_pass = report.all_pass && pt.pass;
    report.points.push_back(pt);
  }
  return report;
}

}  // namespace mixbound
