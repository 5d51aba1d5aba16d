#include "mixbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixbound/parallel.hpp"

namespace mixbound {

JointTable enumerate_joint(const ProcessSpec& spec, std::size_t max_entries) {
  JointTable table;
  table.alphabet = process_alphabet(spec);
  table.n = process_length(spec);
  const std::size_t m = table.alphabet.size();
  const std::size_t total = checked_pow(m, table.n, max_entries);
  table.p.assign(total, 0.0);

  parallel_blocks(total, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<Sym> x(table.n);
    for (std::size_t idx = begin; idx < end; ++idx) {
      decode_seq(idx, m, x);
      table.p[idx] = process_density(spec, x);
    }
  });
  return table;
}

namespace {

struct BlockResult {
  double value = 0.0;
  bool any_pair = false;
  std::size_t excluded = 0;
};

}  // namespace

EtaExactResult exact_eta(const JointTable& table, std::size_t i, std::size_t j) {
  const std::size_t n = table.n;
  if (!(1 <= i && i < j && j <= n))
    throw std::invalid_argument("exact_eta: need 1 <= i < j <= n");
  const std::size_t m = table.sigma();

  std::size_t prefixes = 1;
  for (std::size_t k = 0; k + 1 < i; ++k) prefixes *= m;  // m^(i-1)
  std::size_t mid = 1;
  for (std::size_t k = i; k + 1 < j; ++k) mid *= m;       // m^(j-1-i)
  std::size_t suffix = 1;
  for (std::size_t k = j; k <= n; ++k) suffix *= m;       // m^(n-j+1)

  const std::size_t blocks = parallel_block_count(prefixes);
  std::vector<BlockResult> results(std::max<std::size_t>(blocks, 1));

  parallel_blocks(prefixes, [&](std::size_t block, std::size_t begin, std::size_t end) {
    BlockResult local;
    std::vector<std::vector<double>> laws(m, std::vector<double>(suffix));
    std::vector<char> admissible(m);
    for (std::size_t y = begin; y < end; ++y) {
      for (std::size_t w = 0; w < m; ++w) {
        auto& law = laws[w];
        std::fill(law.begin(), law.end(), 0.0);
        const std::size_t base = (y * m + w) * mid;
        double mass = 0.0;
        for (std::size_t z = 0; z < mid; ++z) {
          const double* row = table.p.data() + (base + z) * suffix;
          for (std::size_t s = 0; s < suffix; ++s) law[s] += row[s];
        }
        for (double v : law) mass += v;
        admissible[w] = mass > kConditioningFloor;
        if (!admissible[w]) {
          ++local.excluded;
          continue;
        }
        for (double& v : law) v /= mass;
      }
      for (std::size_t w = 0; w < m; ++w) {
        if (!admissible[w]) continue;
        for (std::size_t w2 = w + 1; w2 < m; ++w2) {
          if (!admissible[w2]) continue;
          local.any_pair = true;
          local.value = std::max(local.value, tv_distance(laws[w], laws[w2]));
        }
      }
    }
    results[block] = local;
  });

  EtaExactResult out;
  bool any = false;
  for (const auto& r : results) {
    out.value = std::max(out.value, r.value);
    out.excluded += r.excluded;
    any |= r.any_pair;
  }
  out.vacuous = !any;
  if (out.vacuous) out.value = 0.0;
  return out;
}

ProbVec conditional_law(const JointTable& table, std::span<const Sym> prefix,
                        std::span<const std::size_t> targets) {
  const std::size_t n = table.n;
  const std::size_t m = table.sigma();
  if (prefix.size() > n) throw std::invalid_argument("prefix longer than sequences");
  for (std::size_t k = 1; k < targets.size(); ++k)
    if (targets[k] <= targets[k - 1])
      throw std::invalid_argument("targets must be strictly increasing");
  for (std::size_t t : targets)
    if (t < 1 || t > n) throw std::invalid_argument("target index out of range");

  std::size_t out_size = 1;
  for (std::size_t k = 0; k < targets.size(); ++k) out_size *= m;
  std::vector<double> law(out_size, 0.0);

  std::vector<Sym> x(n);
  double mass = 0.0;
  for (std::size_t idx = 0; idx < table.p.size(); ++idx) {
    decode_seq(idx, m, x);
    bool consistent = true;
    for (std::size_t k = 0; k < prefix.size(); ++k)
      if (x[k] != prefix[k]) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    mass += table.p[idx];
    std::size_t key = 0;
    for (std::size_t t : targets) key = key * m + x[t - 1];
    law[key] += table.p[idx];
  }
  if (mass <= kConditioningFloor)
    throw NumericError("conditioning event has probability below the floor");
  for (double& v : law) v /= mass;
  return ProbVec::validated(std::move(law), 1e-6);
}

double table_mean(const JointTable& table, std::span<const double> f) {
  if (f.size() != table.p.size())
    throw std::invalid_argument("statistic table size mismatch");
  double mean = 0.0;
  for (std::size_t idx = 0; idx < f.size(); ++idx) mean += table.p[idx] * f[idx];
  return mean;
}

}  // namespace mixbound
