// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Tolerances and runtime ceilings are pinned here, not configurable.
// Usage: acceptance [criterion-number]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "generators.hpp"
#include "mixbound/commands.hpp"
#include "mixbound/harness.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/report.hpp"

using namespace mixbound;

namespace {

struct Criterion {
  int number;
  const char* name;
  double time_limit_s;
  std::function<bool(std::string&)> body;
};

bool expect(bool cond, std::string& detail, const std::string& msg) {
  if (!cond && detail.empty()) detail = msg;
  return cond;
}

std::string fmt_pair(std::size_t i, std::size_t j, double a, double b) {
  std::ostringstream s;
  s << "(i=" << i << ",j=" << j << "): " << a << " vs " << b;
  return s.str();
}

// 1. chain dominance and propagation exactness on 200 seeded chains
bool crit_chain(std::string& detail) {
  std::mt19937_64 rng(1001);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = gen::pick(rng, 2, 6);
    const std::size_t m = gen::pick(rng, 2, 3);
    const auto spec = gen::chain(rng, n, m);
    const auto table = enumerate_joint(ProcessSpec(spec));
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        const double oracle = exact_eta(table, i, j).value;
        const double bound = chain_eta_bound(spec, i, j);
        const double prop = chain_eta_exact(spec, i, j);
        if (!expect(oracle <= bound + 1e-12, detail,
                    "dominance " + fmt_pair(i, j, oracle, bound)))
          return false;
        if (!expect(std::abs(prop - oracle) <= 1e-10, detail,
                    "propagation " + fmt_pair(i, j, prop, oracle)))
          return false;
      }
  }
  return true;
}

// 2. binary chains: propagation equals the theta product to 1e-12
bool crit_binary(std::string& detail) {
  std::mt19937_64 rng(1002);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = gen::pick(rng, 2, 8);
    const auto spec = gen::chain(rng, n, 2);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        const double exact = chain_eta_exact(spec, i, j);
        const double bound = chain_eta_bound(spec, i, j);
        if (!expect(std::abs(exact - bound) <= 1e-12, detail,
                    "tightness " + fmt_pair(i, j, exact, bound)))
          return false;
      }
  }
  return true;
}

// 3. potential chains: derived theta below the ratio bound, joint matches
bool crit_undirected(std::string& detail) {
  std::mt19937_64 rng(1003);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = gen::pick(rng, 2, 6);
    const std::size_t m = gen::pick(rng, 2, 4);
    const auto field = gen::field(rng, n, m);
    const auto derived = derive_kernels(field);
    for (std::size_t i = 1; i < n; ++i) {
      const double theta = chain_theta(derived, i);
      const double ratio = undirected_theta_bound(field, i);
      if (!expect(theta <= ratio + 1e-12, detail,
                  "theta bound " + fmt_pair(i, i + 1, theta, ratio)))
        return false;
    }
    const auto ta = enumerate_joint(ProcessSpec(field));
    const auto tb = enumerate_joint(ProcessSpec(derived));
    const double tv = tv_distance(ta.p, tb.p);
    if (!expect(tv <= 1e-10, detail, "joint TV " + std::to_string(tv))) return false;
  }
  return true;
}

// 4. tree hierarchy, path-tree reduction, and the worked binary tree
bool crit_tree(std::string& detail) {
  std::mt19937_64 rng(1004);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = gen::pick(rng, 2, 7);
    const std::size_t m = gen::pick(rng, 2, 3);
    const auto spec = gen::tree(rng, n, m);
    const auto table = enumerate_joint(ProcessSpec(spec));
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        const double oracle = exact_eta(table, i, j).value;
        const double levels =
            tree_eta_bound_levels(spec, static_cast<int>(i), static_cast<int>(j));
        const double simple =
            tree_eta_bound_simple(spec, static_cast<int>(i), static_cast<int>(j));
        if (!expect(oracle <= levels + 1e-12, detail,
                    "oracle<=levels " + fmt_pair(i, j, oracle, levels)))
          return false;
        if (!expect(levels <= simple + 1e-12, detail,
                    "levels<=simple " + fmt_pair(i, j, levels, simple)))
          return false;
      }
  }

  // path trees reproduce the chain module exactly
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = gen::pick(rng, 2, 6);
    const auto chain = gen::chain(rng, n, 3);
    TreeTopology t;
    t.n = n;
    std::vector<Kernel> ks;
    for (std::size_t i = 1; i < n; ++i) {
      t.edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
      ks.push_back(chain.kernel(i));
    }
    const auto tree = TreeSpec::make(t, chain.alphabet(), chain.p0(), std::move(ks));
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        const double a =
            tree_eta_bound_levels(tree, static_cast<int>(i), static_cast<int>(j));
        const double b = chain_eta_bound(chain, i, j);
        if (!expect(a == b, detail, "path reduction " + fmt_pair(i, j, a, b)))
          return false;
      }
    const auto ta = enumerate_joint(ProcessSpec(chain));
    const auto tb = enumerate_joint(ProcessSpec(tree));
    if (!expect(ta.p == tb.p, detail, "path tables differ")) return false;
  }

  // worked binary tree values
  TreeTopology t;
  t.n = 7;
  t.edges = {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {3, 7}};
  Matrix flip(2, 2);
  flip(0, 0) = flip(1, 1) = 0.75;
  flip(1, 0) = flip(0, 1) = 0.25;
  std::vector<Kernel> ks(6, Kernel::validated(flip));
  const auto worked =
      TreeSpec::make(t, Alphabet::of_size(2), ProbVec::validated({0.5, 0.5}), std::move(ks));
  if (!expect(tree_eta_bound_levels(worked, 1, 5) == 0.703125, detail,
              "worked level bound"))
    return false;
  if (!expect(tree_eta_bound_simple(worked, 1, 5) == 0.9375, detail,
              "worked simple bound"))
    return false;
  return true;
}

// 5. MMP dominance and the degenerate-hidden bit match
bool crit_mmp(std::string& detail) {
  std::mt19937_64 rng(1005);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = gen::pick(rng, 2, 5);
    const auto spec = gen::mmp(rng, n, 2, 2);
    const auto table = enumerate_joint(ProcessSpec(spec));
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        const double oracle = exact_eta(table, i, j).value;
        const double bound = mmp_eta_bound(spec, i, j);
        if (!expect(oracle <= bound + 1e-12, detail,
                    "mmp dominance " + fmt_pair(i, j, oracle, bound)))
          return false;
      }
  }

  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = gen::pick(rng, 2, 5);
    const std::size_t m = gen::pick(rng, 2, 3);
    const auto chain = gen::chain(rng, n, m);
    std::vector<Kernel> pair_kernels;
    for (std::size_t i = 1; i < n; ++i) pair_kernels.push_back(chain.kernel(i));
    const auto mmp = MmpSpec::make(chain.alphabet(), Alphabet::of_size(1), chain.p0(),
                                   std::move(pair_kernels));
    std::vector<Sym> x(n);
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i) count *= m;
    for (std::size_t idx = 0; idx < count; ++idx) {
      decode_seq(idx, m, x);
      if (!expect(mmp_density(mmp, x) == chain_density(chain, x), detail,
                  "density bit mismatch"))
        return false;
    }
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j)
        if (!expect(mmp_eta_bound(mmp, i, j) == chain_eta_bound(chain, i, j), detail,
                    "bound bit mismatch"))
          return false;
  }
  return true;
}

// 6. alpha properties, pairwise tensorization, k-fold corollary
bool crit_alpha(std::string& detail) {
  std::mt19937_64 rng(1006);
  for (int rep = 0; rep < 10000; ++rep) {
    const std::size_t k = gen::pick(rng, 1, 6);
    std::vector<double> xs(k);
    for (double& x : xs) x = gen::uniform(rng, 0.0, 1.0);
    std::vector<double> shuffled = xs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const double base = alpha(xs);
    if (!expect(alpha(shuffled) == base, detail, "alpha symmetry")) return false;
    if (!expect(base >= 0.0 && base <= 1.0, detail, "alpha range")) return false;
    std::vector<double> bumped = xs;
    const std::size_t at = gen::pick(rng, 0, k - 1);
    bumped[at] = std::min(1.0, bumped[at] + 0.25);
    if (!expect(alpha(bumped) >= base - 1e-15, detail, "alpha monotone")) return false;
    std::vector<double> subset(xs.begin(), xs.begin() + gen::pick(rng, 0, k));
    if (!expect(alpha(subset) <= base + 1e-15, detail, "alpha subset")) return false;
    double sum = 0.0;
    for (double x : xs) sum += x;
    if (!expect(base <= sum + 1e-15, detail, "alpha union bound")) return false;
    const double x = xs[0];
    std::vector<double> equal(k, x);
    if (!expect(std::abs(alpha(equal) - (1.0 - std::pow(1.0 - x, static_cast<double>(k)))) <=
                    1e-12,
                detail, "alpha closed form"))
      return false;
    std::vector<double> with_one = xs;
    with_one.push_back(1.0);
    if (!expect(alpha(with_one) == 1.0, detail, "alpha absorbs 1")) return false;
  }

  for (int rep = 0; rep < 10000; ++rep) {
    const std::size_t mx = gen::pick(rng, 1, 4);
    const std::size_t my = gen::pick(rng, 1, 4);
    const auto p = gen::prob(rng, mx), p2 = gen::prob(rng, mx);
    const auto q = gen::prob(rng, my), q2 = gen::prob(rng, my);
    std::vector<double> d(mx * my);
    for (std::size_t a = 0; a < mx; ++a)
      for (std::size_t b = 0; b < my; ++b) d[a * my + b] = p[a] * q[b] - p2[a] * q2[b];
    const double lhs = tv_norm(std::span<const double>(d));
    const double rhs = product_tv_bound(tv_norm(p - p2), tv_norm(q - q2));
    if (!expect(lhs <= rhs + 1e-12, detail,
                "tensorization " + std::to_string(lhs) + " vs " + std::to_string(rhs)))
      return false;
  }

  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t k = gen::pick(rng, 1, 3);
    const std::size_t m = gen::pick(rng, 2, 3);
    std::vector<ProbVec> us, vs;
    for (std::size_t i = 0; i < k; ++i) {
      us.push_back(gen::prob(rng, m));
      vs.push_back(gen::prob(rng, m));
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= m;
    std::vector<double> diff(total);
    std::vector<Sym> x(k);
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode_seq(idx, m, x);
      double pu = 1.0, pv = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        pu *= us[i][x[i]];
        pv *= vs[i][x[i]];
      }
      diff[idx] = pu - pv;
    }
    std::vector<double> coord;
    for (std::size_t i = 0; i < k; ++i) coord.push_back(tv_norm(us[i] - vs[i]));
    if (!expect(tv_norm(std::span<const double>(diff)) <= alpha(coord) + 1e-12, detail,
                "k-fold tensorization"))
      return false;
  }
  return true;
}

// 7. power iteration vs closed form; Gershgorin; floor bound
bool crit_norms(std::string& detail) {
  std::mt19937_64 rng(1007);
  for (int rep = 0; rep < 1000; ++rep) {
    const double eta = gen::uniform(rng, 0.0, 1.0);
    EtaMatrix e(2);
    e.set(1, 2, eta, EtaProvenance::Bound);
    const auto m = build_matrices(e);
    const auto r = gamma_2_norm(m, 1e-12);
    const double g = std::sqrt(eta);
    const double tr = 2.0 + g * g;
    const double closed = std::sqrt((tr + std::sqrt(tr * tr - 4.0)) / 2.0);
    if (!expect(std::abs(r.value - closed) <= 1e-8, detail,
                "power vs closed " + std::to_string(r.value) + " vs " +
                    std::to_string(closed)))
      return false;
    if (!expect(r.value <= r.gershgorin_upper + 1e-10, detail, "gershgorin order"))
      return false;
  }
  for (std::size_t L = 1; L <= 10; ++L)
    for (std::size_t k = L; k <= 1000; ++k)
      if (!expect(static_cast<double>(k / L) >=
                      static_cast<double>(k) / static_cast<double>(2 * L - 1),
                  detail, "floor bound at L=" + std::to_string(L)))
        return false;
  return true;
}

// 8. Monte Carlo envelope soundness at scale
bool crit_montecarlo(std::string& detail) {
  // product measure, n = 20, per-coordinate statistic, product envelope
  {
    Matrix k(2, 2, 0.5);
    SampleRun run;
    run.spec = ChainSpec::homogeneous(Alphabet::of_size(2),
                                      ProbVec::validated({0.5, 0.5}),
                                      Kernel::validated(k), 20);
    run.seed = 2008;
    run.count = 100000;
    run.f_kind = FKind::HammingOverN;
    run.reference.assign(20, 0);
    std::vector<double> grid;
    for (int i = 1; i <= 40; ++i) grid.push_back(0.0125 * i);
    const auto report =
        verify_envelope(run, EnvelopeKind::McDiarmid, MixingInputs{20, {}, {}, {}}, grid);
    for (const auto& pt : report.points)
      if (!expect(pt.pass, detail,
                  "product envelope violated at t=" + std::to_string(pt.t)))
        return false;
  }

  // theta = 0.7 chain, n = 50, root statistic, matrix-norm envelope
  {
    Matrix k(2, 2);
    k(0, 0) = k(1, 1) = 0.85;
    k(1, 0) = k(0, 1) = 0.15;
    ChainSpec spec = ChainSpec::homogeneous(
        Alphabet::of_size(2), ProbVec::validated({0.5, 0.5}), Kernel::validated(k), 50);
    double delta_inf = 0.0;
    {
      EtaMatrix bound(50);
      for (std::size_t i = 1; i < 50; ++i)
        for (std::size_t j = i + 1; j <= 50; ++j)
          bound.set(i, j, chain_eta_bound(spec, i, j), EtaProvenance::Bound);
      delta_inf = delta_inf_norm(build_matrices(bound));
    }
    SampleRun run;
    run.spec = std::move(spec);
    run.seed = 2009;
    run.count = 100000;
    run.f_kind = FKind::HammingOverSqrtN;
    run.reference.assign(50, 0);
    std::vector<double> grid;
    for (int i = 1; i <= 40; ++i) grid.push_back(0.1 * i);
    const auto report = verify_envelope(run, EnvelopeKind::KontRam,
                                        MixingInputs{50, {}, {}, delta_inf}, grid);
    for (const auto& pt : report.points)
      if (!expect(pt.pass, detail,
                  "mixing envelope violated at t=" + std::to_string(pt.t)))
        return false;
  }
  return true;
}

// 9. CLI contract: diagnostics and byte-stable reports
bool crit_cli(std::string& detail) {
  const char* env = std::getenv("MIXBOUND_CLI");
  if (!expect(env != nullptr, detail, "MIXBOUND_CLI not set")) return false;
  const std::string cli = env;

  auto write_file = [](const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  auto run = [&](const std::string& args, std::string* out, std::string* err) {
    const std::string cmd = cli + " " + args + " >/tmp/mixbound_acc_out.txt 2>/tmp/mixbound_acc_err.txt";
    const int status = std::system(cmd.c_str());
    if (out) *out = slurp("/tmp/mixbound_acc_out.txt");
    if (err) *err = slurp("/tmp/mixbound_acc_err.txt");
    return WEXITSTATUS(status);
  };

  // numeric-invalid column: exit 4, diagnostic names kernel and column
  write_file("/tmp/mixbound_acc_bad.json", R"({
    "format_version": "1",
    "type": "chain",
    "alphabet": ["a", "b"],
    "p0": [0.5, 0.5],
    "kernels": [
      [[0.75, 0.25], [0.25, 0.75]],
      [[0.75, 0.25], [0.5, 0.48]]
    ]
  })");
  std::string err;
  const int code = run("analyze /tmp/mixbound_acc_bad.json", nullptr, &err);
  if (!expect(code == 4, detail, "expected exit 4, got " + std::to_string(code)))
    return false;
  if (!expect(err.find("kernel[2]") != std::string::npos, detail,
              "diagnostic lacks the kernel index: " + err))
    return false;
  if (!expect(err.find("'b'") != std::string::npos, detail,
              "diagnostic lacks the column label: " + err))
    return false;

  // byte-stable report round trip
  write_file("/tmp/mixbound_acc_chain.json", R"({
    "format_version": "1",
    "type": "chain",
    "alphabet": ["a", "b"],
    "p0": [0.5, 0.5],
    "kernels": [{"kernel": [[0.75, 0.25], [0.25, 0.75]], "repeat": 2}]
  })");
  std::string out1, out2;
  if (!expect(run("analyze /tmp/mixbound_acc_chain.json --format machine --no-timing",
                  &out1, nullptr) == 0,
              detail, "analyze failed"))
    return false;
  if (!expect(run("analyze /tmp/mixbound_acc_chain.json --format machine --no-timing",
                  &out2, nullptr) == 0,
              detail, "analyze failed"))
    return false;
  if (!expect(out1 == out2, detail, "two runs differ")) return false;
  const auto reparsed = nlohmann::ordered_json::parse(out1);
  if (!expect(reparsed.dump(2) + "\n" == out1, detail, "parse/dump not byte-stable"))
    return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "chain dominance & propagation exactness", 60.0, crit_chain},
      {2, "binary-chain tightness", 5.0, crit_binary},
      {3, "undirected ratio bound & density match", 60.0, crit_undirected},
      {4, "tree hierarchy & worked values", 120.0, crit_tree},
      {5, "MMP dominance & degenerate reduction", 120.0, crit_mmp},
      {6, "alpha & tensorization suites", 10.0, crit_alpha},
      {7, "norm machinery & floor bound", 5.0, crit_norms},
      {8, "Monte Carlo envelope soundness", 120.0, crit_montecarlo},
      {9, "CLI contract", 30.0, crit_cli},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.number != only) continue;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.time_limit_s) {
      ok = false;
      if (detail.empty())
        detail = "runtime " + std::to_string(elapsed) + "s exceeds " +
                 std::to_string(c.time_limit_s) + "s";
    }
    std::printf("criterion %d (%s): %s (%.2fs)\n", c.number, c.name,
                ok ? "PASS" : "FAIL", elapsed);
    if (!ok) {
      ++failures;
      if (!detail.empty()) std::printf("  -> %s\n", detail.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}
