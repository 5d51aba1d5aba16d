#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "mixbound/core.hpp"

using namespace mixbound;

TEST_CASE("tv_norm basic values") {
  const auto p = ProbVec::validated({0.5, 0.5});
  CHECK(tv_norm(p - p) == 0.0);

  // point masses on disjoint symbols
  const auto d0 = ProbVec::validated({1.0, 0.0});
  const auto d1 = ProbVec::validated({0.0, 1.0});
  CHECK(tv_norm(d0 - d1) == 1.0);

  const auto a = ProbVec::validated({0.9, 0.1});
  const auto b = ProbVec::validated({0.2, 0.8});
  CHECK(tv_norm(a - b) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("tv_norm is a metric on distributions") {
  std::mt19937_64 rng(20240811);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t m = gen::pick(rng, 1, 5);
    const auto p = gen::prob(rng, m);
    const auto q = gen::prob(rng, m);
    const auto r = gen::prob(rng, m);
    const double pq = tv_norm(p - q);
    CHECK(pq == tv_norm(q - p));
    CHECK(pq >= 0.0);
    CHECK(pq <= 1.0);
    CHECK(pq <= tv_norm(p - r) + tv_norm(r - q) + 1e-12);
  }
  // zero iff equal within tolerance
  const auto p = gen::prob(rng, 3);
  CHECK(tv_norm(p - p) <= kInternalTol);
}

TEST_CASE("balanced predicate") {
  SignedVec v{{0.25, -0.25, 0.0}};
  CHECK(v.balanced());
  SignedVec w{{0.25, -0.2, 0.0}};
  CHECK(!w.balanced());
}

TEST_CASE("hamming_distance") {
  std::vector<Sym> x{0, 1, 2}, y{2, 1, 0}, z{0, 0, 0};
  CHECK(hamming_distance(x, x) == 0);
  CHECK(hamming_distance(x, y) == 2);  // middle coordinate agrees
  std::vector<Sym> aa{0, 0}, ab{0, 1};
  CHECK(hamming_distance(aa, ab) == 1);
  std::vector<Sym> shorter{0};
  CHECK_THROWS_AS(hamming_distance(x, shorter), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = gen::pick(rng, 1, 6);
    std::vector<Sym> a(n), b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<Sym>(gen::pick(rng, 0, 2));
      b[i] = static_cast<Sym>(gen::pick(rng, 0, 2));
      c[i] = static_cast<Sym>(gen::pick(rng, 0, 2));
    }
    CHECK(hamming_distance(a, b) == hamming_distance(b, a));
    CHECK((hamming_distance(a, b) == 0) == (a == b));
    CHECK(hamming_distance(a, b) <= hamming_distance(a, c) + hamming_distance(c, b));
  }
}

TEST_CASE("lipschitz_constant trivial cases") {
  HammingConfig cfg{2, HammingConfig::Normalization::PerCoordinate};

  // constant function
  std::vector<double> constant(4, 1.5);
  CHECK(lipschitz_constant(constant, 2, cfg) == 0.0);

  // f(x) = d(x, ref) / n moves by exactly 1/n per coordinate change
  const std::size_t n = 3, sigma = 2;
  HammingConfig cfg3{n, HammingConfig::Normalization::PerCoordinate};
  std::vector<Sym> ref{0, 1, 0};
  std::vector<double> f(8);
  std::vector<Sym> x(n);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    decode_seq(idx, sigma, x);
    f[idx] = static_cast<double>(hamming_distance(x, ref)) / static_cast<double>(n);
  }
  CHECK(lipschitz_constant(f, sigma, cfg3) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

// Oracle: the definition itself, swept in the transposed loop order.
static double lipschitz_by_definition(const std::vector<double>& f, std::size_t sigma,
                                      std::size_t n) {
  const std::size_t total = f.size();
  std::vector<Sym> xs(n), ys(n);
  double sup = 0.0;
  for (std::size_t yi = total; yi-- > 0;) {
    decode_seq(yi, sigma, ys);
    for (std::size_t xi = total; xi-- > 0;) {
      if (xi == yi) continue;
      decode_seq(xi, sigma, xs);
      const double d = static_cast<double>(hamming_distance(xs, ys));
      sup = std::max(sup, std::abs(f[xi] - f[yi]) / d);
    }
  }
  return sup;
}

TEST_CASE("lipschitz_constant matches brute force on random tables") {
  std::mt19937_64 rng(99);
  HammingConfig cfg{2, HammingConfig::Normalization::PerCoordinate};
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> f(4);
    for (double& v : f) v = gen::uniform(rng, -2.0, 2.0);
    CHECK(lipschitz_constant(f, 2, cfg) ==
          doctest::Approx(lipschitz_by_definition(f, 2, 2)).epsilon(1e-12));
  }
}

TEST_CASE("lipschitz_constant cap guard") {
  HammingConfig cfg{8, HammingConfig::Normalization::PerCoordinate};
  std::vector<double> f(65536, 0.0);
  CHECK_THROWS_AS(lipschitz_constant(f, 4, cfg, /*cap=*/1024), CapError);
}

TEST_CASE("HammingConfig scales") {
  HammingConfig per{4, HammingConfig::Normalization::PerCoordinate};
  HammingConfig root{4, HammingConfig::Normalization::Root};
  CHECK(per.scale() == doctest::Approx(0.25));
  CHECK(root.scale() == doctest::Approx(0.5));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(ProbVec::validated({0.5, 0.49}), NumericError);      // sum 0.99
  CHECK_THROWS_AS(ProbVec::validated({1.1, -0.1}), NumericError);      // negative
  CHECK_NOTHROW(ProbVec::validated({0.5 + 4e-10, 0.5}));               // within 1e-9
  const auto p = ProbVec::validated({0.5 + 4e-10, 0.5});
  double sum = 0.0;
  for (double w : p.weights()) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));  // renormalized
}

TEST_CASE("alphabet invariants") {
  CHECK_THROWS_AS(Alphabet::from_labels({"a", "a"}), SchemaError);
  CHECK_THROWS_AS(Alphabet::from_labels({}), SchemaError);
  const auto a = Alphabet::from_labels({"x", "y", "z"});
  CHECK(a.size() == 3);
  CHECK(a.index_of("y") == Sym{1});
  CHECK(a.label(2) == "z");
  CHECK(!a.index_of("w").has_value());
}

TEST_CASE("seq_index round trip") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t sigma = gen::pick(rng, 2, 4);
    const std::size_t n = gen::pick(rng, 1, 6);
    std::vector<Sym> x(n);
    for (auto& s : x) s = static_cast<Sym>(gen::pick(rng, 0, sigma - 1));
    std::vector<Sym> back(n);
    decode_seq(seq_index(x, sigma), sigma, back);
    CHECK(back == x);
  }
}
