#include "mixbound/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace mixbound {

namespace {

// Structural validation shared by analyze_topology and TreeSpec::make.
// Returns parent array (1-based, parent[1] = 0) and depth array.
struct Structure {
  std::vector<int> parent;
  std::vector<std::size_t> depth;
};

Structure validate_structure(const TreeTopology& t) {
  const std::size_t n = t.n;
  if (n < 1) throw SchemaError("tree must have at least one node");
  if (t.edges.size() != n - 1)
    throw SchemaError("tree on " + std::to_string(n) + " nodes needs exactly " +
                      std::to_string(n - 1) + " edges, got " +
                      std::to_string(t.edges.size()));

  std::vector<int> parent(n + 1, 0);
  std::vector<std::vector<int>> children(n + 1);
  for (const auto& [u, v] : t.edges) {
    if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n ||
        static_cast<std::size_t>(v) > n)
      throw SchemaError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") references a node outside 1.." + std::to_string(n));
    if (v == 1) throw SchemaError("node 1 must be the root but has an incoming edge");
    if (parent[v] != 0)
      throw SchemaError("node " + std::to_string(v) + " has multiple parents");
    parent[v] = u;
    children[u].push_back(v);
  }

  // Reachability from the root; also detects cycles (a cycle is unreachable
  // because every node has at most one parent and the root has none).
  std::vector<std::size_t> depth(n + 1, 0);
  std::vector<char> seen(n + 1, 0);
  std::deque<int> queue{1};
  seen[1] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : children[u]) {
      depth[v] = depth[u] + 1;
      seen[v] = 1;
      ++reached;
      queue.push_back(v);
    }
  }
  if (reached != n) throw SchemaError("tree is disconnected or contains a cycle");
  return {std::move(parent), std::move(depth)};
}

LevelDecomposition decompose(const TreeTopology& t, const Structure& s) {
  const std::size_t n = t.n;
  LevelDecomposition out;
  std::size_t maxdep = 0;
  for (std::size_t v = 1; v <= n; ++v) maxdep = std::max(maxdep, s.depth[v]);
  out.depth = maxdep;
  out.levels.assign(maxdep + 1, {});
  for (std::size_t v = 1; v <= n; ++v) out.levels[s.depth[v]].push_back(static_cast<int>(v));
  out.width = 0;
  for (std::size_t d = 1; d <= maxdep; ++d)
    out.width = std::max(out.width, out.levels[d].size());

  // dep(u) < dep(v) => u < v is the same as depth nondecreasing in the index.
  out.breadth_first = true;
  for (std::size_t v = 2; v <= n; ++v)
    if (s.depth[v] < s.depth[v - 1]) out.breadth_first = false;

  if (!out.breadth_first) {
    // Canonical order: BFS with children visited in input edge order.
    std::vector<std::vector<int>> children(n + 1);
    for (const auto& [u, v] : t.edges) children[u].push_back(v);
    std::vector<int> old_to_new(n + 1, 0);
    std::deque<int> queue{1};
    int next = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      old_to_new[u] = next++;
      for (int v : children[u]) queue.push_back(v);
    }
    out.canonical_renumbering = std::move(old_to_new);
  }
  return out;
}

}  // namespace

LevelDecomposition analyze_topology(const TreeTopology& t) {
  return decompose(t, validate_structure(t));
}

TreeSpec TreeSpec::make(TreeTopology t, Alphabet alphabet, ProbVec p0,
                        std::vector<Kernel> edge_kernels) {
  auto structure = validate_structure(t);
  auto levels = decompose(t, structure);
  if (!levels.breadth_first)
    throw SchemaError("tree numbering is not breadth-first; renumber first");
  const std::size_t m = alphabet.size();
  if (p0.size() != m) throw NumericError("p0 size does not match alphabet");
  if (edge_kernels.size() != t.edges.size())
    throw NumericError("need one kernel per edge");
  for (const auto& k : edge_kernels)
    if (k.targets() != m || k.sources() != m)
      throw NumericError("edge kernels must be square over the alphabet");

  TreeSpec spec;
  spec.kernel_of_node_.assign(t.n + 1, 0);
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    spec.kernel_of_node_[t.edges[e].second] = e;
  spec.topology_ = std::move(t);
  spec.alphabet_ = std::move(alphabet);
  spec.p0_ = std::move(p0);
  for (auto& k : edge_kernels)
    spec.kernels_.push_back(std::make_shared<const Kernel>(std::move(k)));
  spec.parent_ = std::move(structure.parent);
  spec.depth_ = std::move(structure.depth);
  spec.levels_ = std::move(levels);
  return spec;
}

int TreeSpec::parent_of(int v) const {
  if (v < 1 || static_cast<std::size_t>(v) > topology_.n)
    throw std::invalid_argument("node out of range");
  return parent_[v];
}

const Kernel& TreeSpec::kernel_to(int v) const {
  if (v < 2 || static_cast<std::size_t>(v) > topology_.n)
    throw std::invalid_argument("node " + std::to_string(v) + " has no parent edge");
  return *kernels_[kernel_of_node_[v]];
}

const Kernel& TreeSpec::edge_kernel(std::size_t e) const {
  return *kernels_.at(e);
}

std::size_t TreeSpec::depth_of(int v) const {
  if (v < 1 || static_cast<std::size_t>(v) > topology_.n)
    throw std::invalid_argument("node out of range");
  return depth_[v];
}

double TreeSpec::theta_to(int v) const { return doeblin_coefficient(kernel_to(v)); }

std::vector<double> TreeSpec::edge_thetas() const {
  std::vector<double> out;
  out.reserve(kernels_.size());
  for (const auto& k : kernels_) out.push_back(doeblin_coefficient(*k));
  return out;
}

double TreeSpec::theta_max() const {
  double worst = 0.0;
  for (double th : edge_thetas()) worst = std::max(worst, th);
  return worst;
}

RenumberResult renumber_breadth_first(TreeTopology t, Alphabet alphabet, ProbVec p0,
                                      std::vector<Kernel> edge_kernels) {
  auto structure = validate_structure(t);
  auto levels = decompose(t, structure);
  if (levels.breadth_first) {
    std::vector<int> identity(t.n + 1, 0);
    for (std::size_t v = 1; v <= t.n; ++v) identity[v] = static_cast<int>(v);
    TreeSpec spec = TreeSpec::make(std::move(t), std::move(alphabet), std::move(p0),
                                   std::move(edge_kernels));
    return RenumberResult{std::move(spec), std::move(identity), false};
  }

  const auto map = levels.canonical_renumbering;
  TreeTopology renumbered;
  renumbered.n = t.n;
  std::vector<std::size_t> order(t.edges.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return map[t.edges[a].second] < map[t.edges[b].second];
  });
  std::vector<Kernel> kernels_in_order;
  kernels_in_order.reserve(edge_kernels.size());
  for (std::size_t e : order) {
    renumbered.edges.emplace_back(map[t.edges[e].first], map[t.edges[e].second]);
    kernels_in_order.push_back(std::move(edge_kernels[e]));
  }
  TreeSpec spec = TreeSpec::make(std::move(renumbered), std::move(alphabet),
                                 std::move(p0), std::move(kernels_in_order));
  return RenumberResult{std::move(spec), map, true};
}

double tree_density(const TreeSpec& spec, std::span<const Sym> x) {
  if (x.size() != spec.length())
    throw std::invalid_argument("configuration length does not match tree size");
  double p = spec.p0()[x[0]];
  for (std::size_t e = 0; e < spec.topology().edges.size(); ++e) {
    const auto& [u, v] = spec.topology().edges[e];
    p = spec.edge_kernel(e)(x[v - 1], x[u - 1]) * p;
  }
  return p;
}

std::optional<int> j_zero(const TreeTopology& t, int i, int j) {
  const std::size_t n = t.n;
  if (!(1 <= i && i < j && static_cast<std::size_t>(j) <= n))
    throw std::invalid_argument("j_zero: need 1 <= i < j <= n");
  std::vector<std::vector<int>> children(n + 1);
  for (const auto& [u, v] : t.edges) children[u].push_back(v);
  int best = 0;
  std::deque<int> queue{i};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u >= j && (best == 0 || u < best)) best = u;
    for (int v : children[u]) queue.push_back(v);
  }
  if (best == 0) return std::nullopt;
  return best;
}

double tree_eta_bound_levels(const TreeSpec& spec, int i, int j) {
  const auto j0 = j_zero(spec.topology(), i, j);
  if (!j0) return 0.0;

  const std::size_t di = spec.depth_of(i);
  const std::size_t dj = spec.depth_of(*j0);

  // Membership in the subtree rooted at i, by walking parents.
  auto in_subtree = [&](int v) {
    while (v != 0 && v != i) v = spec.parent_of(v);
    return v == i;
  };

  double prod = 1.0;
  const auto& levels = spec.levels().levels;
  for (std::size_t d = di + 1; d <= dj; ++d) {
    std::vector<double> thetas;
    for (int v : levels[d])
      if (in_subtree(v)) thetas.push_back(spec.theta_to(v));
    prod *= alpha(std::move(thetas));
  }
  return prod;
}

double tree_eta_bound_simple(const TreeSpec& spec, int i, int j, double theta,
                             std::size_t width) {
  const std::size_t n = spec.length();
  if (!(1 <= i && i < j && static_cast<std::size_t>(j) <= n))
    throw std::invalid_argument("tree_eta_bound_simple: need 1 <= i < j <= n");
  if (theta >= 1.0)
    throw NumericError("theta >= 1: the bound is vacuous and theta_tilde undefined");
  if (theta < spec.theta_max() - kInternalTol)
    throw std::invalid_argument("theta must dominate every edge coefficient");
  if (width < spec.levels().width)
    throw std::invalid_argument("L must be at least the tree width");
  const std::size_t gap = static_cast<std::size_t>(j - i);
  const std::size_t exponent = gap / width;
  const double base = 1.0 - std::pow(1.0 - theta, static_cast<double>(width));
  return std::pow(base, static_cast<double>(exponent));
}

double tree_eta_bound_simple(const TreeSpec& spec, int i, int j) {
  return tree_eta_bound_simple(spec, i, j, spec.theta_max(),
                               std::max<std::size_t>(spec.levels().width, 1));
}

double theta_tilde(double theta, std::size_t width) {
  if (!(theta >= 0.0 && theta < 1.0))
    throw NumericError("theta_tilde requires 0 <= theta < 1");
  if (width < 1) throw std::invalid_argument("width must be >= 1");
  const double base = 1.0 - std::pow(1.0 - theta, static_cast<double>(width));
  return std::pow(base, 1.0 / static_cast<double>(2 * width - 1));
}

double tree_delta_bound(double theta, std::size_t width) {
  const double tilde = theta_tilde(theta, width);
  return static_cast<double>(width) - 1.0 + 1.0 / (1.0 - tilde);
}

double linear_growth_eta_bound(std::span<const std::size_t> level_sizes,
                               std::span<const double> thetas_by_level, double c,
                               double beta, std::size_t depth_i, std::size_t gap) {
  if (c <= 0.0) throw std::invalid_argument("c must be positive");
  if (level_sizes.size() != thetas_by_level.size())
    throw std::invalid_argument("level_sizes and thetas_by_level lengths differ");
  for (std::size_t k = 0; k < level_sizes.size(); ++k) {
    const double d = static_cast<double>(k + 1);
    if (static_cast<double>(level_sizes[k]) > c * d)
      throw NumericError("level " + std::to_string(k + 1) + " has " +
                         std::to_string(level_sizes[k]) +
                         " nodes, above the linear-growth premise c*d = " +
                         std::to_string(c * d));
    if (c * d * thetas_by_level[k] > beta)
      throw NumericError("level " + std::to_string(k + 1) + ": c*k*theta_k = " +
                         std::to_string(c * d * thetas_by_level[k]) +
                         " exceeds beta = " + std::to_string(beta));
  }
  const double exponent =
      std::sqrt(2.0 * static_cast<double>(gap) / c) - static_cast<double>(depth_i) - 1.0;
  if (exponent <= 0.0) return 1.0;
  return std::min(1.0, std::pow(beta, exponent));
}

}  // namespace mixbound
