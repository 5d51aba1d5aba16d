#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mixbound/contraction.hpp"
#include "mixbound/core.hpp"

namespace mixbound {

/// Directed tree on nodes 1..n, each edge (u, v) pointing from parent u to
/// child v. Node 1 is the root. Operations that compare node indices
/// against positions require breadth-first numbering:
/// dep(u) < dep(v) implies u < v.
struct TreeTopology {
  std::size_t n = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Depth partition of a validated topology.
struct LevelDecomposition {
  std::vector<std::vector<int>> levels;  // levels[d] = nodes at depth d
  std::size_t width = 0;                 // max level size over d >= 1
  std::size_t depth = 0;
  bool breadth_first = true;
  /// Filled when breadth_first is false: canonical renumbering old -> new
  /// (1-based, entry 0 unused).
  std::vector<int> canonical_renumbering;
};

/// Validates structure (connected, single parent, acyclic, root = 1) and
/// computes the depth partition. Reports a canonical breadth-first
/// renumbering when the input numbering violates it.
LevelDecomposition analyze_topology(const TreeTopology& t);

/// Markov tree process: topology plus root law and one kernel per edge.
class TreeSpec {
 public:
  /// Requires breadth-first numbering; kernels are parallel to t.edges.
  static TreeSpec make(TreeTopology t, Alphabet alphabet, ProbVec p0,
                       std::vector<Kernel> edge_kernels);

  const TreeTopology& topology() const { return topology_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const ProbVec& p0() const { return p0_; }
  std::size_t length() const { return topology_.n; }
  const LevelDecomposition& levels() const { return levels_; }

  int parent_of(int v) const;                       // 0 for the root
  const Kernel& kernel_to(int v) const;             // kernel on (parent(v), v)
  const Kernel& edge_kernel(std::size_t e) const;   // by edge position
  std::size_t depth_of(int v) const;
  double theta_to(int v) const;                     // doeblin of kernel_to(v)
  std::vector<double> edge_thetas() const;          // parallel to edges
  double theta_max() const;

 private:
  TreeSpec() = default;
  TreeTopology topology_;
  Alphabet alphabet_{Alphabet::of_size(1)};
  ProbVec p0_{ProbVec::validated({1.0})};
  std::vector<std::shared_ptr<const Kernel>> kernels_;  // parallel to edges
  std::vector<std::size_t> kernel_of_node_;             // node -> edge position
  std::vector<int> parent_;
  std::vector<std::size_t> depth_;
  LevelDecomposition levels_;
};

struct RenumberResult {
  TreeSpec spec;
  std::vector<int> old_to_new;  // 1-based, entry 0 unused
  bool changed = false;
};

/// Canonical breadth-first renumbering: level order, parents' index order,
/// input edge order within a parent. Kernels follow their edges.
RenumberResult renumber_breadth_first(TreeTopology t, Alphabet alphabet, ProbVec p0,
                                      std::vector<Kernel> edge_kernels);

/// p0(x_1) * prod over edges p_uv(x_v | x_u).
double tree_density(const TreeSpec& spec, std::span<const Sym> x);

/// The first node of the subtree rooted at i whose breadth-first number is
/// at least j; absence forces eta_bar_{ij} = 0.
std::optional<int> j_zero(const TreeTopology& t, int i, int j);

/// Level-product bound: product over depths d = dep(i)+1 .. dep(j0) of
/// alpha over the edge coefficients entering depth-d nodes inside the
/// subtree rooted at i. Returns 0 when j0 does not exist.
double tree_eta_bound_levels(const TreeSpec& spec, int i, int j);

/// (1 - (1-theta)^L)^floor((j-i)/L), valid for theta >= max theta_uv and
/// L >= wid(T). Rejects theta >= 1.
double tree_eta_bound_simple(const TreeSpec& spec, int i, int j, double theta,
                             std::size_t width);
/// Defaults: theta = max theta_uv, L = wid(T).
double tree_eta_bound_simple(const TreeSpec& spec, int i, int j);

/// (1 - (1-theta)^L)^(1/(2L-1)). Rejects theta = 1.
double theta_tilde(double theta, std::size_t width);

/// Dimension-free bound L - 1 + 1/(1 - theta_tilde).
double tree_delta_bound(double theta, std::size_t width);

/// Bound for trees with at most linearly growing levels: beta raised to
/// sqrt(2 (j-i) / c) - dep(i) - 1, clamped into [.., 1]. level_sizes[k]
/// and thetas_by_level[k] describe depth k+1. Premises |I_d| <= c d and
/// c k theta_k <= beta are validated; violations name the first bad level.
double linear_growth_eta_bound(std::span<const std::size_t> level_sizes,
                               std::span<const double> thetas_by_level, double c,
                               double beta, std::size_t depth_i, std::size_t gap);

}  // namespace mixbound
