#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace treedeck {

/// Vertex subsets are bitmasks; bit v set means vertex v is in the set.
using VertexMask = std::uint32_t;

inline constexpr int kMaxGraphVertices = 32;
inline constexpr int kMaxTreeVertices = 24;

struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline VertexMask bit(int v) { return VertexMask{1} << v; }
inline int popcount(VertexMask m) { return std::popcount(m); }
inline int lowest_vertex(VertexMask m) { return std::countr_zero(m); }

/// Calls fn(v) for every vertex in the mask, in increasing order.
template <typename Fn>
void for_each_vertex(VertexMask m, Fn&& fn) {
  while (m != 0) {
    const int v = std::countr_zero(m);
    m &= m - 1;
    fn(v);
  }
}

/// Calls fn(mask) for every k-subset of {0..n-1} in increasing mask order.
template <typename Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(VertexMask{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t m = (std::uint64_t{1} << k) - 1;
  while (m < limit) {
    fn(static_cast<VertexMask>(m));
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

/// Simple undirected graph on at most 32 vertices stored as adjacency masks.
class SmallGraph {
 public:
  SmallGraph() = default;
  explicit SmallGraph(int n);

  static SmallGraph from_edges(int n, std::span<const Edge> edges);

  int order() const { return static_cast<int>(adj_.size()); }
  int edge_count() const;
  VertexMask all_vertices() const;

  void add_edge(int u, int v);
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
  VertexMask neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return std::popcount(adj_[v]); }
  std::vector<Edge> edges() const;

  /// Induced subgraph on `mask`, vertices relabeled in increasing order.
  SmallGraph induced(VertexMask mask) const;

  /// Connected components restricted to `within`, ordered by lowest vertex.
  std::vector<VertexMask> components(VertexMask within) const;
  std::vector<VertexMask> components() const { return components(all_vertices()); }
  VertexMask component_of(int v, VertexMask within) const;
  int induced_edge_count(VertexMask mask) const;

  bool is_connected() const;
  bool is_acyclic() const;

  friend bool operator==(const SmallGraph&, const SmallGraph&) = default;

 private:
  std::vector<VertexMask> adj_;
};

/// Free tree on vertices 0..n-1, 1 <= n <= 24. Construction validates.
class Tree {
 public:
  Tree() : Tree(1, {}) {}
  Tree(int n, std::span<const Edge> edges);
  explicit Tree(SmallGraph graph);

  int order() const { return graph_.order(); }
  const SmallGraph& graph() const { return graph_; }
  VertexMask neighbors(int v) const { return graph_.neighbors(v); }
  int degree(int v) const { return graph_.degree(v); }
  std::vector<Edge> edges() const { return graph_.edges(); }

  /// BFS distances from `source`.
  std::vector<int> distances_from(int source) const;
  /// Vertex sequence of the unique path between two vertices.
  std::vector<int> path_between(int from, int to) const;

  /// Tree with vertex v renamed to perm[v].
  Tree relabeled(std::span<const int> perm) const;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  SmallGraph graph_;
};

/// Tree with a distinguished root.
class RootedTree {
 public:
  RootedTree() = default;
  RootedTree(Tree tree, int root);

  const Tree& tree() const { return tree_; }
  int root() const { return root_; }
  int order() const { return tree_.order(); }
  /// Number of edges on a longest root-starting path.
  int height() const;
  /// Vertex count of a longest root-starting path (the offshoot "length").
  int length() const { return height() + 1; }
  std::vector<int> depths() const { return tree_.distances_from(root_); }

 private:
  Tree tree_;
  int root_ = 0;
};

/// Builds the rooted tree induced by a connected acyclic vertex set of g.
RootedTree rooted_subtree(const SmallGraph& g, VertexMask mask, int root);

/// Tree text format: first line n, then n-1 lines "u v".
Tree read_tree(std::istream& in);
void write_tree(std::ostream& out, const Tree& t);
std::string tree_to_text(const Tree& t);
Tree parse_tree(const std::string& text);

// Named constructions used throughout tests and the CLI.
Tree path_tree(int n);
Tree star_tree(int leaves);
/// Spider with one branch vertex (0) and legs of the given edge-lengths.
Tree spider_tree(std::span<const int> legs);
/// Tree plus a pendant path of `length` new vertices attached at `at`.
Tree attach_path(const Tree& t, int at, int length);
/// Tree plus `count` new leaves at `at`.
Tree attach_leaves(const Tree& t, int at, int count);

}  // namespace treedeck
