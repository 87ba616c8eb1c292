#include "treedeck/enumerate.hpp"

#include <limits>
#include <map>
#include <set>

#include "treedeck/canon.hpp"
#include "treedeck/error.hpp"

namespace treedeck {
namespace {

void check_enumeration_size(int n) {
  if (n < 1 || n > kMaxEnumerationVertices) {
    throw SizeLimitError("tree enumeration size " + std::to_string(n) + " outside [1, 18]");
  }
}

// Next level: attach a leaf everywhere and keep one tree per code.
std::vector<Tree> grow_level(const std::vector<Tree>& level) {
  std::map<CanonCode, Tree> seen;
  for (const Tree& t : level) {
    for (int v = 0; v < t.order(); ++v) {
      Tree bigger = attach_leaves(t, v, 1);
      CanonCode code = canonical_code(bigger);
      if (!seen.contains(code)) seen.emplace(code, Tree(decode_graph(code)));
    }
  }
  std::vector<Tree> out;
  out.reserve(seen.size());
  for (auto& [code, t] : seen) out.push_back(std::move(t));
  return out;
}

}  // namespace

std::vector<std::vector<Tree>> enumerate_free_trees_upto(int n) {
  check_enumeration_size(n);
  std::vector<std::vector<Tree>> levels;
  levels.push_back({Tree()});
  for (int m = 2; m <= n; ++m) levels.push_back(grow_level(levels.back()));
  return levels;
}

std::vector<Tree> enumerate_free_trees(int n) { return enumerate_free_trees_upto(n).back(); }

std::vector<SmallGraph> enumerate_all_graphs(int n) {
  if (n < 0 || n > kMaxAllGraphsVertices) {
    throw SizeLimitError("all-graphs enumeration size " + std::to_string(n) + " outside [0, 7]");
  }
  // Vertex augmentation: every graph on m vertices is some graph on m-1
  // vertices plus a vertex with an arbitrary neighborhood.
  std::set<CanonCode> level{canonical_code(SmallGraph(0))};
  for (int m = 1; m <= n; ++m) {
    std::set<CanonCode> next;
    for (const CanonCode& code : level) {
      const SmallGraph base = decode_graph(code);
      for (VertexMask nb = 0; nb < (VertexMask{1} << (m - 1)); ++nb) {
        SmallGraph g(m);
        for (const Edge& e : base.edges()) g.add_edge(e.u, e.v);
        for_each_vertex(nb, [&](int w) { g.add_edge(m - 1, w); });
        next.insert(canonical_code(g));
      }
    }
    level = std::move(next);
  }
  std::vector<SmallGraph> out;
  for (const CanonCode& code : level) out.push_back(decode_graph(code));
  return out;
}

Tree tree_from_prufer(std::span<const int> sequence) {
  const int n = static_cast<int>(sequence.size()) + 2;
  if (n > kMaxTreeVertices) throw SizeLimitError("Prufer sequence too long");
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : sequence) {
    if (x < 0 || x >= n) throw PreconditionError("Prufer entry out of range");
    ++degree[x];
  }
  std::vector<Edge> edges;
  for (int x : sequence) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.push_back({leaf, x});
    --degree[leaf];
    --degree[x];
  }
  int a = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (a < 0) {
        a = v;
      } else {
        edges.push_back({a, v});
      }
    }
  }
  return Tree(n, edges);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

Tree random_tree(int n, Rng& rng) {
  if (n < 1 || n > kMaxTreeVertices) throw SizeLimitError("random tree size out of range");
  if (n == 1) return Tree();
  if (n == 2) return path_tree(2);
  std::vector<int> seq(static_cast<std::size_t>(n - 2));
  for (int& x : seq) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  return tree_from_prufer(seq);
}

}  // namespace treedeck
