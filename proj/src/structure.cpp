#include "treedeck/structure.hpp"

#include <algorithm>

#include "treedeck/error.hpp"

namespace treedeck {
namespace {

// Largest distance from v inside `within`, walking away from `parent`.
int reach_from(const SmallGraph& g, VertexMask within, int v, int parent) {
  int best = 0;
  VertexMask kids = g.neighbors(v) & within;
  if (parent >= 0) kids &= ~bit(parent);
  for_each_vertex(kids, [&](int w) { best = std::max(best, 1 + reach_from(g, within, w, v)); });
  return best;
}

// Farthest vertex and its distance from `source` inside `within`.
std::pair<int, int> farthest(const SmallGraph& g, VertexMask within, int source) {
  int far_vertex = source;
  int far_dist = 0;
  VertexMask seen = bit(source);
  VertexMask frontier = seen;
  int dist = 0;
  while (true) {
    VertexMask next = 0;
    for_each_vertex(frontier, [&](int u) { next |= g.neighbors(u); });
    next &= within & ~seen;
    if (next == 0) break;
    ++dist;
    seen |= next;
    frontier = next;
    far_vertex = lowest_vertex(next);
    far_dist = dist;
  }
  return {far_vertex, far_dist};
}

void grow(const SmallGraph& g, VertexMask within, VertexMask current, VertexMask ext,
          VertexMask banned, int size, int max_size, const std::function<void(VertexMask)>& visit) {
  visit(current);
  if (size == max_size) return;
  while (ext != 0) {
    const int w = lowest_vertex(ext);
    ext &= ~bit(w);
    const VertexMask fresh = g.neighbors(w) & within & ~current & ~banned & ~ext;
    grow(g, within, current | bit(w), ext | fresh, banned, size + 1, max_size, visit);
    banned |= bit(w);
  }
}

}  // namespace

DiameterCenter diameter_center(const Tree& t) {
  const int n = t.order();
  std::vector<int> ecc(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const auto d = t.distances_from(v);
    ecc[v] = *std::max_element(d.begin(), d.end());
  }
  DiameterCenter out;
  out.diameter = *std::max_element(ecc.begin(), ecc.end());
  const int radius = *std::min_element(ecc.begin(), ecc.end());
  for (int v = 0; v < n; ++v) {
    if (ecc[v] == radius) out.centers.push_back(v);
  }
  return out;
}

int longest_path_order(const Tree& t) {
  return subtree_diameter(t.graph(), t.graph().all_vertices()) + 1;
}

int subtree_diameter(const SmallGraph& g, VertexMask comp) {
  const auto [end, d0] = farthest(g, comp, lowest_vertex(comp));
  (void)d0;
  return farthest(g, comp, end).second;
}

std::vector<RootedTree> offshoots_at(const Tree& t, std::span<const int> path, int v) {
  VertexMask on_path = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int p = path[i];
    if (p < 0 || p >= t.order() || (on_path & bit(p))) {
      throw PreconditionError("offshoots_at: not a path");
    }
    if (i > 0 && !t.graph().adjacent(path[i - 1], p)) {
      throw PreconditionError("offshoots_at: consecutive vertices not adjacent");
    }
    on_path |= bit(p);
  }
  if (v < 0 || v >= t.order() || !(on_path & bit(v))) {
    throw PreconditionError("offshoots_at: vertex not on path");
  }
  const VertexMask rest = t.graph().all_vertices() & ~on_path;
  std::vector<RootedTree> out;
  for_each_vertex(t.neighbors(v) & rest, [&](int root) {
    const VertexMask comp = t.graph().component_of(root, rest);
    out.push_back(rooted_subtree(t.graph(), comp, root));
  });
  std::sort(out.begin(), out.end(), [](const RootedTree& a, const RootedTree& b) {
    return rooted_canonical_code(a) < rooted_canonical_code(b);
  });
  return out;
}

void for_each_connected_subset_containing(const SmallGraph& g, VertexMask within, int anchor,
                                          int max_size,
                                          const std::function<void(VertexMask)>& visit) {
  if (max_size < 1 || !(within & bit(anchor))) return;
  grow(g, within, bit(anchor), g.neighbors(anchor) & within, 0, 1, max_size, visit);
}

void for_each_connected_subset(const SmallGraph& g, int max_size,
                               const std::function<void(VertexMask)>& visit) {
  for (int v = 0; v < g.order(); ++v) {
    // Subsets whose lowest vertex is v.
    const VertexMask above = g.all_vertices() & ~((bit(v) << 1) - 1);
    for_each_connected_subset_containing(g, above | bit(v), v, max_size, visit);
  }
}

std::vector<VertexMask> enumerate_connected_subtrees(const Tree& t, int max_size) {
  std::vector<VertexMask> out;
  for_each_connected_subset(t.graph(), max_size, [&](VertexMask m) { out.push_back(m); });
  return out;
}

std::uint64_t count_induced_copies(const SmallGraph& f, const SmallGraph& g) {
  const int k = f.order();
  if (k > g.order()) return 0;
  if (k == 0) return 1;
  const CanonCode target = canonical_code(f);
  const int target_edges = f.edge_count();
  std::uint64_t count = 0;
  auto check = [&](VertexMask m) {
    if (popcount(m) == k && g.induced_edge_count(m) == target_edges &&
        canonical_code(g, m) == target) {
      ++count;
    }
  };
  if (f.is_connected()) {
    for_each_connected_subset(g, k, check);
    return count;
  }
  for_each_k_subset(g.order(), k, check);
  return count;
}

std::vector<std::vector<int>> longest_paths(const Tree& t) {
  const int n = t.order();
  const int diameter = longest_path_order(t) - 1;
  std::vector<std::vector<int>> out;
  if (n == 1) {
    out.push_back({0});
    return out;
  }
  for (int a = 0; a < n; ++a) {
    const auto d = t.distances_from(a);
    for (int b = a + 1; b < n; ++b) {
      if (d[b] == diameter) out.push_back(t.path_between(a, b));
    }
  }
  return out;
}

std::vector<int> leg_lengths(const Tree& t) {
  const int n = t.order();
  std::vector<int> legs;
  bool has_branch = false;
  for (int v = 0; v < n; ++v) has_branch = has_branch || t.degree(v) >= 3;
  if (!has_branch) return legs;
  for (int leaf = 0; leaf < n; ++leaf) {
    if (t.degree(leaf) != 1) continue;
    int prev = leaf;
    int cur = lowest_vertex(t.neighbors(leaf));
    int len = 1;
    while (t.degree(cur) == 2) {
      const int next = lowest_vertex(t.neighbors(cur) & ~bit(prev));
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  return legs;
}

int long_branch_count(const Tree& t, int v, int reach) {
  int count = 0;
  const VertexMask all = t.graph().all_vertices();
  for_each_vertex(t.neighbors(v), [&](int u) {
    if (1 + reach_from(t.graph(), all, u, v) >= reach) ++count;
  });
  return count;
}

bool contains_three_leg_spider(const Tree& t, int leg) {
  for (int v = 0; v < t.order(); ++v) {
    if (t.degree(v) >= 3 && long_branch_count(t, v, leg) >= 3) return true;
  }
  return false;
}

}  // namespace treedeck
