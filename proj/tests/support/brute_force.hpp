#pragma once

// Test-only oracles that share no code path with the library's canonical
// forms: isomorphism by trying every vertex permutation.

#include <algorithm>
#include <numeric>
#include <vector>

#include "treedeck/graph.hpp"

namespace treedeck::testing {

inline std::vector<int> sorted_degrees(const SmallGraph& g) {
  std::vector<int> d;
  for (int v = 0; v < g.order(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

/// Isomorphism by exhaustive permutation search. If root_a/root_b are
/// given, the permutation must map one root to the other.
inline bool brute_isomorphic(const SmallGraph& a, const SmallGraph& b, int root_a = -1,
                             int root_b = -1) {
  const int n = a.order();
  if (n != b.order() || a.edge_count() != b.edge_count()) return false;
  if (sorted_degrees(a) != sorted_degrees(b)) return false;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (root_a >= 0 && perm[root_a] != root_b) continue;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      for (int v = u + 1; v < n && ok; ++v) {
        if (a.adjacent(u, v) != b.adjacent(perm[u], perm[v])) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Partitions graphs into isomorphism classes with brute_isomorphic;
/// returns the number of classes.
inline std::size_t brute_class_count(const std::vector<SmallGraph>& graphs) {
  std::vector<SmallGraph> reps;
  for (const SmallGraph& g : graphs) {
    bool found = false;
    for (const SmallGraph& r : reps) {
      if (brute_isomorphic(g, r)) {
        found = true;
        break;
      }
    }
    if (!found) reps.push_back(g);
  }
  return reps.size();
}

/// Every labeled graph on n vertices (edge subsets of K_n).
inline std::vector<SmallGraph> all_labeled_graphs(int n) {
  std::vector<Edge> slots;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) slots.push_back({u, v});
  }
  std::vector<SmallGraph> out;
  for (unsigned long mask = 0; mask < (1UL << slots.size()); ++mask) {
    SmallGraph g(n);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask & (1UL << i)) g.add_edge(slots[i].u, slots[i].v);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace treedeck::testing
