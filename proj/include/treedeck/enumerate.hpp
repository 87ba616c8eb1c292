#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "treedeck/graph.hpp"

namespace treedeck {

inline constexpr int kMaxEnumerationVertices = 18;
inline constexpr int kMaxAllGraphsVertices = 7;

/// One representative per isomorphism class of n-vertex trees, canonically
/// labeled and sorted by canonical code. 1 <= n <= 18.
std::vector<Tree> enumerate_free_trees(int n);

/// enumerate_free_trees(m) for every m in [1, n]; index 0 holds m = 1.
std::vector<std::vector<Tree>> enumerate_free_trees_upto(int n);

/// One representative per isomorphism class of n-vertex simple graphs,
/// sorted by canonical code. n <= 7.
std::vector<SmallGraph> enumerate_all_graphs(int n);

/// Labeled tree encoded by a Prufer sequence over {0..n-1} (n = size + 2).
Tree tree_from_prufer(std::span<const int> sequence);

/// Deterministic RNG with platform-independent bounded draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

 private:
  std::mt19937_64 engine_;
};

/// Uniform random labeled tree via a random Prufer sequence.
Tree random_tree(int n, Rng& rng);

}  // namespace treedeck
