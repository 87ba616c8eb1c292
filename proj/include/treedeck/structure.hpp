#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "treedeck/canon.hpp"
#include "treedeck/graph.hpp"

namespace treedeck {

struct DiameterCenter {
  int diameter = 0;
  std::vector<int> centers;  // one vertex, or two adjacent vertices
};

DiameterCenter diameter_center(const Tree& t);

/// Maximum number of vertices in a path (diameter + 1).
int longest_path_order(const Tree& t);

/// Diameter of the tree induced by a connected subset of g.
int subtree_diameter(const SmallGraph& g, VertexMask comp);

/// Components of t minus the path's vertices whose root neighbors `v`,
/// each rooted at that neighbor. Sorted by rooted code.
std::vector<RootedTree> offshoots_at(const Tree& t, std::span<const int> path, int v);

/// Visits every connected vertex subset of g with at most `max_size` vertices,
/// exactly once.
void for_each_connected_subset(const SmallGraph& g, int max_size,
                               const std::function<void(VertexMask)>& visit);

/// Visits every connected subset containing `anchor` (and only vertices of
/// `within`) with at most `max_size` vertices, exactly once.
void for_each_connected_subset_containing(const SmallGraph& g, VertexMask within, int anchor,
                                          int max_size,
                                          const std::function<void(VertexMask)>& visit);

std::vector<VertexMask> enumerate_connected_subtrees(const Tree& t, int max_size);

/// s(f, g): number of vertex subsets of g inducing a copy of f.
std::uint64_t count_induced_copies(const SmallGraph& f, const SmallGraph& g);

/// Vertex sequences of all longest paths, each listed once (from its
/// lexicographically smaller orientation).
std::vector<std::vector<int>> longest_paths(const Tree& t);

/// Leg lengths (in edges) of a non-path tree: paths from each leaf to the
/// nearest branch vertex. Empty for paths.
std::vector<int> leg_lengths(const Tree& t);

/// True when the tree has a vertex with at least three branches reaching
/// distance `leg` from it (i.e. contains S_{leg,leg,leg} centered there).
bool contains_three_leg_spider(const Tree& t, int leg);

/// Number of neighbors u of v whose side of the tree reaches distance at
/// least `reach` from v.
int long_branch_count(const Tree& t, int v, int reach);

}  // namespace treedeck
