#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "treedeck/canon.hpp"
#include "treedeck/deck.hpp"
#include "treedeck/graph.hpp"

namespace treedeck {

/// Class -> count. Unlike a deck, zero entries are allowed (a solved
/// multiplicity may be zero).
using CountMap = std::map<CanonCode, std::uint64_t>;

/// Rooted codes with positive multiplicities.
using RootedMultiset = std::map<CanonCode, std::uint64_t>;

/// Input to the maximal-subgraph counting recursion.
///   family:   every class of the family that can occur
///   known_m:  m(F, G) for the classes too large to read from the deck
///   s_counts: s(F, G) for the remaining classes
struct FamilyCounts {
  std::vector<CanonCode> family;
  CountMap known_m;
  CountMap s_counts;
};

/// Memoized s(F, H) for small graphs given by code. For connected F and
/// acyclic H, all connected subsets of H are classified once per H.
class InducedCounter {
 public:
  std::uint64_t count(const CanonCode& f, const CanonCode& h);

 private:
  std::map<CanonCode, CountMap> connected_subsets_;
};

/// Family classes in solving order: more vertices first, ties by code.
std::vector<CanonCode> solving_order(std::vector<CanonCode> family);

/// Solves s(F,G) = sum_H s(F,H) m(H,G) for every family class, largest
/// first. Throws InconsistentError on a negative solution.
CountMap solve_maximal_counts(const FamilyCounts& fc);
CountMap solve_maximal_counts(const FamilyCounts& fc, InducedCounter& counter);

/// Entries with positive count.
CodeMultiset positive_part(const CountMap& m);

/// s(F, H) for every ordered pair of family classes, rows and columns in
/// solving order.
std::vector<std::vector<std::uint64_t>> s_matrix(std::span<const CanonCode> ordered_family);

/// One occurrence per root-containing connected vertex subset of `o`.
RootedMultiset rooted_subtree_multiset(const RootedTree& o);
/// Same, computed from a rooted code.
RootedMultiset rooted_subtree_multiset(const CanonCode& rooted_code);

/// Recovers the complete offshoot multiset from M and the complete
/// multiset of largest offshoots (rooted codes). Throws InconsistentError
/// when M is not explained by any offshoot multiset with those largest
/// members.
RootedMultiset exclusion_recover(const RootedMultiset& m, const RootedMultiset& largest);
RootedMultiset exclusion_recover(const RootedMultiset& m, std::span<const RootedTree> largest);

}  // namespace treedeck
