#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treedeck/canon.hpp"
#include "treedeck/counting.hpp"
#include "treedeck/deck.hpp"
#include "treedeck/graph.hpp"

namespace treedeck {

/// A deck together with every smaller deck derived from it (lazily), plus
/// the caches shared by the recognizers.
class DeckAnalysis {
 public:
  explicit DeckAnalysis(Deck top);

  int n() const { return top_.n(); }
  int card_size() const { return top_.card_size(); }
  int ell() const { return top_.ell(); }
  const Deck& top() const { return top_; }
  /// The p-deck, 1 <= p <= card_size.
  const Deck& deck(int p);
  /// s(F, T) for a class with at most card_size vertices.
  std::uint64_t s_count(const CanonCode& f);
  InducedCounter& counter() { return counter_; }

  /// Memoized recognizers (see the free functions below).
  std::optional<int> k();
  const CodeMultiset& maximal_vines(int j);
  const CodeMultiset& maximal_evines(int j);

 private:
  Deck top_;
  std::vector<std::optional<Deck>> decks_;  // index p
  InducedCounter counter_;
  bool k_done_ = false;
  std::optional<int> k_;
  std::map<int, CodeMultiset> vines_;
  std::map<int, CodeMultiset> evines_;
};

/// Number of edges, read from the 2-deck.
std::uint64_t edge_count_from_deck(const Deck& d);
std::uint64_t edge_count_from_deck(DeckAnalysis& a);

/// k, or nullopt when no j >= 1 qualifies ("k undefined").
std::optional<int> recognize_k(const Deck& d);

enum class RBranch { kMaxPath, kLongPath };

struct RResult {
  int r = 0;
  RBranch branch = RBranch::kMaxPath;
};

/// Longest-path order from the deck. The long-path branch needs
/// n >= 4l+8 and raises HypothesisError otherwise.
RResult recognize_r(DeckAnalysis& a);
RResult recognize_r(const Deck& d);
/// s + 2k with s the number of maximal k-vines, without the size guard.
int r_from_k_centers(DeckAnalysis& a);

/// Sorted degree multiset; needs n >= 2l+3.
std::vector<int> recognize_degree_list(DeckAnalysis& a);
std::vector<int> recognize_degree_list(const Deck& d);

/// Maximal j-vines / j-evines with multiplicity; needs 1 <= j <= k.
CodeMultiset maximal_vines_from_deck(DeckAnalysis& a, int j);
CodeMultiset maximal_evines_from_deck(DeckAnalysis& a, int j);
CodeMultiset maximal_vines_from_deck(const Deck& d, int j);
CodeMultiset maximal_evines_from_deck(const Deck& d, int j);

/// The counting-engine input behind maximal_vines_from_deck: classes of the
/// given diameter seen in p-decks for p < card_size, with their s counts.
FamilyCounts diameter_family(DeckAnalysis& a, int diameter);

/// Number of spi-centers; needs k >= l+1.
std::uint64_t recognize_spi_count(DeckAnalysis& a);
std::uint64_t recognize_spi_count(const Deck& d);

/// True when a tree given by code has at least three branches at its
/// center reaching distance `reach` from it.
bool center_has_three_long_branches(const CanonCode& tree_code, int reach);

struct SparseCard {
  CanonCode card;
  int primary_degree = 0;
  /// Position j <= (r+1)/2 of the primary vertex on the r-path.
  int primary_index = 0;
  friend auto operator<=>(const SparseCard&, const SparseCard&) = default;
};

struct SparseScan {
  bool applicable = false;  // false when r >= card_size
  std::vector<SparseCard> cards;
};

SparseScan detect_sparse_cards(const Deck& d, int r);
/// Largest primary index among sparse cards (the optimal cards' index).
std::optional<int> primary_value(const SparseScan& scan);
/// Some connected card has a leg longer than r - j.
bool detect_long_legged_cards(const Deck& d, int r, int j);
/// Some long card has a leg of length at least ceil(r/2).
bool detect_paddles(const Deck& d, int r);

// Tree-side ground truth.
std::optional<int> oracle_k(const Tree& t, int ell);
int oracle_r(const Tree& t);
std::vector<int> oracle_degree_list(const Tree& t);
CodeMultiset oracle_maximal_vines(const Tree& t, int j);
CodeMultiset oracle_maximal_evines(const Tree& t, int j);
std::vector<int> oracle_spi_centers(const Tree& t, int ell);

/// Structural facts that hold for every tree (when their hypotheses do).
struct PropertyCheck {
  std::string name;
  bool applicable = false;
  bool holds = true;
  std::string detail;
};
std::vector<PropertyCheck> check_structural_properties(const Tree& t, int ell);

template <class T>
struct Field {
  std::optional<T> value;
  std::string note;  // reason when absent; extra detail otherwise
};

struct InvariantReport {
  int n = 0;
  int card_size = 0;
  int ell = 0;
  Field<std::uint64_t> edge_count;
  Field<int> k;
  Field<int> r;
  Field<std::vector<int>> degree_list;
  Field<std::uint64_t> spi_count;
  std::map<int, CodeMultiset> maximal_vines;
  std::map<int, CodeMultiset> maximal_evines;
  Field<bool> has_sparse_card;
  Field<bool> has_long_legged_card;
  Field<bool> has_paddle;
};

InvariantReport analyze_deck(const Deck& d);
InvariantReport analyze_deck(DeckAnalysis& a);
/// Line-oriented rendering with a fixed field order.
std::string report_to_text(const InvariantReport& report);

}  // namespace treedeck
