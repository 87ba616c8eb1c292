#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "treedeck/canon.hpp"
#include "treedeck/graph.hpp"

namespace treedeck {

/// Multiset of canonical codes with positive multiplicities.
using CodeMultiset = std::map<CanonCode, std::uint64_t>;

/// The m-deck of an n-vertex graph: multiset of its m-vertex induced
/// subgraphs, keyed (and therefore serialized) in canonical-code order.
class Deck {
 public:
  Deck() = default;
  /// Validates 1 <= m <= n; multiplicities must be positive.
  Deck(int n, int card_size, CodeMultiset cards);

  int n() const { return n_; }
  int card_size() const { return card_size_; }
  /// Number of deleted vertices, n - m.
  int ell() const { return n_ - card_size_; }
  const CodeMultiset& cards() const { return cards_; }
  std::uint64_t total() const;
  std::uint64_t multiplicity(const CanonCode& code) const;

  friend bool operator==(const Deck&, const Deck&) = default;

 private:
  int n_ = 0;
  int card_size_ = 0;
  CodeMultiset cards_;
};

std::uint64_t binomial(int n, int k);

Deck compute_deck(const SmallGraph& g, int card_size);
Deck compute_deck(const Tree& t, int card_size);

/// The (m-1)-deck obtained from the m-deck alone.
Deck derive_subdeck(const Deck& d);
/// Repeated derive_subdeck down to `card_size`.
Deck derive_down_to(const Deck& d, int card_size);

bool decks_equal(const Deck& a, const Deck& b);

/// First class (in code order) whose multiplicities differ, if any.
std::optional<CanonCode> first_difference(const Deck& a, const Deck& b);

/// Entries whose card is connected.
CodeMultiset connected_cards(const Deck& d);

/// Maximum number of vertices of a path contained in some card.
int max_path_in_cards(const Deck& d);

/// Deck file: "n m" header, then "<multiplicity>\t<code>" per class.
void write_deck(std::ostream& out, const Deck& d);
std::string deck_to_text(const Deck& d);
/// Reads one deck, ending at a blank line or EOF, so several blank-separated
/// decks may share one stream.
Deck read_deck(std::istream& in);
Deck parse_deck(const std::string& text);

/// Stable 64-bit digest of the deck serialization (FNV-1a).
std::uint64_t deck_fingerprint(const Deck& d);

}  // namespace treedeck
