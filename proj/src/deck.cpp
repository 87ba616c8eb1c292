#include "treedeck/deck.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "treedeck/error.hpp"
#include "treedeck/structure.hpp"

namespace treedeck {

Deck::Deck(int n, int card_size, CodeMultiset cards)
    : n_(n), card_size_(card_size), cards_(std::move(cards)) {
  if (card_size_ < 1 || card_size_ > n_) {
    throw PreconditionError("deck card size " + std::to_string(card_size) + " outside [1, " +
                            std::to_string(n) + "]");
  }
  for (const auto& [code, mult] : cards_) {
    if (mult == 0) throw PreconditionError("deck multiplicity must be positive");
  }
}

std::uint64_t Deck::total() const {
  std::uint64_t sum = 0;
  for (const auto& [code, mult] : cards_) sum += mult;
  return sum;
}

std::uint64_t Deck::multiplicity(const CanonCode& code) const {
  const auto it = cards_.find(code);
  return it == cards_.end() ? 0 : it->second;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

Deck compute_deck(const SmallGraph& g, int card_size) {
  const int n = g.order();
  if (card_size < 1 || card_size > n) {
    throw PreconditionError("card size " + std::to_string(card_size) + " outside [1, " +
                            std::to_string(n) + "]");
  }
  if (n > kMaxTreeVertices) throw SizeLimitError("deck computation limited to 24 vertices");
  CodeMultiset cards;
  for_each_k_subset(n, card_size, [&](VertexMask m) { ++cards[canonical_code(g, m)]; });
  return Deck(n, card_size, std::move(cards));
}

Deck compute_deck(const Tree& t, int card_size) { return compute_deck(t.graph(), card_size); }

Deck derive_subdeck(const Deck& d) {
  const int m = d.card_size();
  if (m < 2) throw PreconditionError("derive_subdeck needs card size >= 2");
  if (d.total() != binomial(d.n(), m)) {
    throw InconsistentError("inconsistent deck: multiplicities sum to " + std::to_string(d.total()) +
                            ", expected C(" + std::to_string(d.n()) + "," + std::to_string(m) + ")");
  }
  CodeMultiset raw;
  for (const auto& [code, mult] : d.cards()) {
    const SmallGraph card = decode_graph(code);
    const VertexMask all = card.all_vertices();
    for (int v = 0; v < card.order(); ++v) raw[canonical_code(card, all & ~bit(v))] += mult;
  }
  const auto divisor = static_cast<std::uint64_t>(d.n() - m + 1);
  for (auto& [code, count] : raw) {
    if (count % divisor != 0) {
      throw InconsistentError("non-integer multiplicity deriving the " + std::to_string(m - 1) +
                              "-deck: " + std::to_string(count) + " / " + std::to_string(divisor));
    }
    count /= divisor;
  }
  return Deck(d.n(), m - 1, std::move(raw));
}

Deck derive_down_to(const Deck& d, int card_size) {
  if (card_size > d.card_size()) throw PreconditionError("cannot derive a larger deck");
  Deck cur = d;
  while (cur.card_size() > card_size) cur = derive_subdeck(cur);
  return cur;
}

bool decks_equal(const Deck& a, const Deck& b) { return a == b; }

std::optional<CanonCode> first_difference(const Deck& a, const Deck& b) {
  auto ia = a.cards().begin();
  auto ib = b.cards().begin();
  while (ia != a.cards().end() || ib != b.cards().end()) {
    if (ib == b.cards().end() || (ia != a.cards().end() && ia->first < ib->first)) return ia->first;
    if (ia == a.cards().end() || ib->first < ia->first) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

CodeMultiset connected_cards(const Deck& d) {
  CodeMultiset out;
  for (const auto& [code, mult] : d.cards()) {
    if (code_is_connected(code)) out.emplace(code, mult);
  }
  return out;
}

int max_path_in_cards(const Deck& d) {
  int best = 0;
  for (const auto& [code, mult] : d.cards()) {
    const SmallGraph card = decode_graph(code);
    if (code.is_cyclic()) {
      throw PreconditionError("max_path_in_cards expects acyclic cards");
    }
    for (VertexMask comp : card.components()) {
      best = std::max(best, subtree_diameter(card, comp) + 1);
    }
  }
  return best;
}

void write_deck(std::ostream& out, const Deck& d) {
  out << d.n() << ' ' << d.card_size() << '\n';
  for (const auto& [code, mult] : d.cards()) out << mult << '\t' << code.text() << '\n';
}

std::string deck_to_text(const Deck& d) {
  std::ostringstream os;
  write_deck(os, d);
  return os.str();
}

Deck read_deck(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  if (!in && line.empty()) throw ParseError("deck file: missing header");
  int n = 0;
  int m = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra)) {
      throw ParseError("deck file: header must be \"n m\", got \"" + line + "\"");
    }
  }
  if (n < 1 || n > kMaxTreeVertices || m < 1 || m > n) {
    throw ParseError("deck file: invalid header \"" + line + "\"");
  }
  CodeMultiset cards;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) break;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("deck file: expected \"<count>\\t<code>\": " + line);
    std::uint64_t mult = 0;
    try {
      std::size_t used = 0;
      mult = std::stoull(line.substr(0, tab), &used);
      if (used != tab) throw ParseError("bad count");
    } catch (const std::exception&) {
      throw ParseError("deck file: bad multiplicity in \"" + line + "\"");
    }
    CanonCode code(line.substr(tab + 1));
    if (code.empty() || code.is_rooted()) throw ParseError("deck file: bad code in \"" + line + "\"");
    try {
      if (decode_graph(code).order() != m) {
        throw ParseError("deck file: card size mismatch in \"" + line + "\"");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("deck file: ") + e.what());
    }
    if (mult == 0) throw ParseError("deck file: zero multiplicity");
    if (!cards.emplace(std::move(code), mult).second) {
      throw ParseError("deck file: duplicate class \"" + line + "\"");
    }
  }
  return Deck(n, m, std::move(cards));
}

Deck parse_deck(const std::string& text) {
  std::istringstream is(text);
  return read_deck(is);
}

std::uint64_t deck_fingerprint(const Deck& d) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (char c : deck_to_text(d)) mix(static_cast<unsigned char>(c));
  return h;
}

}  // namespace treedeck
