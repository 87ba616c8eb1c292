#include "treedeck/invariants.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "treedeck/error.hpp"
#include "treedeck/structure.hpp"

namespace treedeck {

namespace {

// Diameters of the components of an acyclic code.
std::vector<int> component_diameters(const CanonCode& code) {
  const std::string& s = code.text();
  if (code.is_cyclic()) throw PreconditionError("deck of a tree expected, found a card with a cycle");
  std::vector<int> out;
  std::size_t start = 1;
  while (start < s.size()) {
    std::size_t dot = s.find('.', start);
    if (dot == std::string::npos) dot = s.size();
    out.push_back(code_diameter(CanonCode("F" + s.substr(start, dot - start))));
    start = dot + 1;
  }
  return out;
}

CanonCode star_code(int leaves) { return canonical_code(star_tree(leaves)); }

// The ball of radius j around a vertex set, as a mask.
VertexMask ball(const Tree& t, std::initializer_list<int> sources, int j) {
  std::vector<int> best(static_cast<std::size_t>(t.order()), t.order());
  for (int s : sources) {
    const std::vector<int> d = t.distances_from(s);
    for (int v = 0; v < t.order(); ++v) best[v] = std::min(best[v], d[v]);
  }
  VertexMask m = 0;
  for (int v = 0; v < t.order(); ++v) {
    if (best[v] <= j) m |= bit(v);
  }
  return m;
}

// Largest subtree size per diameter (0 when no subtree has that diameter).
std::vector<int> max_subtree_size_by_diameter(const Tree& t) {
  std::vector<int> best(static_cast<std::size_t>(t.order()), 0);
  for_each_connected_subset(t.graph(), t.order(), [&](VertexMask m) {
    const int d = subtree_diameter(t.graph(), m);
    best[d] = std::max(best[d], popcount(m));
  });
  return best;
}

std::optional<int> k_from_sizes(const std::vector<int>& best, int card_size) {
  for (int j = static_cast<int>(best.size()) / 2; j >= 1; --j) {
    const std::size_t d = static_cast<std::size_t>(2 * j + 1);
    if (d < best.size() && best[d] > 0 && best[d] < card_size) return j;
  }
  return std::nullopt;
}

CodeMultiset maximal_family(DeckAnalysis& a, int j, bool evine) {
  const std::optional<int> k = a.k();
  if (j < 1) throw PreconditionError("vine level must be at least 1");
  if (j == 1 && !evine && (!k || *k < 1) && a.n() >= 2 * a.ell() + 3) {
    // Maximal 1-vines are the stars at vertices of degree >= 2.
    CodeMultiset stars;
    for (int d : recognize_degree_list(a)) {
      if (d >= 2) ++stars[star_code(d)];
    }
    return stars;
  }
  if (!k || j > *k) {
    throw PreconditionError("level " + std::to_string(j) + " exceeds k = " + (k ? std::to_string(*k) : "undefined") +
                            "; maximal counts are not determined by the deck");
  }
  return positive_part(solve_maximal_counts(diameter_family(a, 2 * j + (evine ? 1 : 0)), a.counter()));
}

}  // namespace

DeckAnalysis::DeckAnalysis(Deck top)
    : top_(std::move(top)), decks_(static_cast<std::size_t>(top_.card_size()) + 1) {}

const Deck& DeckAnalysis::deck(int p) {
  if (p < 1 || p > card_size()) {
    throw PreconditionError("deck size " + std::to_string(p) + " outside [1, " + std::to_string(card_size()) + "]");
  }
  if (p == card_size()) return top_;
  auto& slot = decks_[static_cast<std::size_t>(p)];
  if (!slot) slot = derive_subdeck(deck(p + 1));
  return *slot;
}

std::uint64_t DeckAnalysis::s_count(const CanonCode& f) { return deck(code_order(f)).multiplicity(f); }

std::optional<int> DeckAnalysis::k() {
  if (!k_done_) {
    k_ = recognize_k(top_);
    k_done_ = true;
  }
  return k_;
}

const CodeMultiset& DeckAnalysis::maximal_vines(int j) {
  auto it = vines_.find(j);
  if (it == vines_.end()) it = vines_.emplace(j, maximal_family(*this, j, false)).first;
  return it->second;
}

const CodeMultiset& DeckAnalysis::maximal_evines(int j) {
  auto it = evines_.find(j);
  if (it == evines_.end()) it = evines_.emplace(j, maximal_family(*this, j, true)).first;
  return it->second;
}

std::uint64_t edge_count_from_deck(const Deck& d) {
  DeckAnalysis a(d);
  return edge_count_from_deck(a);
}

std::uint64_t edge_count_from_deck(DeckAnalysis& a) {
  if (a.card_size() < 2) throw PreconditionError("edge count needs card size >= 2");
  return a.deck(2).multiplicity(canonical_code(path_tree(2)));
}

std::optional<int> recognize_k(const Deck& d) {
  if (d.card_size() < 2) throw PreconditionError("k needs card size >= 2");
  int widest = 0;
  std::set<int> card_diameters;
  for (const auto& [code, mult] : d.cards()) {
    const std::vector<int> diams = component_diameters(code);
    for (int x : diams) widest = std::max(widest, x);
    if (diams.size() == 1) card_diameters.insert(diams.front());
  }
  // Largest j whose j-evines are visible in cards but never fill a card.
  for (int j = (widest - 1) / 2; j >= 1; --j) {
    if (!card_diameters.count(2 * j + 1)) return j;
  }
  return std::nullopt;
}

FamilyCounts diameter_family(DeckAnalysis& a, int diameter) {
  FamilyCounts fc;
  for (int p = diameter + 1; p < a.card_size(); ++p) {
    for (const auto& [code, mult] : a.deck(p).cards()) {
      if (code_is_connected(code) && code_diameter(code) == diameter) {
        fc.family.push_back(code);
        fc.s_counts[code] = mult;
      }
    }
  }
  return fc;
}

int r_from_k_centers(DeckAnalysis& a) {
  const std::optional<int> k = a.k();
  if (!k) throw InconsistentError("k undefined, so the k-centers cannot be counted");
  std::uint64_t s = 0;
  for (const auto& [code, mult] : a.maximal_vines(*k)) s += mult;
  return static_cast<int>(s) + 2 * *k;
}

RResult recognize_r(const Deck& d) {
  DeckAnalysis a(d);
  return recognize_r(a);
}

RResult recognize_r(DeckAnalysis& a) {
  const int longest = max_path_in_cards(a.top());
  if (longest < a.card_size()) return {longest, RBranch::kMaxPath};
  if (a.n() < 4 * a.ell() + 8) {
    throw HypothesisError("some card is a path and n = " + std::to_string(a.n()) + " < 4l+8 = " +
                          std::to_string(4 * a.ell() + 8));
  }
  const int r = r_from_k_centers(a);
  if (r < a.card_size()) {
    throw InconsistentError("k-center count gives r = " + std::to_string(r) + " but a card is a path on " +
                            std::to_string(a.card_size()) + " vertices");
  }
  return {r, RBranch::kLongPath};
}

std::vector<int> recognize_degree_list(const Deck& d) {
  DeckAnalysis a(d);
  return recognize_degree_list(a);
}

std::vector<int> recognize_degree_list(DeckAnalysis& a) {
  const int n = a.n();
  const int m = a.card_size();
  if (n < 2 * a.ell() + 3) {
    throw HypothesisError("n = " + std::to_string(n) + " < 2l+3 = " + std::to_string(2 * a.ell() + 3));
  }
  FamilyCounts fc;
  for (int t = 2; t <= n - 1; ++t) {
    const CanonCode c = star_code(t);
    fc.family.push_back(c);
    if (t + 1 < m) {
      fc.s_counts[c] = a.s_count(c);
    } else {
      fc.known_m[c] = 0;
    }
  }
  // Only one vertex can have degree >= m-1; C(d, m-1) of the cards are stars.
  const std::uint64_t star_cards = a.top().multiplicity(star_code(m - 1));
  if (star_cards > 0) {
    bool found = false;
    for (int d = m - 1; d <= n - 1 && !found; ++d) {
      if (binomial(d, m - 1) == star_cards) {
        fc.known_m[star_code(d)] = 1;
        found = true;
      }
    }
    if (!found) throw InconsistentError(std::to_string(star_cards) + " star cards match no vertex degree");
  }
  const CountMap solved = solve_maximal_counts(fc, a.counter());
  std::vector<int> degrees;
  for (int t = n - 1; t >= 2; --t) {
    const std::uint64_t c = solved.at(star_code(t));
    degrees.insert(degrees.end(), c, t);
  }
  if (static_cast<int>(degrees.size()) > n) throw InconsistentError("more branch or degree-2 vertices than vertices");
  degrees.insert(degrees.end(), static_cast<std::size_t>(n) - degrees.size(), 1);
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

CodeMultiset maximal_vines_from_deck(DeckAnalysis& a, int j) { return a.maximal_vines(j); }
CodeMultiset maximal_evines_from_deck(DeckAnalysis& a, int j) { return a.maximal_evines(j); }

CodeMultiset maximal_vines_from_deck(const Deck& d, int j) {
  DeckAnalysis a(d);
  return a.maximal_vines(j);
}

CodeMultiset maximal_evines_from_deck(const Deck& d, int j) {
  DeckAnalysis a(d);
  return a.maximal_evines(j);
}

bool center_has_three_long_branches(const CanonCode& tree_code, int reach) {
  const Tree t(decode_graph(tree_code));
  const DiameterCenter dc = diameter_center(t);
  if (dc.centers.size() != 1) return false;
  return long_branch_count(t, dc.centers.front(), reach) >= 3;
}

std::uint64_t recognize_spi_count(const Deck& d) {
  DeckAnalysis a(d);
  return recognize_spi_count(a);
}

std::uint64_t recognize_spi_count(DeckAnalysis& a) {
  const std::optional<int> k = a.k();
  const int need = a.ell() + 1;
  if (!k || *k < need) {
    throw HypothesisError("k = " + (k ? std::to_string(*k) : std::string("undefined")) + " < l+1 = " +
                          std::to_string(need));
  }
  std::uint64_t count = 0;
  for (const auto& [code, mult] : a.maximal_vines(need)) {
    if (center_has_three_long_branches(code, need)) count += mult;
  }
  return count;
}

SparseScan detect_sparse_cards(const Deck& d, int r) {
  SparseScan scan;
  if (r >= d.card_size()) return scan;
  scan.applicable = true;
  std::set<SparseCard> found;
  for (const auto& [code, mult] : d.cards()) {
    if (!code_is_connected(code) || code.is_cyclic() || code_diameter(code) != r - 1) continue;
    const Tree t(decode_graph(code));
    for (int u = 0; u < t.order(); ++u) {
      const std::vector<int> dist = t.distances_from(u);
      for (int v = u + 1; v < t.order(); ++v) {
        if (dist[v] != r - 1) continue;
        const std::vector<int> path = t.path_between(u, v);
        int branches = 0;
        int where = -1;
        for (std::size_t i = 0; i < path.size(); ++i) {
          if (t.degree(path[i]) >= 3) {
            ++branches;
            where = static_cast<int>(i) + 1;
          }
        }
        if (branches == 1) {
          found.insert({code, t.degree(path[static_cast<std::size_t>(where - 1)]), std::min(where, r + 1 - where)});
        }
      }
    }
  }
  scan.cards.assign(found.begin(), found.end());
  return scan;
}

std::optional<int> primary_value(const SparseScan& scan) {
  std::optional<int> best;
  for (const SparseCard& c : scan.cards) best = std::max(best.value_or(0), c.primary_index);
  return best;
}

bool detect_long_legged_cards(const Deck& d, int r, int j) {
  for (const auto& [code, mult] : d.cards()) {
    if (!code_is_connected(code) || code.is_cyclic()) continue;
    const std::vector<int> legs = leg_lengths(Tree(decode_graph(code)));
    if (!legs.empty() && legs.back() > r - j) return true;
  }
  return false;
}

bool detect_paddles(const Deck& d, int r) {
  for (const auto& [code, mult] : d.cards()) {
    if (!code_is_connected(code) || code.is_cyclic() || code_diameter(code) != r - 1) continue;
    const std::vector<int> legs = leg_lengths(Tree(decode_graph(code)));
    if (!legs.empty() && legs.back() >= (r + 1) / 2) return true;
  }
  return false;
}

std::optional<int> oracle_k(const Tree& t, int ell) {
  const int m = t.order() - ell;
  if (m < 1) throw PreconditionError("l must be smaller than n");
  return k_from_sizes(max_subtree_size_by_diameter(t), m);
}

int oracle_r(const Tree& t) { return diameter_center(t).diameter + 1; }

std::vector<int> oracle_degree_list(const Tree& t) {
  std::vector<int> d;
  for (int v = 0; v < t.order(); ++v) d.push_back(t.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

CodeMultiset oracle_maximal_vines(const Tree& t, int j) {
  CodeMultiset out;
  for (int c = 0; c < t.order(); ++c) {
    const VertexMask b = ball(t, {c}, j);
    if (subtree_diameter(t.graph(), b) == 2 * j) ++out[canonical_code(t.graph(), b)];
  }
  return out;
}

CodeMultiset oracle_maximal_evines(const Tree& t, int j) {
  CodeMultiset out;
  for (const Edge& e : t.edges()) {
    const VertexMask b = ball(t, {e.u, e.v}, j);
    if (subtree_diameter(t.graph(), b) == 2 * j + 1) ++out[canonical_code(t.graph(), b)];
  }
  return out;
}

std::vector<int> oracle_spi_centers(const Tree& t, int ell) {
  std::vector<int> out;
  for (int v = 0; v < t.order(); ++v) {
    if (long_branch_count(t, v, ell + 1) >= 3) out.push_back(v);
  }
  return out;
}

std::vector<PropertyCheck> check_structural_properties(const Tree& t, int ell) {
  const int n = t.order();
  const int m = n - ell;
  if (m < 1) throw PreconditionError("l must be smaller than n");
  const std::vector<int> sizes = max_subtree_size_by_diameter(t);
  const std::optional<int> k = k_from_sizes(sizes, m);
  const int r = oracle_r(t);
  const SmallGraph& g = t.graph();
  std::vector<PropertyCheck> out;

  // (r-3)/2 >= k >= (r-l-4)/2.
  {
    PropertyCheck c{"k-bounds", k.has_value(), true, ""};
    if (k) {
      c.holds = 2 * *k <= r - 3 && 2 * *k >= r - ell - 4;
      c.detail = "k=" + std::to_string(*k) + " r=" + std::to_string(r);
    }
    out.push_back(c);
  }

  // Connected cards have diameter >= 2k+2, and some has diameter <= 2k+3.
  std::vector<VertexMask> connected_cards;
  for_each_connected_subset(g, m, [&](VertexMask s) {
    if (popcount(s) == m) connected_cards.push_back(s);
  });
  {
    PropertyCheck c{"card-diameters", k.has_value(), true, ""};
    if (k) {
      int lo = n;
      int hi = 0;
      for (VertexMask s : connected_cards) {
        const int d = subtree_diameter(g, s);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      c.holds = !connected_cards.empty() && lo >= 2 * *k + 2 && lo <= 2 * *k + 3;
      c.detail = "k=" + std::to_string(*k) + " card diameters in [" + std::to_string(lo) + "," +
                 std::to_string(hi) + "]";
    }
    out.push_back(c);
  }

  // k-vines exist and all have fewer than n-l vertices.
  {
    PropertyCheck c{"k-vine-size", k.has_value(), true, ""};
    if (k) {
      const int biggest = sizes[static_cast<std::size_t>(2 * *k)];
      c.holds = biggest > 0 && biggest < m;
      c.detail = "largest k-vine has " + std::to_string(biggest) + " vertices, card size " + std::to_string(m);
    }
    out.push_back(c);
  }

  const std::vector<int> spi = oracle_spi_centers(t, ell);
  auto is_spi = [&](int v) { return std::find(spi.begin(), spi.end(), v) != spi.end(); };

  // A spi-center v_j with none strictly inside v_j..v_{r+1-j} pins the
  // central r-2j+2 vertices of every longest path.
  {
    PropertyCheck c{"central-paths", false, true, ""};
    std::vector<std::vector<int>> paths = longest_paths(t);
    const std::size_t once = paths.size();
    for (std::size_t i = 0; i < once; ++i) paths.emplace_back(paths[i].rbegin(), paths[i].rend());
    for (const std::vector<int>& p : paths) {
      for (int j = 1; 2 * j <= r + 1; ++j) {
        if (!is_spi(p[static_cast<std::size_t>(j - 1)])) continue;
        bool inner = false;
        for (int i = j; i <= r - j - 1; ++i) inner = inner || is_spi(p[static_cast<std::size_t>(i)]);
        if (inner) continue;
        c.applicable = true;
        const std::vector<int> mid(p.begin() + (j - 1), p.begin() + (r - j + 1));
        for (const std::vector<int>& q : paths) {
          const std::vector<int> other(q.begin() + (j - 1), q.begin() + (r - j + 1));
          if (other != mid && !std::equal(other.begin(), other.end(), mid.rbegin())) {
            c.holds = false;
            c.detail = "longest paths disagree on central vertices for j=" + std::to_string(j);
          }
        }
      }
    }
    out.push_back(c);
  }

  // With r < n-l, a card that is a 3-legged spider leaves no room for a
  // spi-center elsewhere.
  {
    PropertyCheck c{"spider-cards", false, true, ""};
    if (n >= 4 * ell + 1 && r < m) {
      for (VertexMask s : connected_cards) {
        int branch = -1;
        int branches = 0;
        for_each_vertex(s, [&](int v) {
          if (popcount(g.neighbors(v) & s) >= 3) {
            ++branches;
            branch = v;
          }
        });
        if (branches != 1 || popcount(g.neighbors(branch) & s) != 3) continue;
        c.applicable = true;
        for (int v : spi) {
          if (v != branch) {
            c.holds = false;
            c.detail = "spi-center " + std::to_string(v) + " outside spider card centered at " + std::to_string(branch);
          }
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

InvariantReport analyze_deck(const Deck& d) {
  DeckAnalysis a(d);
  return analyze_deck(a);
}

InvariantReport analyze_deck(DeckAnalysis& a) {
  InvariantReport rep;
  rep.n = a.n();
  rep.card_size = a.card_size();
  rep.ell = a.ell();
  auto attempt = [](auto& field, auto&& compute) {
    try {
      field.value = compute();
    } catch (const Error& e) {
      field.note = e.what();
    }
  };
  attempt(rep.edge_count, [&] { return edge_count_from_deck(a); });
  attempt(rep.k, [&]() -> int {
    const std::optional<int> k = a.k();
    if (!k) throw Error("undefined");
    return *k;
  });
  try {
    const RResult r = recognize_r(a);
    rep.r.value = r.r;
    rep.r.note = r.branch == RBranch::kMaxPath ? "max-path branch" : "long-path branch";
  } catch (const Error& e) {
    rep.r.note = e.what();
  }
  attempt(rep.degree_list, [&] { return recognize_degree_list(a); });
  attempt(rep.spi_count, [&] { return recognize_spi_count(a); });
  if (rep.k.value) {
    for (int j = 1; j <= *rep.k.value; ++j) {
      try {
        rep.maximal_vines[j] = a.maximal_vines(j);
        rep.maximal_evines[j] = a.maximal_evines(j);
      } catch (const Error&) {
        // Reported through the missing level.
      }
    }
  }
  if (rep.r.value) {
    const int r = *rep.r.value;
    const SparseScan scan = detect_sparse_cards(a.top(), r);
    if (scan.applicable) {
      rep.has_sparse_card.value = !scan.cards.empty();
    } else {
      rep.has_sparse_card.note = "r >= card size";
    }
    if (const std::optional<int> j = primary_value(scan)) {
      rep.has_long_legged_card.value = detect_long_legged_cards(a.top(), r, *j);
      rep.has_long_legged_card.note = "primary value " + std::to_string(*j);
    } else {
      rep.has_long_legged_card.note = "no sparse card";
    }
    rep.has_paddle.value = detect_paddles(a.top(), r);
  } else {
    rep.has_sparse_card.note = rep.has_long_legged_card.note = rep.has_paddle.note = "r unknown";
  }
  return rep;
}

namespace {

template <class T, class Fmt>
void put(std::ostream& os, const char* key, const Field<T>& f, Fmt&& fmt) {
  os << key << ": ";
  if (f.value) {
    fmt(os, *f.value);
    if (!f.note.empty()) os << " (" << f.note << ")";
  } else {
    os << "not computable (" << f.note << ")";
  }
  os << '\n';
}

void put_multiset(std::ostream& os, const std::string& key, const CodeMultiset& m) {
  os << key << ":";
  for (const auto& [code, mult] : m) os << ' ' << mult << 'x' << code.text();
  os << '\n';
}

}  // namespace

std::string report_to_text(const InvariantReport& rep) {
  std::ostringstream os;
  auto number = [](std::ostream& o, auto v) { o << v; };
  auto yesno = [](std::ostream& o, bool v) { o << (v ? "yes" : "no"); };
  os << "n: " << rep.n << '\n' << "card_size: " << rep.card_size << '\n' << "ell: " << rep.ell << '\n';
  put(os, "edge_count", rep.edge_count, number);
  if (rep.k.value) {
    os << "k: " << *rep.k.value << '\n';
  } else {
    os << "k: undefined\n";
  }
  put(os, "r", rep.r, number);
  put(os, "degree_list", rep.degree_list, [](std::ostream& o, const std::vector<int>& d) {
    for (std::size_t i = 0; i < d.size(); ++i) o << (i ? " " : "") << d[i];
  });
  put(os, "spi_count", rep.spi_count, number);
  for (const auto& [j, m] : rep.maximal_vines) put_multiset(os, "maximal_vines[" + std::to_string(j) + "]", m);
  for (const auto& [j, m] : rep.maximal_evines) put_multiset(os, "maximal_evines[" + std::to_string(j) + "]", m);
  put(os, "has_sparse_card", rep.has_sparse_card, yesno);
  put(os, "has_long_legged_card", rep.has_long_legged_card, yesno);
  put(os, "has_paddle", rep.has_paddle, yesno);
  return os.str();
}

}  // namespace treedeck
