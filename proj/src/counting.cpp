#include "treedeck/counting.hpp"

#include <algorithm>

#include "treedeck/error.hpp"
#include "treedeck/structure.hpp"

namespace treedeck {

std::uint64_t InducedCounter::count(const CanonCode& f, const CanonCode& h) {
  const int nf = code_order(f);
  const int nh = code_order(h);
  if (nf > nh) return 0;
  if (nf == nh) return f == h ? 1 : 0;
  if (!code_is_connected(f) || h.is_cyclic()) {
    return count_induced_copies(decode_graph(f), decode_graph(h));
  }
  auto it = connected_subsets_.find(h);
  if (it == connected_subsets_.end()) {
    const SmallGraph g = decode_graph(h);
    CountMap counts;
    for_each_connected_subset(g, g.order(), [&](VertexMask m) { ++counts[canonical_code(g, m)]; });
    it = connected_subsets_.emplace(h, std::move(counts)).first;
  }
  const auto hit = it->second.find(f);
  return hit == it->second.end() ? 0 : hit->second;
}

std::vector<CanonCode> solving_order(std::vector<CanonCode> family) {
  std::sort(family.begin(), family.end(), [](const CanonCode& a, const CanonCode& b) {
    const int na = code_order(a);
    const int nb = code_order(b);
    return na != nb ? na > nb : a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

CountMap solve_maximal_counts(const FamilyCounts& fc) {
  InducedCounter counter;
  return solve_maximal_counts(fc, counter);
}

CountMap solve_maximal_counts(const FamilyCounts& fc, InducedCounter& counter) {
  CountMap solved;
  std::vector<CanonCode> positive;  // classes already solved with m > 0
  for (const CanonCode& f : solving_order(fc.family)) {
    if (const auto known = fc.known_m.find(f); known != fc.known_m.end()) {
      solved[f] = known->second;
      if (known->second > 0) positive.push_back(f);
      continue;
    }
    const auto s = fc.s_counts.find(f);
    if (s == fc.s_counts.end()) {
      throw PreconditionError("family class " + f.text() + " has neither a known m nor an s count");
    }
    // Subtract copies of F that sit inside larger maximal members.
    std::uint64_t inside = 0;
    for (const CanonCode& h : positive) {
      if (code_order(h) > code_order(f)) inside += counter.count(f, h) * solved[h];
    }
    if (inside > s->second) {
      throw InconsistentError("inconsistent inputs: negative maximal count for " + f.text() + " (s=" +
                              std::to_string(s->second) + ", copies in larger members " +
                              std::to_string(inside) + ")");
    }
    const std::uint64_t m = s->second - inside;
    solved[f] = m;
    if (m > 0) positive.push_back(f);
  }
  return solved;
}

CodeMultiset positive_part(const CountMap& m) {
  CodeMultiset out;
  for (const auto& [code, count] : m) {
    if (count > 0) out.emplace(code, count);
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> s_matrix(std::span<const CanonCode> ordered_family) {
  InducedCounter counter;
  std::vector<std::vector<std::uint64_t>> rows;
  for (const CanonCode& f : ordered_family) {
    std::vector<std::uint64_t> row;
    for (const CanonCode& h : ordered_family) row.push_back(counter.count(f, h));
    rows.push_back(std::move(row));
  }
  return rows;
}

RootedMultiset rooted_subtree_multiset(const RootedTree& o) {
  const SmallGraph& g = o.tree().graph();
  RootedMultiset out;
  for_each_connected_subset_containing(g, g.all_vertices(), o.root(), g.order(), [&](VertexMask m) {
    ++out[rooted_canonical_code(g, m, o.root())];
  });
  return out;
}

RootedMultiset rooted_subtree_multiset(const CanonCode& rooted_code) {
  return rooted_subtree_multiset(decode_rooted(rooted_code));
}

RootedMultiset exclusion_recover(const RootedMultiset& m, const RootedMultiset& largest) {
  if (largest.empty()) {
    if (!m.empty()) throw InconsistentError("inconsistent multiset: no largest offshoots given");
    return {};
  }
  const int top = code_order(largest.begin()->first);
  for (const auto& [code, count] : largest) {
    if (code_order(code) != top || count == 0) {
      throw PreconditionError("largest offshoots must share one size and have positive counts");
    }
  }

  // Occurrences in M already explained by offshoots found so far.
  RootedMultiset explained;
  RootedMultiset found;
  auto add = [&](const CanonCode& code, std::uint64_t count) {
    found[code] += count;
    for (const auto& [sub, c] : rooted_subtree_multiset(code)) explained[sub] += c * count;
  };
  for (const auto& [code, count] : largest) add(code, count);

  // Group M by size, largest first.
  std::map<int, std::vector<std::pair<CanonCode, std::uint64_t>>, std::greater<>> by_size;
  for (const auto& [code, count] : m) by_size[code_order(code)].emplace_back(code, count);
  if (!by_size.empty() && by_size.begin()->first > top) {
    throw InconsistentError("inconsistent multiset: contains subtrees larger than the largest offshoots");
  }

  for (const auto& [size, entries] : by_size) {
    std::vector<std::pair<CanonCode, std::uint64_t>> fresh;
    for (const auto& [code, count] : entries) {
      const auto e = explained.find(code);
      const std::uint64_t seen = e == explained.end() ? 0 : e->second;
      if (seen > count) {
        throw InconsistentError("inconsistent multiset: " + code.text() + " occurs " + std::to_string(count) +
                                " times but larger offshoots account for " + std::to_string(seen));
      }
      if (count > seen) {
        if (size == top) {
          throw InconsistentError("inconsistent multiset: largest offshoots incomplete at " + code.text());
        }
        fresh.emplace_back(code, count - seen);
      }
    }
    for (const auto& [code, count] : fresh) add(code, count);
  }
  // Classes of the explained multiset never seen in M mean M is too small.
  for (const auto& [code, count] : explained) {
    const auto it = m.find(code);
    if (it == m.end() || it->second != count) {
      throw InconsistentError("inconsistent multiset: " + code.text() + " expected " + std::to_string(count) +
                              " occurrences");
    }
  }
  return found;
}

RootedMultiset exclusion_recover(const RootedMultiset& m, std::span<const RootedTree> largest) {
  RootedMultiset codes;
  for (const RootedTree& r : largest) ++codes[rooted_canonical_code(r)];
  return exclusion_recover(m, codes);
}

}  // namespace treedeck
