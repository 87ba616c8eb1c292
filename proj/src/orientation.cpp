#include "treedeck/orientation.hpp"

#include <algorithm>
#include <sstream>

#include "treedeck/error.hpp"
#include "treedeck/invariants.hpp"
#include "treedeck/structure.hpp"

namespace treedeck {

namespace {

// BFS distances from `source` inside `region`; -1 elsewhere.
std::vector<int> region_distances(const SmallGraph& g, VertexMask region, int source) {
  std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
  dist[source] = 0;
  std::vector<int> queue{source};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int u = queue[i];
    for_each_vertex(g.neighbors(u) & region, [&](int v) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    });
  }
  return dist;
}

VertexMask within(const std::vector<int>& dist, int radius) {
  VertexMask m = 0;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] >= 0 && dist[v] <= radius) m |= bit(static_cast<int>(v));
  }
  return m;
}

int farthest(const std::vector<int>& dist) { return *std::max_element(dist.begin(), dist.end()); }

// Components of region - center that reach distance `reach` from center.
std::vector<VertexMask> long_branches(const SmallGraph& g, VertexMask region, int center,
                                      const std::vector<int>& dist, int reach) {
  std::vector<VertexMask> out;
  for (VertexMask comp : g.components(region & ~bit(center))) {
    bool deep = false;
    for_each_vertex(comp, [&](int v) { deep = deep || dist[v] >= reach; });
    if (deep) out.push_back(comp);
  }
  return out;
}

CanonCode rooted_at_neighbor(const SmallGraph& g, VertexMask comp, int center) {
  return rooted_canonical_code(g, comp, lowest_vertex(comp & g.neighbors(center)));
}

TerminalEvine decompose_evine_from(const SmallGraph& g, VertexMask s, int y, int z) {
  const VertexMask c_mask = g.component_of(y, s & ~bit(z));
  const VertexMask d_mask = g.component_of(z, s & ~bit(y));
  const std::vector<int> dc = region_distances(g, c_mask, y);
  const std::vector<int> dd = region_distances(g, d_mask, z);
  const int depth = farthest(dc);
  if (farthest(dd) != depth) throw PreconditionError("evine sides have different depths");
  const std::vector<VertexMask> cm = long_branches(g, c_mask, y, dc, depth);
  const std::vector<VertexMask> dm = long_branches(g, d_mask, z, dd, depth);
  if (cm.size() != 1 || dm.size() != 1) {
    throw PreconditionError("evine side has " + std::to_string(cm.size()) + " and " + std::to_string(dm.size()) +
                            " long branches, expected 1 each");
  }
  const VertexMask vy = within(region_distances(g, s, y), depth);
  const VertexMask vz = within(region_distances(g, s, z), depth);
  TerminalEvine e;
  e.code = canonical_code(g, s);
  e.depth = depth;
  e.c = rooted_canonical_code(g, c_mask, y);
  e.d = rooted_canonical_code(g, d_mask, z);
  e.y = rooted_canonical_code(g, vy & ~cm[0], y);
  e.z = rooted_canonical_code(g, vz & ~dm[0], z);
  e.c_major = rooted_at_neighbor(g, cm[0], y);
  e.d_major = rooted_at_neighbor(g, dm[0], z);
  e.vine_y = rooted_canonical_code(g, vy, y);
  e.vine_z = rooted_canonical_code(g, vz, z);
  return e;
}

auto evine_key(const TerminalEvine& e) { return std::tie(e.c, e.d, e.y, e.z); }

Tree tree_of(const CanonCode& code) {
  if (code.is_rooted() || code.is_cyclic() || !code_is_connected(code)) {
    throw PreconditionError("connected tree code expected: " + code.text());
  }
  return Tree(decode_graph(code));
}

CodeMultiset residue(const CodeMultiset& lower, const CodeMultiset& upper, int depth, bool evine,
                     const char* what) {
  CodeMultiset left = lower;
  for (const auto& [code, mult] : upper) {
    const CanonCode t = evine ? truncate_evine(code, depth) : truncate_vine(code, depth);
    auto it = left.find(t);
    if (it == left.end() || it->second < mult) {
      throw InconsistentError(std::string("truncated maximal ") + what + " outnumber the smaller ones");
    }
    it->second -= mult;
    if (it->second == 0) left.erase(it);
  }
  return left;
}

std::array<CanonCode, 2> exactly_two(const CodeMultiset& m, const char* what) {
  std::vector<CanonCode> out;
  for (const auto& [code, mult] : m) out.insert(out.end(), mult, code);
  if (out.size() != 2) {
    throw HypothesisError::violated("expected 2 residual maximal " + std::string(what) + ", found " +
                                    std::to_string(out.size()));
  }
  return {out[0], out[1]};
}

}  // namespace

TerminalVine decompose_vine(const SmallGraph& g, VertexMask vine, int center) {
  const std::vector<int> dist = region_distances(g, vine, center);
  const int depth = farthest(dist);
  std::vector<VertexMask> majors = long_branches(g, vine, center, dist, depth);
  if (majors.size() != 2) {
    throw PreconditionError("vine center has " + std::to_string(majors.size()) + " branches of full depth, expected 2");
  }
  TerminalVine u;
  u.code = canonical_code(g, vine);
  u.rooted = rooted_canonical_code(g, vine, center);
  u.depth = depth;
  u.majors = {rooted_at_neighbor(g, majors[0], center), rooted_at_neighbor(g, majors[1], center)};
  u.a = rooted_canonical_code(g, vine & ~majors[0], center);
  u.b = rooted_canonical_code(g, vine & ~majors[1], center);
  if (u.b < u.a) {
    std::swap(u.a, u.b);
    std::swap(u.majors[0], u.majors[1]);
  }
  u.w = rooted_canonical_code(g, vine & ~majors[0] & ~majors[1], center);
  return u;
}

TerminalVine decompose_vine(const CanonCode& vine_code) {
  const Tree t = tree_of(vine_code);
  const DiameterCenter dc = diameter_center(t);
  if (dc.centers.size() != 1) throw PreconditionError("vine code has a central edge: " + vine_code.text());
  return decompose_vine(t.graph(), t.graph().all_vertices(), dc.centers[0]);
}

TerminalEvine decompose_evine(const SmallGraph& g, VertexMask evine, int y, int z) {
  TerminalEvine a = decompose_evine_from(g, evine, y, z);
  TerminalEvine b = decompose_evine_from(g, evine, z, y);
  return evine_key(b) < evine_key(a) ? b : a;
}

TerminalEvine decompose_evine(const CanonCode& evine_code) {
  const Tree t = tree_of(evine_code);
  const DiameterCenter dc = diameter_center(t);
  if (dc.centers.size() != 2) throw PreconditionError("evine code has a central vertex: " + evine_code.text());
  return decompose_evine(t.graph(), t.graph().all_vertices(), dc.centers[0], dc.centers[1]);
}

CanonCode truncate_vine(const CanonCode& vine_code, int depth) {
  const Tree t = tree_of(vine_code);
  const DiameterCenter dc = diameter_center(t);
  if (dc.centers.size() != 1) throw PreconditionError("vine code has a central edge: " + vine_code.text());
  return canonical_code(t.graph(), within(t.distances_from(dc.centers[0]), depth));
}

CanonCode truncate_evine(const CanonCode& evine_code, int depth) {
  const Tree t = tree_of(evine_code);
  const DiameterCenter dc = diameter_center(t);
  if (dc.centers.size() != 2) throw PreconditionError("evine code has a central vertex: " + evine_code.text());
  return canonical_code(t.graph(), within(t.distances_from(dc.centers[0]), depth) |
                                       within(t.distances_from(dc.centers[1]), depth));
}

TerminalPieces extract_terminal_vines(const CodeMultiset& vines_k, const CodeMultiset& vines_k1,
                                      const CodeMultiset& evines_k, const CodeMultiset& evines_k1, int k) {
  if (k < 2) throw HypothesisError::violated("k = " + std::to_string(k) + " < 2");
  for (const auto& [code, mult] : vines_k1) {
    if (center_has_three_long_branches(code, k - 1)) {
      throw HypothesisError::violated("a maximal (k-1)-vine has three branches of length k-1 at its center");
    }
  }
  const auto u = exactly_two(residue(vines_k1, vines_k, k - 1, false, "vines"), "(k-1)-vines");
  const auto s = exactly_two(residue(evines_k1, evines_k, k - 1, true, "evines"), "(k-1)-evines");
  TerminalPieces p;
  try {
    p.u = {decompose_vine(u[0]), decompose_vine(u[1])};
    p.s = {decompose_evine(s[0]), decompose_evine(s[1])};
  } catch (const PreconditionError& e) {
    throw HypothesisError::violated(e.what());
  }
  return p;
}

OrientationResult orient_trunks(const TerminalVine& u1, const TerminalVine& u2, const TerminalEvine& s1,
                                const TerminalEvine& s2) {
  const std::array<const TerminalVine*, 2> u{&u1, &u2};
  const std::array<const TerminalEvine*, 2> s{&s1, &s2};
  const bool twins = u1.rooted == u2.rooted;

  // Each placement puts U_i into S_{perm(i)} with x_i at y or at z. There,
  // the side branch away from the trunk (C or D) is the piece without the
  // trunk's long branch, and Y or Z is the piece holding it.
  OrientationResult out;
  std::set<std::array<CanonCode, 2>> outcomes;
  for (int swap = 0; swap < 2; ++swap) {
    for (int at = 0; at < 4; ++at) {
      std::array<CanonCode, 2> trunk;
      bool ok = true;
      for (int i = 0; i < 2 && ok; ++i) {
        const TerminalEvine& e = *s[static_cast<std::size_t>(i ^ swap)];
        const bool at_y = ((at >> i) & 1) == 0;
        const CanonCode& outer = at_y ? e.c : e.d;
        const CanonCode& inner = at_y ? e.y : e.z;
        const CanonCode& vine = at_y ? e.vine_y : e.vine_z;
        const TerminalVine& v = *u[static_cast<std::size_t>(i)];
        ok = vine == v.rooted && ((outer == v.a && inner == v.b) || (outer == v.b && inner == v.a));
        trunk[static_cast<std::size_t>(i)] = inner;
      }
      if (!ok) continue;
      ++out.consistent_placements;
      if (twins && trunk[1] < trunk[0]) std::swap(trunk[0], trunk[1]);
      outcomes.insert(trunk);
    }
  }
  if (outcomes.empty()) throw HypothesisError::violated("no placement of the vines in the evines fits the codes");
  if (outcomes.size() > 1) throw HypothesisError::violated("placements disagree on a trunk piece");

  const std::array<CanonCode, 2>& trunk = *outcomes.begin();
  for (std::size_t i = 0; i < 2; ++i) {
    VineOrientation& o = out.vines[i];
    o.trunk_piece = trunk[i];
    if (u[i]->a == u[i]->b) {
      o.side = TrunkSide::kSymmetricEither;
    } else {
      o.side = trunk[i] == u[i]->a ? TrunkSide::kInA : TrunkSide::kInB;
    }
  }

  const std::set<CanonCode> pieces{u1.a, u1.b, u2.a, u2.b};
  const bool outside = !pieces.count(s1.c) || !pieces.count(s1.d) || !pieces.count(s2.c) || !pieces.count(s2.d);
  if (outside) {
    out.tag = OrientationCase::kBranchOutsidePieces;
  } else if (pieces.size() <= 2) {
    out.tag = OrientationCase::kTwoPieceClasses;
  } else if (pieces.size() == 3) {
    out.tag = OrientationCase::kThreePieceClasses;
  } else {
    out.tag = OrientationCase::kFourPieceClasses;
  }
  return out;
}

std::string trunk_side_name(TrunkSide side) {
  switch (side) {
    case TrunkSide::kInA: return "trunk-in-A";
    case TrunkSide::kInB: return "trunk-in-B";
    case TrunkSide::kSymmetricEither: return "symmetric-either";
  }
  return "?";
}

std::string orientation_case_name(OrientationCase c) {
  switch (c) {
    case OrientationCase::kBranchOutsidePieces: return "branch-outside-pieces";
    case OrientationCase::kTwoPieceClasses: return "two-piece-classes";
    case OrientationCase::kThreePieceClasses: return "three-piece-classes";
    case OrientationCase::kFourPieceClasses: return "four-piece-classes";
  }
  return "?";
}

OrientationReport orient_from_deck(const Deck& d, bool require_global) {
  DeckAnalysis a(d);
  OrientationReport rep;
  rep.n = a.n();
  rep.ell = a.ell();
  const std::optional<int> k = a.k();
  if (!k || *k < 2) {
    throw HypothesisError::violated("k = " + (k ? std::to_string(*k) : std::string("undefined")) + " < 2");
  }
  rep.k = *k;
  if (require_global) {
    const int n = a.n();
    const int ell = a.ell();
    if (n < 6 * ell + 7) {
      throw HypothesisError::violated("n = " + std::to_string(n) + " < 6l+7 = " + std::to_string(6 * ell + 7));
    }
    const int r = recognize_r(a).r;
    if (r < n - 3 * ell) {
      throw HypothesisError::violated("r = " + std::to_string(r) + " < n-3l = " + std::to_string(n - 3 * ell));
    }
    if (const std::uint64_t spi = recognize_spi_count(a); spi > 0) {
      throw HypothesisError::violated(std::to_string(spi) + " spi-center(s)");
    }
    rep.global_checked = true;
  }
  rep.pieces = extract_terminal_vines(a.maximal_vines(*k), a.maximal_vines(*k - 1), a.maximal_evines(*k),
                                      a.maximal_evines(*k - 1), *k);
  rep.result = orient_trunks(rep.pieces.u[0], rep.pieces.u[1], rep.pieces.s[0], rep.pieces.s[1]);
  return rep;
}

std::string orientation_to_text(const OrientationReport& rep) {
  std::ostringstream os;
  os << "n: " << rep.n << "\nell: " << rep.ell << "\nk: " << rep.k << "\n";
  os << "global_hypotheses: " << (rep.global_checked ? "checked" : "not checked") << "\n";
  for (std::size_t i = 0; i < 2; ++i) {
    const TerminalVine& u = rep.pieces.u[i];
    os << "U" << i + 1 << ": " << u.code.text() << " A=" << u.a.text() << " B=" << u.b.text()
       << " W=" << u.w.text() << "\n";
  }
  for (std::size_t j = 0; j < 2; ++j) {
    const TerminalEvine& s = rep.pieces.s[j];
    os << "S" << j + 1 << ": " << s.code.text() << " C=" << s.c.text() << " D=" << s.d.text()
       << " Y=" << s.y.text() << " Z=" << s.z.text() << "\n";
  }
  os << "case: " << orientation_case_name(rep.result.tag) << "\n";
  os << "consistent_placements: " << rep.result.consistent_placements << "\n";
  for (std::size_t i = 0; i < 2; ++i) {
    os << "U" << i + 1 << "_trunk: " << trunk_side_name(rep.result.vines[i].side) << "\n";
  }
  return os.str();
}

bool orientation_local_hypotheses(const Tree& t, int ell) {
  const std::optional<int> k = oracle_k(t, ell);
  return k && *k >= 2 && !contains_three_leg_spider(t, *k - 1);
}

bool orientation_global_hypotheses(const Tree& t, int ell) {
  const int n = t.order();
  return n >= 6 * ell + 7 && oracle_r(t) >= n - 3 * ell && oracle_spi_centers(t, ell).empty();
}

std::vector<std::pair<CanonCode, CanonCode>> oracle_trunk_pieces(const Tree& t, int k) {
  if (k < 2) throw PreconditionError("k must be at least 2");
  const std::vector<int> p = longest_paths(t).front();
  const int r = static_cast<int>(p.size());
  if (r < 2 * k + 1) throw PreconditionError("longest path too short for k");
  const SmallGraph& g = t.graph();
  std::vector<std::pair<CanonCode, CanonCode>> out;
  // (center, neighbor toward the near end of the path)
  for (const auto& [x, outer] : {std::pair{p[k - 1], p[k - 2]}, std::pair{p[r - k], p[r - k + 1]}}) {
    const VertexMask vine = within(t.distances_from(x), k - 1);
    const VertexMask outer_branch = g.component_of(outer, vine & ~bit(x));
    out.emplace_back(rooted_canonical_code(g, vine, x), rooted_canonical_code(g, vine & ~outer_branch, x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<CanonCode, CanonCode>> result_trunk_pieces(const TerminalPieces& p,
                                                                 const OrientationResult& r) {
  std::vector<std::pair<CanonCode, CanonCode>> out;
  for (std::size_t i = 0; i < 2; ++i) out.emplace_back(p.u[i].rooted, r.vines[i].trunk_piece);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EvineQuad> harvest_evine_quads(const Tree& t, int depth) {
  std::vector<EvineQuad> out;
  const SmallGraph& g = t.graph();
  for (const Edge& e : t.edges()) {
    const VertexMask s = within(t.distances_from(e.u), depth) | within(t.distances_from(e.v), depth);
    if (subtree_diameter(g, s) != 2 * depth + 1) continue;
    for (const auto& [y, z] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      try {
        const TerminalEvine q = decompose_evine_from(g, s, y, z);
        out.emplace_back(q.c, q.z, q.y, q.d);
      } catch (const PreconditionError&) {
        break;  // a side with zero or several long branches
      }
    }
  }
  return out;
}

std::pair<std::uint64_t, std::vector<EvineQuad>> EvinePairProperty::check() const {
  std::uint64_t premises = 0;
  std::vector<EvineQuad> bad;
  for (const auto& [depth, quads] : quads_) {
    for (const EvineQuad& q : quads) {
      const auto& [c1, z1, y1, d1] = q;
      // The partner has C2 = Y1, Z2 = D1, Y2 = C1, D2 = Z1.
      if (!quads.count(EvineQuad{y1, d1, c1, z1})) continue;
      ++premises;
      if (!(c1 == y1 && d1 == z1)) bad.push_back(q);
    }
  }
  return {premises, bad};
}

}  // namespace treedeck
