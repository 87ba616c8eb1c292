#include "treedeck/canon.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "treedeck/error.hpp"

namespace treedeck {
namespace {

void append_rooted(const SmallGraph& g, VertexMask within, int v, int parent, std::string& out) {
  VertexMask kids = g.neighbors(v) & within;
  if (parent >= 0) kids &= ~bit(parent);
  if (kids == 0) {
    out += "()";
    return;
  }
  if ((kids & (kids - 1)) == 0) {
    out += '(';
    append_rooted(g, within, lowest_vertex(kids), v, out);
    out += ')';
    return;
  }
  std::vector<std::string> child_codes;
  for_each_vertex(kids, [&](int w) {
    std::string s;
    append_rooted(g, within, w, v, s);
    child_codes.push_back(std::move(s));
  });
  std::sort(child_codes.begin(), child_codes.end());
  out += '(';
  for (const auto& s : child_codes) out += s;
  out += ')';
}

// Centers of the tree induced by `comp` via repeated leaf stripping.
VertexMask tree_centers(const SmallGraph& g, VertexMask comp) {
  VertexMask rest = comp;
  while (popcount(rest) > 2) {
    VertexMask leaves = 0;
    for_each_vertex(rest, [&](int v) {
      if (popcount(g.neighbors(v) & rest) <= 1) leaves |= bit(v);
    });
    rest &= ~leaves;
  }
  return rest;
}

std::string component_code(const SmallGraph& g, VertexMask comp) {
  const VertexMask centers = tree_centers(g, comp);
  std::string out;
  if (popcount(centers) == 1) {
    out += 'c';
    append_rooted(g, comp, lowest_vertex(centers), -1, out);
    return out;
  }
  const int a = lowest_vertex(centers);
  const int b = lowest_vertex(centers & ~bit(a));
  std::string ca;
  std::string cb;
  append_rooted(g, comp, a, b, ca);
  append_rooted(g, comp, b, a, cb);
  if (cb < ca) std::swap(ca, cb);
  out.reserve(1 + ca.size() + cb.size());
  out += 'e';
  out += ca;
  out += cb;
  return out;
}

std::string forest_code(const SmallGraph& g, VertexMask subset) {
  std::vector<std::string> comps;
  for (VertexMask c : g.components(subset)) comps.push_back(component_code(g, c));
  std::sort(comps.begin(), comps.end());
  std::string out = "F";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i > 0) out += '.';
    out += comps[i];
  }
  return out;
}

// Lexicographically minimal column-major upper-triangle adjacency string
// over all vertex orders, with prefix pruning.
class CyclicCanonSearch {
 public:
  explicit CyclicCanonSearch(const SmallGraph& g) : g_(g), n_(g.order()) {
    perm_.assign(static_cast<std::size_t>(n_), -1);
    current_.reserve(static_cast<std::size_t>(n_ * (n_ - 1) / 2));
  }

  std::string run() {
    if (n_ > 0) search(0, 0, true);
    return best_;
  }

 private:
  void search(int pos, VertexMask used, bool tied) {
    if (pos == n_) {
      if (!have_best_ || current_ < best_) {
        best_ = current_;
        have_best_ = true;
      }
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if (used & bit(v)) continue;
      const std::size_t start = current_.size();
      for (int j = 0; j < pos; ++j) current_ += g_.adjacent(perm_[j], v) ? '1' : '0';
      bool still_tied = tied;
      bool prune = false;
      if (have_best_ && tied) {
        const int cmp = current_.compare(start, std::string::npos, best_, start, current_.size() - start);
        if (cmp > 0) prune = true;
        if (cmp < 0) still_tied = false;
      }
      if (!prune) {
        perm_[pos] = v;
        search(pos + 1, used | bit(v), have_best_ && still_tied);
      }
      current_.resize(start);
    }
  }

  const SmallGraph& g_;
  int n_;
  std::vector<int> perm_;
  std::string current_;
  std::string best_;
  bool have_best_ = false;
};

std::string cyclic_code(const SmallGraph& g) {
  if (g.order() > kMaxCyclicCanonVertices) {
    throw SizeLimitError("graph too large for cyclic canonicalization (" +
                         std::to_string(g.order()) + " > " +
                         std::to_string(kMaxCyclicCanonVertices) + " vertices)");
  }
  return "G" + std::to_string(g.order()) + ":" + CyclicCanonSearch(g).run();
}

// Parses one balanced rooted string starting at pos into g, attaching its
// root to `parent` (or none). Returns the root vertex id.
int parse_rooted(const std::string& s, std::size_t& pos, std::vector<Edge>& edges, int& next,
                 int parent) {
  if (pos >= s.size() || s[pos] != '(') throw ParseError("canonical code: expected '('");
  const int me = next++;
  if (parent >= 0) edges.push_back({parent, me});
  ++pos;
  while (pos < s.size() && s[pos] == '(') parse_rooted(s, pos, edges, next, me);
  if (pos >= s.size() || s[pos] != ')') throw ParseError("canonical code: expected ')'");
  ++pos;
  return me;
}

}  // namespace

CanonCode canonical_code(const SmallGraph& g, VertexMask subset) {
  const int n = popcount(subset);
  const int m = g.induced_edge_count(subset);
  const int comps = static_cast<int>(g.components(subset).size());
  if (m == n - comps) return CanonCode(forest_code(g, subset));
  return CanonCode(cyclic_code(g.induced(subset)));
}

CanonCode canonical_code(const SmallGraph& g) { return canonical_code(g, g.all_vertices()); }

CanonCode canonical_code(const Tree& t) { return CanonCode(forest_code(t.graph(), t.graph().all_vertices())); }

CanonCode rooted_canonical_code(const SmallGraph& g, VertexMask subset, int root) {
  std::string out = "R";
  append_rooted(g, subset, root, -1, out);
  return CanonCode(std::move(out));
}

CanonCode rooted_canonical_code(const RootedTree& r) {
  const SmallGraph& g = r.tree().graph();
  return rooted_canonical_code(g, g.all_vertices(), r.root());
}

bool is_isomorphic(const SmallGraph& a, const SmallGraph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) {
    // Still validate size limits the way canonical_code would.
    (void)canonical_code(a);
    (void)canonical_code(b);
    return false;
  }
  return canonical_code(a) == canonical_code(b);
}

SmallGraph decode_graph(const CanonCode& code) {
  const std::string& s = code.text();
  if (s.empty()) throw ParseError("canonical code: empty");
  if (s[0] == 'G') {
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("canonical code: missing ':'");
    const int n = std::stoi(s.substr(1, colon - 1));
    const std::string bits = s.substr(colon + 1);
    if (static_cast<int>(bits.size()) != n * (n - 1) / 2) {
      throw ParseError("canonical code: wrong adjacency length");
    }
    SmallGraph g(n);
    std::size_t k = 0;
    for (int i = 1; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (bits[k++] == '1') g.add_edge(j, i);
      }
    }
    return g;
  }
  if (s[0] != 'F') throw ParseError("canonical code: not a graph code: " + s);
  std::vector<Edge> edges;
  int next = 0;
  std::size_t pos = 1;
  while (pos < s.size()) {
    if (s[pos] == '.') {
      ++pos;
      continue;
    }
    if (s[pos] == 'c') {
      ++pos;
      parse_rooted(s, pos, edges, next, -1);
    } else if (s[pos] == 'e') {
      ++pos;
      const int a = parse_rooted(s, pos, edges, next, -1);
      const int b = parse_rooted(s, pos, edges, next, -1);
      edges.push_back({a, b});
    } else {
      throw ParseError("canonical code: unexpected character in " + s);
    }
  }
  return SmallGraph::from_edges(next, edges);
}

RootedTree decode_rooted(const CanonCode& code) {
  const std::string& s = code.text();
  if (s.empty() || s[0] != 'R') throw ParseError("canonical code: not a rooted code: " + s);
  std::vector<Edge> edges;
  int next = 0;
  std::size_t pos = 1;
  parse_rooted(s, pos, edges, next, -1);
  if (pos != s.size()) throw ParseError("canonical code: trailing characters in " + s);
  return RootedTree(Tree(next, edges), 0);
}

int code_order(const CanonCode& code) {
  const std::string& s = code.text();
  if (!s.empty() && s[0] == 'G') return std::stoi(s.substr(1, s.find(':') - 1));
  return static_cast<int>(std::count(s.begin(), s.end(), '('));
}

bool code_is_connected(const CanonCode& code) {
  const std::string& s = code.text();
  if (!s.empty() && s[0] == 'G') return decode_graph(code).is_connected();
  if (!s.empty() && s[0] == 'R') return true;
  return s.size() > 1 && s.find('.') == std::string::npos;
}

int code_diameter(const CanonCode& code) {
  const std::string& s = code.text();
  if (s.size() < 2 || s[0] != 'F' || s.find('.') != std::string::npos) {
    throw PreconditionError("code_diameter needs a tree code, got " + s);
  }
  int depth = 0;
  int deepest = 0;
  for (char c : s) {
    if (c == '(') deepest = std::max(deepest, ++depth);
    if (c == ')') --depth;
  }
  // Centered trees have height deepest-1 around the center; bicentral ones
  // add the central edge.
  return 2 * (deepest - 1) + (s[1] == 'e' ? 1 : 0);
}

}  // namespace treedeck
