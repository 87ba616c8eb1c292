#include "treedeck/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "treedeck/error.hpp"

namespace treedeck {

SmallGraph::SmallGraph(int n) {
  if (n < 0 || n > kMaxGraphVertices) {
    throw SizeLimitError("graph order " + std::to_string(n) + " outside [0, 32]");
  }
  adj_.assign(static_cast<std::size_t>(n), 0);
}

SmallGraph SmallGraph::from_edges(int n, std::span<const Edge> edges) {
  SmallGraph g(n);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

int SmallGraph::edge_count() const {
  int twice = 0;
  for (VertexMask m : adj_) twice += std::popcount(m);
  return twice / 2;
}

VertexMask SmallGraph::all_vertices() const {
  const int n = order();
  return n == 32 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}

void SmallGraph::add_edge(int u, int v) {
  const int n = order();
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw PreconditionError("edge endpoint out of range: " + std::to_string(u) + " " +
                            std::to_string(v));
  }
  if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
  if (adjacent(u, v)) {
    throw PreconditionError("parallel edge " + std::to_string(u) + " " + std::to_string(v));
  }
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

std::vector<Edge> SmallGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < order(); ++u) {
    for_each_vertex(adj_[u] & ~((bit(u) << 1) - 1), [&](int v) { out.push_back({u, v}); });
  }
  return out;
}

SmallGraph SmallGraph::induced(VertexMask mask) const {
  std::vector<int> index(adj_.size(), -1);
  int next = 0;
  for_each_vertex(mask, [&](int v) { index[v] = next++; });
  SmallGraph h(next);
  for_each_vertex(mask, [&](int v) {
    VertexMask nb = 0;
    for_each_vertex(adj_[v] & mask, [&](int w) { nb |= bit(index[w]); });
    h.adj_[index[v]] = nb;
  });
  return h;
}

VertexMask SmallGraph::component_of(int v, VertexMask within) const {
  VertexMask seen = bit(v);
  VertexMask frontier = seen;
  while (frontier != 0) {
    VertexMask next = 0;
    for_each_vertex(frontier, [&](int u) { next |= adj_[u]; });
    next &= within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

std::vector<VertexMask> SmallGraph::components(VertexMask within) const {
  std::vector<VertexMask> out;
  VertexMask rest = within;
  while (rest != 0) {
    const VertexMask c = component_of(lowest_vertex(rest), within);
    out.push_back(c);
    rest &= ~c;
  }
  return out;
}

int SmallGraph::induced_edge_count(VertexMask mask) const {
  int twice = 0;
  for_each_vertex(mask, [&](int v) { twice += std::popcount(adj_[v] & mask); });
  return twice / 2;
}

bool SmallGraph::is_connected() const {
  return order() == 0 || component_of(0, all_vertices()) == all_vertices();
}

bool SmallGraph::is_acyclic() const {
  return edge_count() == order() - static_cast<int>(components().size());
}

// ---------------------------------------------------------------------------

Tree::Tree(int n, std::span<const Edge> edges) : Tree(SmallGraph::from_edges(n, edges)) {}

Tree::Tree(SmallGraph graph) : graph_(std::move(graph)) {
  const int n = graph_.order();
  if (n < 1 || n > kMaxTreeVertices) {
    throw SizeLimitError("tree order " + std::to_string(n) + " outside [1, 24]");
  }
  if (graph_.edge_count() != n - 1 || !graph_.is_connected()) {
    throw PreconditionError("edge set is not a spanning tree");
  }
}

std::vector<int> Tree::distances_from(int source) const {
  std::vector<int> dist(static_cast<std::size_t>(order()), -1);
  dist[source] = 0;
  std::queue<int> q;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for_each_vertex(neighbors(u), [&](int w) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    });
  }
  return dist;
}

std::vector<int> Tree::path_between(int from, int to) const {
  const std::vector<int> dist = distances_from(to);
  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    int step = -1;
    for_each_vertex(neighbors(cur), [&](int w) {
      if (dist[w] == dist[cur] - 1) step = w;
    });
    cur = step;
    path.push_back(cur);
  }
  return path;
}

Tree Tree::relabeled(std::span<const int> perm) const {
  std::vector<Edge> e;
  for (const Edge& edge : edges()) e.push_back({perm[edge.u], perm[edge.v]});
  return Tree(order(), e);
}

// ---------------------------------------------------------------------------

RootedTree::RootedTree(Tree tree, int root) : tree_(std::move(tree)), root_(root) {
  if (root_ < 0 || root_ >= tree_.order()) {
    throw PreconditionError("root " + std::to_string(root) + " out of range");
  }
}

int RootedTree::height() const {
  const auto d = depths();
  return *std::max_element(d.begin(), d.end());
}

RootedTree rooted_subtree(const SmallGraph& g, VertexMask mask, int root) {
  if (!(mask & bit(root))) throw PreconditionError("root not in vertex set");
  int new_root = popcount(mask & (bit(root) - 1));
  return RootedTree(Tree(g.induced(mask)), new_root);
}

// ---------------------------------------------------------------------------

Tree read_tree(std::istream& in) {
  long long n = 0;
  if (!(in >> n)) throw ParseError("tree file: missing vertex count");
  if (n < 1 || n > kMaxTreeVertices) {
    throw SizeLimitError("tree order " + std::to_string(n) + " outside [1, 24]");
  }
  std::vector<Edge> edges;
  for (long long i = 0; i + 1 < n; ++i) {
    long long u = 0;
    long long v = 0;
    if (!(in >> u >> v)) throw ParseError("tree file: expected " + std::to_string(n - 1) + " edges");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError("tree file: vertex id out of range on edge " + std::to_string(i + 1));
    }
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  try {
    return Tree(static_cast<int>(n), edges);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("tree file: ") + e.what());
  }
}

void write_tree(std::ostream& out, const Tree& t) {
  out << t.order() << '\n';
  for (const Edge& e : t.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string tree_to_text(const Tree& t) {
  std::ostringstream os;
  write_tree(os, t);
  return os.str();
}

Tree parse_tree(const std::string& text) {
  std::istringstream is(text);
  return read_tree(is);
}

Tree path_tree(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Tree(n, e);
}

Tree star_tree(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Tree(leaves + 1, e);
}

Tree spider_tree(std::span<const int> legs) {
  std::vector<Edge> e;
  int next = 1;
  for (int len : legs) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      e.push_back({prev, next});
      prev = next++;
    }
  }
  return Tree(next, e);
}

Tree attach_path(const Tree& t, int at, int length) {
  std::vector<Edge> e = t.edges();
  int prev = at;
  int next = t.order();
  for (int i = 0; i < length; ++i) {
    e.push_back({prev, next});
    prev = next++;
  }
  return Tree(next, e);
}

Tree attach_leaves(const Tree& t, int at, int count) {
  std::vector<Edge> e = t.edges();
  int next = t.order();
  for (int i = 0; i < count; ++i) e.push_back({at, next++});
  return Tree(next, e);
}

}  // namespace treedeck
