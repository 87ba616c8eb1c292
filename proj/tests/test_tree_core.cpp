#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support/brute_force.hpp"
#include "treedeck/canon.hpp"
#include "treedeck/enumerate.hpp"
#include "treedeck/error.hpp"
#include "treedeck/structure.hpp"

using namespace treedeck;
using treedeck::testing::brute_isomorphic;

namespace {

SmallGraph graph_of(int n, std::initializer_list<Edge> edges) {
  std::vector<Edge> e(edges);
  return SmallGraph::from_edges(n, e);
}

Tree tree_of(int n, std::initializer_list<Edge> edges) {
  std::vector<Edge> e(edges);
  return Tree(n, e);
}

// Random forest: random tree on n vertices with some edges removed.
SmallGraph random_forest(int n, Rng& rng) {
  const Tree t = random_tree(n, rng);
  SmallGraph g(n);
  for (const Edge& e : t.edges()) {
    if (rng.below(4) != 0) g.add_edge(e.u, e.v);
  }
  return g;
}

SmallGraph random_relabel(const SmallGraph& g, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(g.order()));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = g.order() - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
  }
  SmallGraph h(g.order());
  for (const Edge& e : g.edges()) h.add_edge(perm[e.u], perm[e.v]);
  return h;
}

}  // namespace

TEST_CASE("tree construction validates its invariants") {
  CHECK_THROWS_AS(tree_of(3, {{0, 1}}), PreconditionError);
  CHECK_THROWS_AS(tree_of(3, {{0, 1}, {0, 1}}), PreconditionError);
  CHECK_THROWS_AS(tree_of(4, {{0, 1}, {1, 2}, {2, 0}}), PreconditionError);
  CHECK_THROWS_AS(tree_of(2, {{0, 0}}), PreconditionError);
  CHECK_THROWS_AS(path_tree(25), SizeLimitError);
  CHECK_NOTHROW(path_tree(24));
}

TEST_CASE("tree text format round trip and parse errors") {
  const Tree t = attach_leaves(path_tree(5), 2, 2);
  CHECK(parse_tree(tree_to_text(t)) == t);
  CHECK_THROWS_AS(parse_tree("3\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_tree("3\n0 1\n1 7\n"), ParseError);
  CHECK_THROWS_AS(parse_tree("3\n0 1\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_tree(""), ParseError);
  CHECK(parse_tree("1\n").order() == 1);
}

TEST_CASE("canonical_code: small named cases") {
  const SmallGraph p3a = graph_of(3, {{0, 1}, {1, 2}});
  const SmallGraph p3b = graph_of(3, {{1, 0}, {0, 2}});
  const SmallGraph k1k2 = graph_of(3, {{0, 1}});
  CHECK(canonical_code(p3a) == canonical_code(p3b));
  CHECK(canonical_code(p3a) != canonical_code(k1k2));

  // Chair (spider 2,1,1) plus a leaf on a leg tip, in two labelings.
  const SmallGraph chair1 = graph_of(6, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}});
  const SmallGraph chair2 = graph_of(6, {{5, 4}, {4, 3}, {4, 0}, {0, 2}, {2, 1}});
  CHECK(canonical_code(chair1) == canonical_code(chair2));

  const SmallGraph c4 = graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const SmallGraph p4 = graph_of(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(is_isomorphic(p4, graph_of(4, {{2, 0}, {0, 3}, {3, 1}})));
  CHECK_FALSE(is_isomorphic(star_tree(3).graph(), p4));
  CHECK_FALSE(is_isomorphic(c4, p4));
  CHECK(canonical_code(SmallGraph(0)).text() == "F");
}

TEST_CASE("canonical_code rejects large cyclic graphs") {
  SmallGraph cycle(11);
  for (int i = 0; i < 11; ++i) cycle.add_edge(i, (i + 1) % 11);
  CHECK_THROWS_WITH_AS(canonical_code(cycle), doctest::Contains("too large for cyclic"),
                       SizeLimitError);
  // Forests have no such cap.
  CHECK_NOTHROW(canonical_code(path_tree(24)));
}

TEST_CASE("canonical codes decode back to an isomorphic graph") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.between(1, 16);
    const SmallGraph g = random_forest(n, rng);
    const CanonCode code = canonical_code(g);
    const SmallGraph back = decode_graph(code);
    CHECK(canonical_code(back) == code);
    CHECK(code_order(code) == n);
    CHECK(code_is_connected(code) == g.is_connected());
  }
  const SmallGraph c4k1 = graph_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(canonical_code(decode_graph(canonical_code(c4k1))) == canonical_code(c4k1));
  CHECK_FALSE(code_is_connected(canonical_code(c4k1)));
}

TEST_CASE("all 1024 labeled 5-vertex graphs collapse to 34 classes") {
  const auto graphs = treedeck::testing::all_labeled_graphs(5);
  REQUIRE(graphs.size() == 1024);
  // Oracle: brute-force partition into isomorphism classes.
  CHECK(treedeck::testing::brute_class_count(graphs) == 34);
  std::set<CanonCode> codes;
  for (const auto& g : graphs) codes.insert(canonical_code(g));
  CHECK(codes.size() == 34);
  CHECK(enumerate_all_graphs(5).size() == 34);
}

TEST_CASE("canonical code equality matches brute force on all graphs up to 6 vertices") {
  // Every labeled graph is brute-isomorphic to the representative of its
  // code class, and representatives of distinct codes are pairwise
  // non-isomorphic. Together: equal codes <=> isomorphic, for every pair.
  const std::vector<std::size_t> class_counts = {1, 2, 4, 11, 34, 156};
  for (int n = 1; n <= 6; ++n) {
    std::map<CanonCode, SmallGraph> reps;
    for (const auto& g : treedeck::testing::all_labeled_graphs(n)) {
      const CanonCode code = canonical_code(g);
      auto [it, inserted] = reps.emplace(code, g);
      if (!inserted) CHECK(brute_isomorphic(g, it->second));
    }
    CHECK(reps.size() == class_counts[n - 1]);
    for (auto i = reps.begin(); i != reps.end(); ++i) {
      for (auto j = std::next(i); j != reps.end(); ++j) {
        CHECK_FALSE(brute_isomorphic(i->second, j->second));
      }
    }
  }
}

TEST_CASE("7-vertex graphs: class count and relabeling invariance") {
  const auto seven = enumerate_all_graphs(7);
  CHECK(seven.size() == 1044);
  Rng rng(3);
  for (std::size_t i = 0; i < seven.size(); ++i) {
    const SmallGraph h = random_relabel(seven[i], rng);
    CHECK(canonical_code(h) == canonical_code(seven[i]));
  }
}

TEST_CASE("canonical codes agree with brute force on 1000 random forest pairs") {
  Rng rng(11);
  int iso_pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = rng.between(1, 16);
    const SmallGraph a = random_forest(n, rng);
    // Half the time compare with a relabeled copy, otherwise with a fresh forest.
    const SmallGraph b = trial % 2 == 0 ? random_relabel(a, rng) : random_forest(n, rng);
    const bool codes_equal = canonical_code(a) == canonical_code(b);
    if (n <= 9) {
      CHECK(codes_equal == brute_isomorphic(a, b));
    } else if (trial % 2 == 0) {
      CHECK(codes_equal);
    } else if (codes_equal) {
      // Equal codes must be witnessed by an actual isomorphism: decode both.
      CHECK(canonical_code(decode_graph(canonical_code(a))) == canonical_code(b));
    }
    iso_pairs += codes_equal ? 1 : 0;
  }
  CHECK(iso_pairs >= 500);
}

TEST_CASE("rooted canonical codes") {
  const Tree p3 = path_tree(3);
  CHECK(rooted_canonical_code(RootedTree(p3, 0)) != rooted_canonical_code(RootedTree(p3, 1)));
  CHECK(rooted_canonical_code(RootedTree(p3, 0)) == rooted_canonical_code(RootedTree(p3, 2)));
  CHECK(rooted_canonical_code(RootedTree(Tree(), 0)).text() == "R()");
  CHECK(rooted_canonical_code(RootedTree(Tree(), 0)) != canonical_code(Tree()));
  const RootedTree back = decode_rooted(rooted_canonical_code(RootedTree(p3, 1)));
  CHECK(back.root() == 0);
  CHECK(back.tree().degree(0) == 2);

  // Exhaustive over rooted trees with <= 6 vertices.
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::pair<Tree, int>> rooted;
    for (const Tree& t : enumerate_free_trees(n)) {
      for (int r = 0; r < n; ++r) rooted.emplace_back(t, r);
    }
    for (std::size_t i = 0; i < rooted.size(); ++i) {
      for (std::size_t j = i; j < rooted.size(); ++j) {
        const auto& [ta, ra] = rooted[i];
        const auto& [tb, rb] = rooted[j];
        const bool same = rooted_canonical_code(RootedTree(ta, ra)) ==
                          rooted_canonical_code(RootedTree(tb, rb));
        CHECK(same == brute_isomorphic(ta.graph(), tb.graph(), ra, rb));
      }
    }
  }
}

TEST_CASE("enumerate_free_trees counts and distinctness") {
  CHECK(enumerate_free_trees(4).size() == 2);
  CHECK(enumerate_free_trees(7).size() == 11);
  const auto levels = enumerate_free_trees_upto(13);
  const std::vector<std::size_t> expected = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(levels[i].size() == expected[i]);
    std::set<CanonCode> codes;
    for (const Tree& t : levels[i]) {
      CHECK(t.order() == static_cast<int>(i) + 1);
      codes.insert(canonical_code(t));
    }
    CHECK(codes.size() == levels[i].size());
  }
  CHECK_THROWS_AS(enumerate_free_trees(19), SizeLimitError);
  CHECK_THROWS_AS(enumerate_free_trees(0), SizeLimitError);
}

TEST_CASE("enumerate_free_trees matches the Prufer dedup oracle up to 8 vertices") {
  for (int n = 3; n <= 8; ++n) {
    std::set<CanonCode> classes;
    std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
    while (true) {
      classes.insert(canonical_code(tree_from_prufer(seq)));
      int i = 0;
      while (i < n - 2 && ++seq[i] == n) seq[i++] = 0;
      if (i == n - 2) break;
    }
    std::set<CanonCode> enumerated;
    for (const Tree& t : enumerate_free_trees(n)) enumerated.insert(canonical_code(t));
    CHECK(classes == enumerated);
  }
}

TEST_CASE("diameter_center") {
  const auto p5 = diameter_center(path_tree(5));
  CHECK(p5.diameter == 4);
  CHECK(p5.centers == std::vector<int>{2});
  const auto p6 = diameter_center(path_tree(6));
  CHECK(p6.diameter == 5);
  CHECK(p6.centers == std::vector<int>{2, 3});
  const std::vector<int> legs{3, 3, 3};
  const auto s333 = diameter_center(spider_tree(legs));
  CHECK(s333.diameter == 6);
  CHECK(s333.centers == std::vector<int>{0});

  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Tree t = random_tree(rng.between(1, 20), rng);
    const auto dc = diameter_center(t);
    CHECK(static_cast<int>(dc.centers.size()) == 1 + dc.diameter % 2);
    for (int c : dc.centers) {
      const auto d = t.distances_from(c);
      CHECK(*std::max_element(d.begin(), d.end()) == (dc.diameter + 1) / 2);
    }
    if (dc.centers.size() == 2) CHECK(t.graph().adjacent(dc.centers[0], dc.centers[1]));
  }
}

TEST_CASE("longest_path_order") {
  CHECK(longest_path_order(path_tree(10)) == 10);
  CHECK(longest_path_order(star_tree(5)) == 3);
  const std::vector<int> legs{3, 3, 3};
  CHECK(longest_path_order(spider_tree(legs)) == 7);
  CHECK(longest_path_order(Tree()) == 1);
}

TEST_CASE("offshoots_at") {
  const Tree p5 = path_tree(5);
  const std::vector<int> spine5{0, 1, 2, 3, 4};
  for (int v : spine5) CHECK(offshoots_at(p5, spine5, v).empty());

  // P9 with a leaf at v3 (vertex index 2).
  const Tree t = attach_leaves(path_tree(9), 2, 1);
  const std::vector<int> spine9{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const auto shoots = offshoots_at(t, spine9, 2);
  REQUIRE(shoots.size() == 1);
  CHECK(shoots[0].order() == 1);
  CHECK(shoots[0].length() == 1);

  const Tree cat = attach_leaves(path_tree(9), 3, 2);
  const auto two = offshoots_at(cat, spine9, 3);
  REQUIRE(two.size() == 2);
  CHECK(two[0].order() == 1);
  CHECK(two[1].order() == 1);

  const Tree longer = attach_path(path_tree(9), 4, 3);
  const auto deep = offshoots_at(longer, spine9, 4);
  REQUIRE(deep.size() == 1);
  CHECK(deep[0].length() == 3);

  CHECK_THROWS_AS(offshoots_at(t, spine9, 9), PreconditionError);
  const std::vector<int> broken{0, 2};
  CHECK_THROWS_AS(offshoots_at(t, broken, 0), PreconditionError);
}

TEST_CASE("enumerate_connected_subtrees") {
  CHECK(enumerate_connected_subtrees(path_tree(3), 3).size() == 6);
  CHECK(enumerate_connected_subtrees(star_tree(3), 2).size() == 7);
  for (int n = 1; n <= 14; ++n) {
    CHECK(enumerate_connected_subtrees(path_tree(n), n).size() ==
          static_cast<std::size_t>(n * (n + 1) / 2));
  }
  // Each subset once, and each connected: compare with brute force over all masks.
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Tree t = random_tree(rng.between(1, 12), rng);
    const int cap = rng.between(1, t.order());
    const auto subsets = enumerate_connected_subtrees(t, cap);
    std::set<VertexMask> unique(subsets.begin(), subsets.end());
    CHECK(unique.size() == subsets.size());
    std::size_t brute = 0;
    for (VertexMask m = 1; m < (VertexMask{1} << t.order()); ++m) {
      if (popcount(m) <= cap && t.graph().component_of(lowest_vertex(m), m) == m) ++brute;
    }
    CHECK(brute == subsets.size());
  }
}

TEST_CASE("count_induced_copies") {
  CHECK(count_induced_copies(path_tree(3).graph(), path_tree(5).graph()) == 3);
  CHECK(count_induced_copies(SmallGraph(1), path_tree(7).graph()) == 7);
  CHECK(count_induced_copies(path_tree(4).graph(), path_tree(4).graph()) == 1);
  // Disconnected pattern: K2 + K1 inside P4 -> subsets {0,1,3}, {0,2,3}.
  const SmallGraph k2k1 = graph_of(3, {{0, 1}});
  CHECK(count_induced_copies(k2k1, path_tree(4).graph()) == 2);
  // Cross-check against exhaustive subset counting.
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const Tree g = random_tree(rng.between(2, 11), rng);
    const Tree f = random_tree(rng.between(1, std::min(5, g.order())), rng);
    std::uint64_t brute = 0;
    for (VertexMask m = 1; m < (VertexMask{1} << g.order()); ++m) {
      if (popcount(m) == f.order() && brute_isomorphic(g.graph().induced(m), f.graph())) ++brute;
    }
    CHECK(count_induced_copies(f.graph(), g.graph()) == brute);
  }
}

TEST_CASE("legs and spider detection") {
  const std::vector<int> legs{3, 1, 2};
  CHECK(leg_lengths(spider_tree(legs)) == std::vector<int>{1, 2, 3});
  CHECK(leg_lengths(path_tree(6)).empty());
  const std::vector<int> sp{2, 2, 2};
  CHECK(contains_three_leg_spider(spider_tree(sp), 2));
  CHECK_FALSE(contains_three_leg_spider(spider_tree(sp), 3));
  CHECK_FALSE(contains_three_leg_spider(star_tree(6), 2));
  CHECK(longest_paths(path_tree(4)).size() == 1);
  CHECK(longest_paths(star_tree(3)).size() == 3);
}

TEST_CASE("code_diameter matches diameter_center") {
  for (int n = 1; n <= 10; ++n) {
    for (const Tree& t : enumerate_free_trees(n)) {
      CHECK(code_diameter(canonical_code(t)) == diameter_center(t).diameter);
    }
  }
}
