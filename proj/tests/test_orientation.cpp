#include "doctest.h"
#include "treedeck/enumerate.hpp"
#include "treedeck/error.hpp"
#include "treedeck/invariants.hpp"
#include "treedeck/orientation.hpp"
#include "treedeck/structure.hpp"

using namespace treedeck;

namespace {

Deck deck_of(const Tree& t, int ell) { return compute_deck(t, t.order() - ell); }

CanonCode rooted_path(int n) { return rooted_canonical_code(RootedTree(path_tree(n), 0)); }

// Rooted at the center of a path on 2d+1 vertices.
CanonCode centered_path(int d) { return rooted_canonical_code(RootedTree(path_tree(2 * d + 1), d)); }

VertexMask ball_mask(const Tree& t, int center, int radius) {
  VertexMask m = 0;
  const std::vector<int> d = t.distances_from(center);
  for (int v = 0; v < t.order(); ++v) {
    if (d[v] <= radius) m |= bit(v);
  }
  return m;
}

// P12 on v1..v12 plus a leaf at v2.
Tree p12_leaf() { return attach_leaves(path_tree(12), 1, 1); }

// Root with one child that has two leaf children.
CanonCode root_child_cherry() { return rooted_canonical_code(RootedTree(attach_leaves(path_tree(2), 1, 2), 0)); }

}  // namespace

TEST_CASE("truncation") {
  CHECK(truncate_vine(canonical_code(path_tree(7)), 2) == canonical_code(path_tree(5)));
  CHECK(truncate_evine(canonical_code(path_tree(8)), 2) == canonical_code(path_tree(6)));
  CHECK(truncate_vine(canonical_code(star_tree(3)), 0) == canonical_code(path_tree(1)));
  CHECK_THROWS_AS(truncate_vine(canonical_code(path_tree(4)), 1), PreconditionError);
}

TEST_CASE("decompose_vine") {
  for (int k = 2; k <= 5; ++k) {
    const TerminalVine u = decompose_vine(canonical_code(path_tree(2 * k - 1)));
    CHECK(u.depth == k - 1);
    CHECK(u.a == rooted_path(k));
    CHECK(u.b == rooted_path(k));
    CHECK(u.w == rooted_path(1));
  }
  // U1 of P12 + leaf at v2: the ball of radius 2 around v3.
  const Tree t = p12_leaf();
  const TerminalVine u = decompose_vine(t.graph(), ball_mask(t, 2, 2), 2);
  CHECK(u.code == canonical_code(attach_leaves(path_tree(5), 1, 1)));
  CHECK(((u.a == rooted_path(3) && u.b == root_child_cherry()) || (u.b == rooted_path(3) && u.a == root_child_cherry())));
  CHECK(u.a <= u.b);
  CHECK(u.w == rooted_path(1));
  CHECK_THROWS_AS(decompose_vine(canonical_code(spider_tree(std::vector<int>{2, 2, 2}))), PreconditionError);
  CHECK_THROWS_AS(decompose_vine(canonical_code(path_tree(4))), PreconditionError);
}

TEST_CASE("decompose_evine") {
  for (int k = 2; k <= 5; ++k) {
    const TerminalEvine s = decompose_evine(canonical_code(path_tree(2 * k)));
    CHECK(s.depth == k - 1);
    CHECK(s.c == rooted_path(k));
    CHECK(s.d == rooted_path(k));
    CHECK(s.y == rooted_path(k));
    CHECK(s.z == rooted_path(k));
    CHECK(s.vine_y == centered_path(k - 1));
  }
  // P6 with a leaf on the vertex next to the central edge: Y keeps it.
  const Tree t = attach_leaves(path_tree(6), 1, 1);
  const TerminalEvine s = decompose_evine(canonical_code(t));
  CHECK(s.depth == 2);
  const CanonCode with_leaf = rooted_canonical_code(RootedTree(attach_leaves(path_tree(3), 1, 1), 0));
  CHECK(((s.c == with_leaf && s.z == rooted_path(3)) || (s.d == with_leaf && s.y == rooted_path(3))));
  CHECK_THROWS_AS(decompose_evine(canonical_code(path_tree(5))), PreconditionError);
}

TEST_CASE("extract_terminal_vines examples") {
  {
    // k is 4 here: the largest 4-evine has 11 < 12 vertices, the only 5-evine is T.
    DeckAnalysis a(deck_of(p12_leaf(), 1));
    REQUIRE(a.k() == 4);
    const TerminalPieces p =
        extract_terminal_vines(a.maximal_vines(4), a.maximal_vines(3), a.maximal_evines(4), a.maximal_evines(3), 4);
    const std::set<CanonCode> got{p.u[0].code, p.u[1].code};
    CHECK(got == std::set<CanonCode>{canonical_code(attach_leaves(path_tree(7), 1, 1)), canonical_code(path_tree(7))});
  }
  {
    DeckAnalysis a(deck_of(path_tree(17), 1));
    REQUIRE(a.k() == 6);
    const TerminalPieces p =
        extract_terminal_vines(a.maximal_vines(6), a.maximal_vines(5), a.maximal_evines(6), a.maximal_evines(5), 6);
    CHECK(p.u[0].code == canonical_code(path_tree(11)));
    CHECK(p.u[1].code == canonical_code(path_tree(11)));
    CHECK(p.s[0].code == canonical_code(path_tree(12)));
  }
  {
    // Caterpillar with leaves only at the middle: the terminal vines are paths.
    const Tree t = attach_leaves(path_tree(13), 6, 4);
    DeckAnalysis a(deck_of(t, 1));
    REQUIRE(a.k() == 4);
    const int k = 4;
    const TerminalPieces p = extract_terminal_vines(a.maximal_vines(k), a.maximal_vines(k - 1), a.maximal_evines(k),
                                                    a.maximal_evines(k - 1), k);
    CHECK(p.u[0].code == canonical_code(path_tree(2 * k - 1)));
    CHECK(p.u[1].code == canonical_code(path_tree(2 * k - 1)));
  }
  // A vine center with three long branches stops the extraction.
  const CodeMultiset spider{{canonical_code(spider_tree(std::vector<int>{2, 2, 2})), 1}};
  CHECK_THROWS_WITH_AS(extract_terminal_vines({}, spider, {}, {}, 3), doctest::Contains("hypotheses violated"),
                       HypothesisError);
  CHECK_THROWS_WITH_AS(extract_terminal_vines({}, {{canonical_code(path_tree(5)), 3}}, {}, {}, 3),
                       doctest::Contains("expected 2 residual"), HypothesisError);
}

TEST_CASE("orient examples") {
  const OrientationReport p17 = orient_from_deck(deck_of(path_tree(17), 1));
  CHECK(p17.global_checked);
  CHECK(p17.result.vines[0].side == TrunkSide::kSymmetricEither);
  CHECK(p17.result.vines[1].side == TrunkSide::kSymmetricEither);
  CHECK(p17.result.tag == OrientationCase::kTwoPieceClasses);

  const Tree t = p12_leaf();
  const OrientationReport rep = orient_from_deck(deck_of(t, 1));
  CHECK(rep.k == 4);
  CHECK(result_trunk_pieces(rep.pieces, rep.result) == oracle_trunk_pieces(t, 4));
  for (std::size_t i = 0; i < 2; ++i) {
    if (rep.pieces.u[i].code == canonical_code(path_tree(7))) {
      CHECK(rep.result.vines[i].side == TrunkSide::kSymmetricEither);
    } else {
      // The trunk runs through the rooted path piece, not the side with the extra leaf.
      CHECK(rep.result.vines[i].trunk_piece == rooted_path(4));
      CHECK(rep.result.vines[i].side != TrunkSide::kSymmetricEither);
    }
  }
  CHECK(rep.result.consistent_placements >= 1);

  // Global conditions: n = 13 < 6l+7 = 19 for l = 2.
  CHECK_THROWS_WITH_AS(orient_from_deck(deck_of(t, 2)), doctest::Contains("6l+7"), HypothesisError);
  CHECK_THROWS_AS(orient_from_deck(deck_of(star_tree(6), 1)), HypothesisError);
}

TEST_CASE("orient_trunks is independent of input order") {
  const Tree t = p12_leaf();
  const OrientationReport rep = orient_from_deck(deck_of(t, 1));
  const TerminalPieces& p = rep.pieces;
  const OrientationResult swapped_s = orient_trunks(p.u[0], p.u[1], p.s[1], p.s[0]);
  CHECK(swapped_s.vines[0].trunk_piece == rep.result.vines[0].trunk_piece);
  CHECK(swapped_s.vines[1].trunk_piece == rep.result.vines[1].trunk_piece);
  const OrientationResult swapped_u = orient_trunks(p.u[1], p.u[0], p.s[0], p.s[1]);
  CHECK(swapped_u.vines[0].trunk_piece == rep.result.vines[1].trunk_piece);
  CHECK(swapped_u.vines[1].trunk_piece == rep.result.vines[0].trunk_piece);
  CHECK(swapped_u.tag == rep.result.tag);

  // Mismatched evines leave no consistent placement.
  const TerminalEvine foreign = decompose_evine(canonical_code(path_tree(10)));
  CHECK_THROWS_WITH_AS(orient_trunks(p.u[0], p.u[1], foreign, foreign), doctest::Contains("hypotheses violated"),
                       HypothesisError);
}

TEST_CASE("orientation matches the tree on all small trees") {
  int checked = 0;
  for (int n = 7; n <= 12; ++n) {
    for (const Tree& t : enumerate_free_trees(n)) {
      for (int ell = 1; ell <= 2; ++ell) {
        if (!orientation_local_hypotheses(t, ell)) continue;
        const OrientationReport rep = orient_from_deck(deck_of(t, ell), false);
        INFO(tree_to_text(t));
        CHECK(rep.k == *oracle_k(t, ell));
        CHECK(result_trunk_pieces(rep.pieces, rep.result) == oracle_trunk_pieces(t, rep.k));
        for (std::size_t i = 0; i < 2; ++i) {
          const TerminalVine& u = rep.pieces.u[i];
          CHECK((rep.result.vines[i].side == TrunkSide::kSymmetricEither) == (u.a == u.b));
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("evine pair property on harvested evines") {
  EvinePairProperty prop;
  for (int n = 4; n <= 11; ++n) {
    for (const Tree& t : enumerate_free_trees(n)) {
      const int d = diameter_center(t).diameter;
      for (int depth = 1; 2 * depth + 1 <= d; ++depth) {
        if (contains_three_leg_spider(t, depth)) continue;
        for (const EvineQuad& q : harvest_evine_quads(t, depth)) prop.add(depth, q);
      }
    }
  }
  const auto [premises, bad] = prop.check();
  CHECK(premises > 0);
  CHECK(bad.empty());

  // A quad with its own partner but C != Y is reported.
  EvinePairProperty fake;
  const CanonCode p = rooted_path(3);
  const CanonCode q = root_child_cherry();
  fake.add(2, {p, p, q, p});
  fake.add(2, {q, p, p, p});
  CHECK(fake.check().second.size() == 2);
}

TEST_CASE("orientation text") {
  const std::string text = orientation_to_text(orient_from_deck(deck_of(path_tree(17), 1)));
  CHECK(text.find("n: 17\nell: 1\nk: 6\nglobal_hypotheses: checked\n") == 0);
  CHECK(text.find("case: two-piece-classes\n") != std::string::npos);
  CHECK(text.find("U1_trunk: symmetric-either\nU2_trunk: symmetric-either\n") != std::string::npos);
}
