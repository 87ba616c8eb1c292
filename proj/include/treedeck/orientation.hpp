#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "treedeck/canon.hpp"
#include "treedeck/deck.hpp"
#include "treedeck/graph.hpp"

namespace treedeck {

// All pieces below are rooted codes (rooted_canonical_code).

/// A maximal vine seen from its center x. Removing either of the two
/// branches of x that reach the full depth leaves A or B; W = A ∩ B.
struct TerminalVine {
  CanonCode code;    // unrooted
  CanonCode rooted;  // rooted at x
  int depth = 0;
  std::array<CanonCode, 2> majors;  // the two long branches, rooted at x's neighbor
  CanonCode a, b, w;                // a <= b
};

/// A maximal evine with central edge y-z. C and D are the sides of the
/// central edge rooted at y and z; Y (Z) is the vine of the same depth
/// centered at y (z) minus C's (D's) long branch.
struct TerminalEvine {
  CanonCode code;
  int depth = 0;
  CanonCode c, d, y, z;
  CanonCode c_major, d_major;
  CanonCode vine_y, vine_z;  // rooted at y / z
};

/// Needs exactly two branches of the center reaching the vine's depth.
TerminalVine decompose_vine(const CanonCode& vine_code);
TerminalVine decompose_vine(const SmallGraph& g, VertexMask vine, int center);
/// Needs exactly one long branch at y inside C and at z inside D.
TerminalEvine decompose_evine(const CanonCode& evine_code);
TerminalEvine decompose_evine(const SmallGraph& g, VertexMask evine, int y, int z);

struct TerminalPieces {
  std::array<TerminalVine, 2> u;    // ordered by code
  std::array<TerminalEvine, 2> s;   // ordered by code
};

/// The two maximal (k-1)-vines not obtained by truncating a maximal k-vine,
/// and likewise for evines. Raises "hypotheses violated" when a center of a
/// maximal (k-1)-vine has three long branches or when the residues are not
/// exactly two.
TerminalPieces extract_terminal_vines(const CodeMultiset& vines_k, const CodeMultiset& vines_k1,
                                      const CodeMultiset& evines_k, const CodeMultiset& evines_k1,
                                      int k);

/// Depth-j truncation of a vine / evine code (vertices farther than j from
/// the center or central edge removed).
CanonCode truncate_vine(const CanonCode& vine_code, int depth);
CanonCode truncate_evine(const CanonCode& evine_code, int depth);

enum class TrunkSide { kInA, kInB, kSymmetricEither };

/// Which comparison family settles the orientation.
enum class OrientationCase {
  kBranchOutsidePieces,  // some C_j or D_j is none of A1, A2, B1, B2
  kTwoPieceClasses,      // {A1, A2, B1, B2} has at most two classes
  kThreePieceClasses,
  kFourPieceClasses,
};

struct VineOrientation {
  TrunkSide side = TrunkSide::kSymmetricEither;
  CanonCode trunk_piece;  // A or B: the piece holding the trunk edge
};

struct OrientationResult {
  std::array<VineOrientation, 2> vines;
  OrientationCase tag = OrientationCase::kBranchOutsidePieces;
  /// Placements (vine -> evine, center -> y or z) consistent with the codes.
  int consistent_placements = 0;
};

/// Decides, for each U_i, which piece holds its trunk edge. Every placement
/// of U1, U2 into S1, S2 that the codes allow must agree on the trunk
/// piece; otherwise "hypotheses violated". When U1 ≅ U2 the lesser trunk
/// piece goes to U1.
OrientationResult orient_trunks(const TerminalVine& u1, const TerminalVine& u2, const TerminalEvine& s1,
                                const TerminalEvine& s2);

std::string trunk_side_name(TrunkSide side);
std::string orientation_case_name(OrientationCase c);

struct OrientationReport {
  int n = 0;
  int ell = 0;
  int k = 0;
  bool global_checked = false;
  TerminalPieces pieces;
  OrientationResult result;
};

/// Deck-only pipeline. With `require_global` (the default) it also insists
/// on n >= 6l+7, r >= n-3l and no spi-center.
OrientationReport orient_from_deck(const Deck& d, bool require_global = true);
std::string orientation_to_text(const OrientationReport& report);

// Tree-side ground truth.

/// Trees on which the deck pipeline is expected to succeed without the
/// global conditions: k >= 2 and no vertex with three branches of length k-1.
bool orientation_local_hypotheses(const Tree& t, int ell);
bool orientation_global_hypotheses(const Tree& t, int ell);

/// (vine rooted code, trunk piece rooted code) for both ends of a longest
/// path, sorted. The trunk piece is the vine minus its outer long branch.
std::vector<std::pair<CanonCode, CanonCode>> oracle_trunk_pieces(const Tree& t, int k);
std::vector<std::pair<CanonCode, CanonCode>> result_trunk_pieces(const TerminalPieces& p,
                                                                 const OrientationResult& r);

/// (C, Z, Y, D) read from one side of an evine.
using EvineQuad = std::tuple<CanonCode, CanonCode, CanonCode, CanonCode>;

/// Both orientations of every maximal evine of the given depth in t that
/// decomposes (one long branch per side).
std::vector<EvineQuad> harvest_evine_quads(const Tree& t, int depth);

/// Pairs (S1, S2) with C1≅Y2, Z1≅D2, Y1≅C2, D1≅Z2 must have C1≅Y1, D1≅Z1.
class EvinePairProperty {
 public:
  void add(int depth, const EvineQuad& q) { quads_[depth].insert(q); }
  /// Number of premise-satisfying pairs, and the quads violating the claim.
  std::pair<std::uint64_t, std::vector<EvineQuad>> check() const;

 private:
  std::map<int, std::set<EvineQuad>> quads_;
};

}  // namespace treedeck
