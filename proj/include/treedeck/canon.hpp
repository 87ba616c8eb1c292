#pragma once

#include <compare>
#include <string>
#include <utility>

#include "treedeck/graph.hpp"

namespace treedeck {

/// Cyclic graphs are canonicalized by permutation search; this caps the order.
inline constexpr int kMaxCyclicCanonVertices = 10;

/// Printable canonical form. Equal codes exactly for isomorphic inputs;
/// ordered lexicographically.
///
/// Grammar:
///   acyclic graph  F<comp>.<comp>...   components sorted, "F" alone is K0
///   component      c<rooted>           rooted at the unique center
///                  e<rooted><rooted>   halves of the central edge, sorted
///   rooted tree    (<child>...)        children sorted
///   cyclic graph   G<n>:<bits>         minimal column-major adjacency string
///   rooted code    R<rooted>           separate namespace from unrooted codes
class CanonCode {
 public:
  CanonCode() = default;
  explicit CanonCode(std::string text) : text_(std::move(text)) {}

  const std::string& text() const { return text_; }
  bool empty() const { return text_.empty(); }
  bool is_rooted() const { return !text_.empty() && text_[0] == 'R'; }
  bool is_cyclic() const { return !text_.empty() && text_[0] == 'G'; }

  friend auto operator<=>(const CanonCode&, const CanonCode&) = default;
  friend bool operator==(const CanonCode&, const CanonCode&) = default;

 private:
  std::string text_;
};

CanonCode canonical_code(const SmallGraph& g);
CanonCode canonical_code(const Tree& t);
/// Code of the subgraph of g induced by `subset`, without materializing it.
CanonCode canonical_code(const SmallGraph& g, VertexMask subset);

CanonCode rooted_canonical_code(const RootedTree& r);
/// Rooted code of the tree induced by a connected acyclic subset of g.
CanonCode rooted_canonical_code(const SmallGraph& g, VertexMask subset, int root);

bool is_isomorphic(const SmallGraph& a, const SmallGraph& b);

/// Graph with the canonical labeling encoded by `code` (not a rooted code).
SmallGraph decode_graph(const CanonCode& code);
/// Rooted tree encoded by a rooted code; the root is vertex 0.
RootedTree decode_rooted(const CanonCode& code);

/// Cheap structural queries answered from the code text alone.
int code_order(const CanonCode& code);
bool code_is_connected(const CanonCode& code);
/// Diameter of the tree encoded by a connected acyclic code.
int code_diameter(const CanonCode& code);

}  // namespace treedeck
