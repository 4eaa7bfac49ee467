#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linkpack/bigint.hpp"
#include "linkpack/geometry.hpp"
#include "linkpack/magnus.hpp"

namespace linkpack {

/// One crossing of a planar diagram. Edge labels follow the usual PD
/// convention: `edges[0]` is the incoming under-edge, then counter-clockwise,
/// so `edges[2]` is the outgoing under-edge and edges[1], edges[3] are the
/// two halves of the over-strand. For a positive crossing the over-strand
/// runs edges[3] -> edges[1]; for a negative one edges[1] -> edges[3].
struct PDCrossing {
  std::array<int, 4> edges{};
  int sign = 1;
  friend bool operator==(const PDCrossing&, const PDCrossing&) = default;
};

/// Oriented link diagram. Components are numbered 1..component_count().
class PDCode {
 public:
  /// `assigned` maps edge label -> component for at least one edge of every
  /// component (and for every edge of a crossing-free component); the rest
  /// is inferred by following strands.
  PDCode(std::vector<PDCrossing> crossings, const std::map<int, int>& assigned);

  /// Text format: lines "X a,b,c,d +|-" and "C edge component"; '#' comments.
  static PDCode parse(std::string_view text);
  std::string to_text() const;

  const std::vector<PDCrossing>& crossings() const { return crossings_; }
  const std::vector<int>& edges() const { return edges_; }
  int component_count() const { return components_; }
  int component_of(int edge) const { return edge_component_.at(edge); }
  /// Edge following `edge` along its component's orientation.
  int next_edge(int edge) const { return next_.at(edge); }
  /// Crossing at the head of `edge` and whether the edge passes under there;
  /// nullopt for the single edge of a crossing-free component.
  std::optional<std::pair<int, bool>> head(int edge) const;

 private:
  std::vector<PDCrossing> crossings_;
  std::vector<int> edges_;  // sorted labels
  std::map<int, int> edge_component_;
  std::map<int, int> next_;
  std::map<int, std::pair<int, bool>> head_;
  int components_ = 0;
};

/// Wirtinger presentation: one generator per over-arc, one relation per crossing.
struct Presentation {
  int generator_count = 0;          // arcs are 1..generator_count
  std::vector<Word> relations;      // relators y_out^-1 x^e y_in x^-e
  std::vector<int> base_meridians;  // per component (0-based), an arc id
  std::vector<int> arc_component;   // arc id -> component (index 0 unused)
  /// arc id -> C with arc = C * base * C^-1 along the component's traversal.
  std::vector<Word> arc_conjugators;
  std::map<int, int> edge_arc;      // edge label -> arc id
};

Presentation wirtinger(const PDCode& pd);

/// Longitude of `component` (1-based) as a word in arc generators, corrected
/// by the base meridian to the zero framing.
Word longitude_word(const PDCode& pd, const Presentation& pres, int component);
Word longitude_word(const PDCode& pd, int component);

/// Rewrites a word over arcs as a word over base meridians (generator i is
/// the meridian of component i) by `depth` rounds of substituting each arc by
/// its conjugate expression. Exact modulo Magnus terms of degree >= depth.
Word reduce_to_meridians(const Word& word, const Presentation& pres, int depth);

struct MuResult {
  BigInt coefficient;
  std::optional<std::int64_t> modulus;
  std::optional<std::int64_t> residue;
  std::vector<int> sequence;
  bool indeterminate = false;
  /// gcd of the lower-order values below.
  BigInt indeterminacy;
  /// Values of strictly shorter invariants over sub-sequences of the index
  /// set and their cyclic rotations, keyed like "1,2".
  std::map<std::string, BigInt> lower_order;
};

/// Non-repeating invariant mu(i_1 ... i_k) of the diagram: the coefficient of
/// x_{i_1} ... x_{i_{k-1}} in the expansion of the longitude of i_k.
MuResult mu_bar(const PDCode& pd, std::span<const int> sequence,
                std::optional<std::int64_t> modulus = std::nullopt);

/// Sum of crossing signs where component i passes over component j.
int diagram_linking(const PDCode& pd, int i, int j);

/// Diagram of a PL link by generic projection; component k of the link
/// becomes component k+1 of the diagram.
PDCode diagram_from_link(const PLLink& link);

std::string sequence_key(std::span<const int> sequence);

}  // namespace linkpack
