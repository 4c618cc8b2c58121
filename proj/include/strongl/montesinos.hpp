#pragma once

// Linear realizations of weighted forests as chord systems over an axis, the
// diagrams they induce, and the way back from a reducible diagram to a tree.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "strongl/awtree.hpp"
#include "strongl/diagram.hpp"
#include "strongl/reducibility.hpp"

namespace strongl {

struct RealizationArc {
  int sign = 1;  // +1 drawn above the axis, -1 below
  Weight weight = Weight::Zero;
  int vertex = -1;  // tree vertex carried by this arc

  friend bool operator==(const RealizationArc&, const RealizationArc&) = default;
};

struct LinearRealization {
  std::vector<int> endpoints;  // arc id at each axis position, each id twice
  std::vector<RealizationArc> arcs;

  friend bool operator==(const LinearRealization&, const LinearRealization&) = default;
};

// Arcs a and b interleave when exactly one endpoint of b lies between those of a.
bool arcs_interleave(const LinearRealization& r, int a, int b);

// Vertex per arc, edge per interleaving pair (vertex i = arc i).
AWTree interleaving_tree(const LinearRealization& r);

// Checks every arc appears twice and the interleaving graph is an
// alternatingly signed forest.  Throws MalformedRecord, CycleFound, SignClash.
void validate_realization(const LinearRealization& r);

// Depth-first layout: a child arc opens just inside its parent and closes
// after the parent; siblings nest.  Arc i carries vertex i.
LinearRealization realize_tree(const AWTree& t);

// Cuts the axis at the endpoints of every finite arc and inserts a flat band
// (weight 0) or a half-twisted band with one crossing (weight 1); infinite
// arcs are dropped.  Over/under is fixed per component so that the lowest
// crossing has its even slots under.  Throws AlternationUnsatisfiable.
Diagram m_induced_diagram(const LinearRealization& r);

struct TreeFromDiagram {
  AWTree tree;
  LinearRealization realization;
};

inline constexpr std::size_t kTemplateBudget = 200'000;

// Replays `cert` backwards from the crossingless end.  `f` circles start as
// f - 1 isolated weight-0 arcs; each reinstated crossing is matched by turning
// a weight-0 or infinite arc into weight 1, or by inserting a new weight-1
// arc, checked against the intermediate diagram up to reflection and
// mirroring.  Throws CertificateInvalid, CaseAnalysisFailure.
TreeFromDiagram diagram_to_tree(const Diagram& d, const Certificate& cert,
                                std::size_t budget = kTemplateBudget);

struct RoundtripReport {
  int crossings = 0;
  bool alternating = false;
  bool reducible = false;
  long long tree_determinant = 0;  // |det Mat(T)|
  long long diagram_determinant = 0;
  bool forward_match = false;
  long long back_determinant = -1;  // |det Mat| of the recovered tree
  bool back_match = false;
  std::string error;  // sub-operation failure, empty when none
  bool passed() const noexcept { return alternating && reducible && forward_match && back_match; }
};

RoundtripReport roundtrip_verify(const AWTree& t, std::size_t budget = kDefaultBudget);

// First line: endpoint labels; then one `<label> <+|-> <0|1|inf>` line per arc.
std::string to_realization_text(const LinearRealization& r);
LinearRealization parse_realization_text(std::string_view text);
std::string arc_label(int arc);

}  // namespace strongl
