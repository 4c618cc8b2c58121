#pragma once

// Alternating link diagrams on S^2 stored as 4-valent combinatorial maps.
//
// Half-edge h = 4 * crossing + slot.  Slots of a crossing are listed in
// counterclockwise order; the edge pairing is an involution on half-edges.
// Each crossing records which opposite slot pair {0,2} or {1,3} is the
// under-strand.  Crossingless circles are kept as a plain counter.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "strongl/error.hpp"

namespace strongl {

enum class Smoothing { A, B };

char to_char(Smoothing s) noexcept;

class Diagram {
 public:
  Diagram() = default;

  // Validates the perfect matching and the sphere condition of every
  // component.  Throws Error(EdgeLabelNotUsedTwice / NonSphericalEmbedding).
  Diagram(std::vector<int> mate, std::vector<std::uint8_t> under_even, int free_loops);

  static Diagram unknot(int loops = 1);

  int crossing_count() const noexcept { return static_cast<int>(under_even_.size()); }
  int half_edge_count() const noexcept { return static_cast<int>(mate_.size()); }
  int free_loops() const noexcept { return free_loops_; }
  bool crossingless() const noexcept { return under_even_.empty(); }

  int mate(int h) const { return mate_.at(static_cast<std::size_t>(h)); }
  bool under_even(int c) const { return under_even_.at(static_cast<std::size_t>(c)) != 0; }
  // True when half-edge h belongs to the under-strand of its crossing.
  bool is_under(int h) const { return ((slot_of(h) & 1) == 0) == under_even(crossing_of(h)); }

  const std::vector<int>& mates() const noexcept { return mate_; }
  const std::vector<std::uint8_t>& under_marks() const noexcept { return under_even_; }

  // Returns a copy with the under-strand of crossing c switched.
  Diagram with_crossing_switched(int c) const;
  // Returns a copy with every crossing switched (the mirror link).
  Diagram mirrored() const;

  static constexpr int crossing_of(int h) noexcept { return h >> 2; }
  static constexpr int slot_of(int h) noexcept { return h & 3; }
  static constexpr int half_edge(int c, int slot) noexcept { return 4 * c + (slot & 3); }
  static constexpr int rotate(int h, int k) noexcept { return half_edge(crossing_of(h), slot_of(h) + k); }

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  std::vector<int> mate_;
  std::vector<std::uint8_t> under_even_;
  int free_loops_ = 0;
};

// Disjoint union; crossings of `b` are renumbered after those of `a`.
Diagram disjoint_union(const Diagram& a, const Diagram& b);

// ---------------------------------------------------------------------------
// Faces.  Faces are the orbits of h -> rotate(mate(h), 1).  Half-edge h of an
// orbit stands for the corner between slots (slot(h) - 1) and slot(h), so the
// corner between slots i and i+1 of crossing c belongs to
// face_of_half_edge[half_edge(c, i + 1)].
struct Faces {
  std::vector<int> face_of_half_edge;
  std::vector<int> degree;
  std::vector<int> component;  // component id of each face

  int count() const noexcept { return static_cast<int>(degree.size()); }
  int corner_face(int c, int corner) const {
    return face_of_half_edge.at(static_cast<std::size_t>(Diagram::half_edge(c, corner + 1)));
  }
};

Faces faces(const Diagram& d);

struct Components {
  std::vector<int> of_crossing;  // component id per crossing, ids ordered by lowest crossing
  int with_crossings = 0;
};

Components crossing_components(const Diagram& d);

struct ValidationReport {
  bool connected = true;
  bool alternating = true;
  int components = 0;
};

ValidationReport validate(const Diagram& d);
bool is_alternating(const Diagram& d);

struct FaceCensus {
  std::map<int, int> total;
  std::vector<std::map<int, int>> per_component;
};

FaceCensus face_census(const Diagram& d);

// n3 - 8 - sum_{k>=5} (k-4) n_k.  Throws PreconditionFaceTooSmall when a face
// has at most two corners, NotConnected for split or crossingless input.
long euler_identity_residual(const Diagram& d);

// ---------------------------------------------------------------------------
// Smoothing.  Choice A merges the two corners swept when the over-strand is
// rotated counterclockwise; B merges the other two.
Diagram smooth(const Diagram& d, int crossing, Smoothing choice);

// Smooths `crossing` so that corners `parity` and `parity + 2` merge.
Diagram smooth_merging_corners(const Diagram& d, int crossing, int parity);

// Corner parity merged by the A smoothing at crossing c.
int a_corner_parity(const Diagram& d, int c);

// Splits into connected diagrams; free loops become one-loop diagrams at the end.
std::vector<Diagram> split_components(const Diagram& d);

// Crossings of component `comp` (ids from crossing_components) as its own diagram.
Diagram extract_component(const Diagram& d, const Components& comps, int comp);

// ---------------------------------------------------------------------------
// Canonical codes.  Equal iff the diagrams are isomorphic decorated maps
// (orientation preserving; with reflection also orientation reversing).
using CanonicalCode = std::vector<std::uint8_t>;

CanonicalCode canonical_code(const Diagram& d, bool allow_reflection);
CanonicalCode component_code(const Diagram& connected, bool allow_reflection);
// Like canonical_code with reflection, but each component may also be mirrored.
CanonicalCode projection_code(const Diagram& d);
std::string to_hex(const CanonicalCode& code);

// ---------------------------------------------------------------------------
// PD text: X(a,b,c,d) records (labels counterclockwise, a = incoming
// under-strand) and O tokens for free loops.
Diagram parse_pd(std::string_view text);
std::string to_pd(const Diagram& d);

// JSON mirror {"crossings":[[a,b,c,d],...],"free_loops":n}.
Diagram parse_diagram_json(std::string_view text);
std::string to_diagram_json(const Diagram& d);

// Picks PD or JSON by the first non-blank character.
Diagram parse_diagram(std::string_view text);

}  // namespace strongl
