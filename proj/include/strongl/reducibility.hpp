#pragma once

// Reducible disks, the (I)/(II) moves and the search for a reduction of an
// alternating diagram to crossingless circles.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "strongl/diagram.hpp"

namespace strongl {

// One: a face meets crossing c1 at two opposite corners (nugatory crossing);
//      face1 is that face.
// Two: faces face1 < face2 occupy opposite corners at both c1 < c2, so a
//      circle through face1, c1, face2, c2 meets the diagram only at c1, c2.
struct ReducibleSite {
  enum class Kind { One, Two };
  Kind kind = Kind::One;
  int c1 = -1;
  int c2 = -1;
  int face1 = -1;
  int face2 = -1;

  friend bool operator==(const ReducibleSite&, const ReducibleSite&) = default;
};

std::vector<ReducibleSite> find_one_reducible(const Diagram& d);
std::vector<ReducibleSite> find_two_reducible(const Diagram& d);
// One-sites by crossing, then Two-sites by (c1, c2, faces): the search order.
std::vector<ReducibleSite> find_reducible_sites(const Diagram& d);

// Smooths the nugatory crossing keeping the diagram connected.  Throws StaleSite.
Diagram apply_move_i(const Diagram& d, const ReducibleSite& site);

// Smooths `smoothed` (site.c1 or site.c2).  The resolution joins the two
// corners not occupied by the shared faces, which shortens a twist region by
// one crossing.  Throws StaleSite.
Diagram apply_move_ii(const Diagram& d, const ReducibleSite& site, int smoothed);

struct Move {
  enum class Kind { I, II };
  Kind kind = Kind::I;
  int c1 = -1;
  int c2 = -1;
  int smoothed = -1;
  int face1 = -1;  // -1: first matching site on replay
  int face2 = -1;

  friend bool operator==(const Move&, const Move&) = default;
};

struct Certificate {
  std::vector<Move> moves;
  CanonicalCode initial;
  CanonicalCode final_code;
};

// Applies one move to `d`.  Throws StaleSite when the move names no current site.
Diagram apply_move(const Diagram& d, const Move& move);

struct ReductionResult {
  enum class Status { Found, NotReducible, BudgetExhausted };
  Status status = Status::NotReducible;
  std::optional<Certificate> certificate;
  std::size_t states = 0;  // memoised states visited
};

const char* to_string(ReductionResult::Status s) noexcept;

inline constexpr std::size_t kDefaultBudget = 1'000'000;

// Complete depth-first search over every site and both (II) choices, memoised
// on canonical codes without reflection.
ReductionResult decide_b_reducible(const Diagram& d, std::size_t budget = kDefaultBudget);

// True iff replaying from `d` ends crossingless at `cert.final_code`.  Throws
// ReplayError (step 0 on an initial-code mismatch, step i on a stale move).
bool verify_certificate(const Diagram& d, const Certificate& cert);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

}  // namespace strongl
