#pragma once

// Smoothing order on diagrams: does a host contain a pattern as a connected
// component after smoothing some of its crossings?

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strongl/diagram.hpp"
#include "strongl/reducibility.hpp"

namespace strongl {

struct MinorWitness {
  std::vector<int> kept;              // host crossing ids, ascending
  std::map<int, Smoothing> choices;   // every other host crossing
  CanonicalCode component_code;
};

struct ContainmentResult {
  enum class Status { Found, NotContained, PatternLargerThanHost };
  Status status = Status::NotContained;
  std::optional<MinorWitness> witness;
  bool found() const noexcept { return status == Status::Found; }
};

const char* to_string(ContainmentResult::Status s) noexcept;

// `pattern` must be connected.  Every kept subset of the pattern's size is
// tried with every A/B assignment on the rest; assignments that split the
// kept crossings across components are cut early.
ContainmentResult contains_pattern(const Diagram& host, const Diagram& pattern, bool allow_reflection = true);

// Applies the witness smoothings to `host` and returns the matched component.
Diagram replay_witness(const Diagram& host, const MinorWitness& w);

// The fixed 6-crossing Borromean diagram.
const Diagram& borromean_pattern();

inline constexpr int kBorromeanHostCap = 14;

// Throws SizeLimit above kBorromeanHostCap crossings.
ContainmentResult contains_borromean(const Diagram& host);

// Link-level order over supplied diagram sets: every host diagram contains
// some pattern diagram.
bool smoothing_order_leq(const std::vector<Diagram>& patterns, const std::vector<Diagram>& hosts,
                         bool allow_reflection = true);

struct Implication {
  bool applies = false;
  bool passed = true;
};

struct CrosscheckReport {
  int crossings = 0;
  bool has_reducible_site = false;
  ReductionResult::Status reduction = ReductionResult::Status::NotReducible;
  bool contains_borromean = false;
  Implication irreducible_contains_borromean;  // no site and >= 1 crossing => Brm found
  Implication reducible_avoids_borromean;      // reducible => Brm not found
  bool passed() const noexcept {
    return irreducible_contains_borromean.passed && reducible_avoids_borromean.passed;
  }
};

// Throws NotConnected for split input and Inconclusive when either side
// cannot be decided (search budget, host cap).
CrosscheckReport theorem_crosscheck(const Diagram& d, std::size_t budget = kDefaultBudget);

std::string witness_to_json(const MinorWitness& w);

}  // namespace strongl
