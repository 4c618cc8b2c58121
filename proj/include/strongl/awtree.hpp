#pragma once

// Alternatingly weighted forests: vertices carry a sign and a weight in
// {0, 1, inf}; adjacent vertices have opposite signs.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strongl/signed_matrix.hpp"

namespace strongl {

enum class Weight { Zero, One, Infinity };

// Weight w = a / b with (a, b) in {(0,1), (1,1), (1,0)}.
constexpr int numerator(Weight w) noexcept { return w == Weight::Zero ? 0 : 1; }
constexpr int denominator(Weight w) noexcept { return w == Weight::Infinity ? 0 : 1; }

const char* to_string(Weight w) noexcept;
Weight parse_weight(std::string_view s);  // "0", "1", "inf"

struct TreeVertex {
  int sign = 1;  // +1 or -1
  Weight weight = Weight::Zero;

  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
};

struct AWTree {
  std::vector<TreeVertex> vertices;
  std::vector<std::pair<int, int>> edges;

  int size() const noexcept { return static_cast<int>(vertices.size()); }
  int add_vertex(int sign, Weight w);
  void add_edge(int u, int v) { edges.emplace_back(u, v); }
  std::vector<std::vector<int>> adjacency() const;
  int degree(int v) const;

  friend bool operator==(const AWTree&, const AWTree&) = default;
};

struct TreeReport {
  int components = 0;
  int edges = 0;
};

// Throws CycleFound (also for self-loops and repeated edges), SignClash, or
// MalformedRecord for bad vertex ids or signs.
TreeReport validate_tree(const AWTree& t);

// Row/column k is vertex ordering[k]; the identity ordering when empty.
SignedMatrix build_matrix(const AWTree& t, std::vector<int> ordering = {});

struct H1Report {
  bool rational_homology_sphere = false;
  long long h1 = 0;  // |det|, meaningful when rational_homology_sphere
  long long determinant = 0;
  long long permanent = 0;
  bool strong_lspace = false;
};

H1Report h1_and_strong_check(const AWTree& t);

// 1: attach a new (-sign(v), inf) vertex to v.
// 2: v univalent with weight 0 and a finite-weight neighbour; delete both.
// 3: v univalent with weight 1, neighbour weight 0; delete v, neighbour becomes 1.
// 4: v univalent with weight 1, neighbour weight 1; delete v.
// Remaining vertices keep their relative order.  Throws SiteShapeMismatch.
AWTree apply_tree_op(const AWTree& t, int op, int v);

// Vertices where `op` applies.
std::vector<int> tree_op_sites(const AWTree& t, int op);

// Text: `v<id> <+|-> <0|1|inf>` lines, then `e <id> <id>` lines; '#' comments.
AWTree parse_tree_text(std::string_view text);
std::string to_tree_text(const AWTree& t);
AWTree parse_tree_json(std::string_view text);
std::string to_tree_json(const AWTree& t);
AWTree parse_tree(std::string_view text);  // JSON when it starts with '{'

// Every forest with exactly n vertices: unlabeled shapes x one sign polarity
// per component x 3^n weight assignments.  Stops when `visit` returns false.
// Throws SizeLimit above 7 vertices.
inline constexpr int kExhaustiveTreeLimit = 7;
void for_each_tree(int n, bool connected_only, const std::function<bool(const AWTree&)>& visit);
std::vector<AWTree> enumerate_trees(int n, bool connected_only = false);

// k uniformly random labeled trees on n vertices with random signs and weights.
std::vector<AWTree> sample_trees(int n, int k, std::uint64_t seed);

// Non-isomorphic unlabeled trees on n vertices as edge lists (n <= 10).
std::vector<std::vector<std::pair<int, int>>> unlabeled_trees(int n);

}  // namespace strongl
