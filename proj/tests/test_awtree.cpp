#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "strongl/awtree.hpp"
#include "strongl/error.hpp"

using namespace strongl;

namespace {

AWTree tree_of(std::initializer_list<TreeVertex> vs, std::initializer_list<std::pair<int, int>> es) {
  AWTree t;
  t.vertices = vs;
  t.edges = es;
  return t;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::UsageError;
}

long long abs_det(const AWTree& t) { return std::llabs(determinant(build_matrix(t))); }

constexpr Weight W0 = Weight::Zero;
constexpr Weight W1 = Weight::One;
constexpr Weight Winf = Weight::Infinity;

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate_tree(tree_of({{1, W0}}, {})).components == 1);
  CHECK(validate_tree(tree_of({{1, W1}, {-1, W1}}, {{0, 1}})).edges == 1);
  CHECK(code_of([] { validate_tree(tree_of({{1, W1}, {1, W1}}, {{0, 1}})); }) == ErrorCode::SignClash);
  CHECK(code_of([] { validate_tree(tree_of({{1, W1}, {-1, W1}}, {{0, 1}, {1, 0}})); }) == ErrorCode::CycleFound);
  CHECK(code_of([] { validate_tree(tree_of({{1, W1}}, {{0, 0}})); }) == ErrorCode::CycleFound);
  CHECK(code_of([] { validate_tree(tree_of({{1, W1}}, {{0, 3}})); }) == ErrorCode::MalformedRecord);
  CHECK(code_of([] { validate_tree(tree_of({{2, W1}}, {})); }) == ErrorCode::MalformedRecord);
}

TEST_CASE("matrix examples") {
  CHECK(build_matrix(oracle::path_tree(2, W1)) == SignedMatrix{{1, 1}, {1, -1}});
  CHECK(build_matrix(oracle::path_tree(3, W1)) == SignedMatrix{{1, 1, 0}, {1, -1, 1}, {0, 1, 1}});
  CHECK(build_matrix(tree_of({{1, Winf}}, {})) == SignedMatrix{{1}});
  const SignedMatrix m = build_matrix(oracle::path_tree(3, W1), {2, 0, 1});
  CHECK(m.ordering == std::vector<int>{2, 0, 1});
  CHECK(m(0, 0) == 1);
  CHECK(m(1, 2) == 1);
  CHECK(m(2, 2) == -1);
}

TEST_CASE("matrix agrees with the definition") {
  for (const AWTree& t : enumerate_trees(4)) CHECK(oracle::to_rows(build_matrix(t)) == oracle::tree_matrix(t));
}

TEST_CASE("h1 examples") {
  const auto zero = h1_and_strong_check(tree_of({{1, W0}}, {}));
  CHECK_FALSE(zero.rational_homology_sphere);
  CHECK_FALSE(zero.strong_lspace);

  const auto two = h1_and_strong_check(oracle::path_tree(2, W1));
  CHECK(two.h1 == 2);
  CHECK(two.strong_lspace);

  const long long fib[] = {1, 2, 3, 5, 8};
  for (int n = 1; n <= 5; ++n) CHECK(h1_and_strong_check(oracle::path_tree(n, W1)).h1 == fib[n - 1]);

  CHECK(h1_and_strong_check(AWTree{}).h1 == 1);
}

TEST_CASE("tree operation examples") {
  const AWTree single = tree_of({{1, W0}}, {});
  const AWTree one = apply_tree_op(single, 1, 0);
  CHECK(one == tree_of({{1, W0}, {-1, Winf}}, {{0, 1}}));
  CHECK(build_matrix(one) == SignedMatrix{{0, 1}, {0, -1}});
  CHECK(abs_det(one) == 0);

  const AWTree two_src = tree_of({{1, W0}, {-1, W1}}, {{0, 1}});
  const AWTree two = apply_tree_op(two_src, 2, 0);
  CHECK(two.size() == 0);
  CHECK(abs_det(two_src) == 1);

  const AWTree three_src = tree_of({{1, W1}, {-1, W0}}, {{0, 1}});
  const AWTree three = apply_tree_op(three_src, 3, 0);
  CHECK(three == tree_of({{-1, W1}}, {}));
  CHECK(abs_det(three_src) == 1);
  CHECK(abs_det(three) == 1);

  CHECK(code_of([&] { apply_tree_op(three_src, 2, 0); }) == ErrorCode::SiteShapeMismatch);
  CHECK(code_of([&] { apply_tree_op(three_src, 4, 0); }) == ErrorCode::SiteShapeMismatch);
  CHECK(code_of([&] { apply_tree_op(three_src, 5, 0); }) == ErrorCode::UsageError);
  CHECK(code_of([&] { apply_tree_op(tree_of({{1, W0}, {-1, Winf}}, {{0, 1}}), 2, 0); }) ==
        ErrorCode::SiteShapeMismatch);
}

TEST_CASE("operations 1-3 preserve |det| on random sites") {
  std::mt19937_64 rng(424242);
  int pairs = 0;
  for (int round = 0; pairs < 1200 && round < 100; ++round) {
    for (const AWTree& t : sample_trees(1 + round % 8, 40, rng())) {
      for (int op = 1; op <= 3; ++op) {
        const auto sites = tree_op_sites(t, op);
        if (sites.empty()) continue;
        const int v = sites[static_cast<std::size_t>(rng() % sites.size())];
        const AWTree u = apply_tree_op(t, op, v);
        validate_tree(u);
        CHECK(abs_det(u) == abs_det(t));
        ++pairs;
      }
    }
  }
  CHECK(pairs >= 1000);
}

TEST_CASE("operation 4 can change |det|") {
  bool found = false;
  for (int n = 2; n <= 4 && !found; ++n)
    for_each_tree(n, false, [&](const AWTree& t) {
      for (int v : tree_op_sites(t, 4))
        if (abs_det(apply_tree_op(t, 4, v)) != abs_det(t)) found = true;
      return !found;
    });
  CHECK(found);
}

TEST_CASE("effectiveness and permanent identity on all forests up to 6 vertices") {
  for (int n = 1; n <= 6; ++n)
    for_each_tree(n, false, [&](const AWTree& t) {
      const SignedMatrix m = build_matrix(t);
      const auto s = expansion_signatures(m);
      CHECK((s.positives == 0 || s.negatives == 0));
      CHECK(permanent_abs(m) == std::llabs(determinant(m)));
      return true;
    });
}

TEST_CASE("leaf recurrence for every leaf") {
  for (int n = 2; n <= 5; ++n)
    for_each_tree(n, true, [&](const AWTree& t) {
      const long long det = determinant(build_matrix(t));
      const auto adj = t.adjacency();
      for (int leaf = 0; leaf < n; ++leaf) {
        if (adj[static_cast<std::size_t>(leaf)].size() != 1) continue;
        const int nb = adj[static_cast<std::size_t>(leaf)][0];
        const SignedMatrix m = build_matrix(t);
        const long long rest = determinant(m.principal_minor_without({leaf}));
        const long long rest2 = determinant(m.principal_minor_without({leaf, nb}));
        const auto& lv = t.vertices[static_cast<std::size_t>(leaf)];
        const auto& nv = t.vertices[static_cast<std::size_t>(nb)];
        CHECK(det == lv.sign * numerator(lv.weight) * rest - denominator(lv.weight) * denominator(nv.weight) * rest2);
      }
      return true;
    });
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_trees(1).size() == 6);
  CHECK(enumerate_trees(2, true).size() == 18);
  CHECK(enumerate_trees(2).size() == 18 + 36);
  const std::size_t unlabeled[] = {1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) CHECK(unlabeled_trees(n).size() == unlabeled[n - 1]);
  CHECK_THROWS_AS(enumerate_trees(8), Error);
}

TEST_CASE("sampling is deterministic") {
  CHECK(sample_trees(100, 5, 1) == sample_trees(100, 5, 1));
  CHECK(sample_trees(10, 5, 1) != sample_trees(10, 5, 2));
  for (const AWTree& t : sample_trees(20, 50, 3)) {
    const auto r = validate_tree(t);
    CHECK(r.components == 1);
    CHECK(r.edges == 19);
  }
}

TEST_CASE("text and JSON round trips") {
  for (const AWTree& t : sample_trees(6, 30, 9)) {
    CHECK(parse_tree_text(to_tree_text(t)) == t);
    CHECK(parse_tree_json(to_tree_json(t)) == t);
    CHECK(parse_tree(to_tree_json(t)) == t);
    CHECK(parse_tree(to_tree_text(t)) == t);
  }
  const AWTree t = parse_tree_text("# path\nv0 + 1\nv1 - inf\ne 0 1\n");
  CHECK(t == tree_of({{1, W1}, {-1, Winf}}, {{0, 1}}));
  CHECK(code_of([] { parse_tree_text("v0 * 1\n"); }) == ErrorCode::MalformedRecord);
  CHECK(code_of([] { parse_tree_text("v0 + 2\n"); }) == ErrorCode::MalformedRecord);
}
