#include <doctest.h>

#include "fixtures.hpp"
#include "strongl/error.hpp"
#include "strongl/minor_order.hpp"

using namespace strongl;

using Status = ContainmentResult::Status;

TEST_CASE("containment examples") {
  const Diagram& bor = fixtures::named("borromean");
  const auto self = contains_pattern(bor, bor, true);
  REQUIRE(self.found());
  CHECK(self.witness->kept == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(self.witness->choices.empty());

  CHECK(contains_pattern(fixtures::named("trefoil"), bor, true).status == Status::PatternLargerThanHost);

  const auto hopf = contains_pattern(fixtures::named("trefoil"), fixtures::named("hopf"), true);
  REQUIRE(hopf.found());
  CHECK(hopf.witness->kept.size() == 2);
  CHECK(hopf.witness->choices.size() == 1);
}

TEST_CASE("Borromean containment examples") {
  CHECK(contains_borromean(fixtures::named("borromean")).found());
  CHECK(contains_borromean(fixtures::named("trefoil")).status == Status::PatternLargerThanHost);
  CHECK(contains_borromean(fixtures::named("knot_8_18")).found());
  CHECK(contains_borromean(fixtures::named("figure_eight")).status == Status::PatternLargerThanHost);
  CHECK(contains_borromean(fixtures::named("torus_2_7")).status == Status::NotContained);
}

TEST_CASE("witness replays to the pattern") {
  for (const char* name : {"knot_8_18", "borromean_twisted", "turks_head_10"}) {
    const Diagram& host = fixtures::named(name);
    const auto r = contains_borromean(host);
    REQUIRE(r.found());
    const Diagram back = replay_witness(host, *r.witness);
    CHECK(component_code(back, true) == component_code(borromean_pattern(), true));
    CHECK(r.witness->kept.size() + r.witness->choices.size() == static_cast<std::size_t>(host.crossing_count()));
  }
}

TEST_CASE("identity containment on the corpus") {
  for (const auto& e : fixtures::corpus()) {
    for (const Diagram& piece : split_components(e.diagram)) {
      for (bool reflect : {false, true}) {
        const auto r = contains_pattern(piece, piece, reflect);
        CHECK_MESSAGE(r.found(), e.name);
      }
    }
  }
}

TEST_CASE("transitivity and monotonicity") {
  std::vector<Diagram> suite;
  for (const auto& e : fixtures::corpus()) {
    if (e.diagram.crossing_count() > 8) continue;
    for (const Diagram& piece : split_components(e.diagram))
      if (!piece.crossingless()) suite.push_back(piece);
  }
  int chains = 0;
  for (const Diagram& d : suite)
    for (const Diagram& q : suite) {
      const auto qd = contains_pattern(d, q, true);
      if (qd.found()) CHECK(q.crossing_count() <= d.crossing_count());
      if (!qd.found()) continue;
      for (const Diagram& p : suite) {
        if (!contains_pattern(q, p, true).found()) continue;
        ++chains;
        CHECK(contains_pattern(d, p, true).found());
      }
    }
  CHECK(chains > 20);
}

TEST_CASE("composed witnesses exhibit the outer containment") {
  // P = Hopf inside Q = trefoil inside D = torus_2_5.
  const Diagram& d = fixtures::named("torus_2_5");
  const Diagram& q = fixtures::named("trefoil");
  const Diagram& p = fixtures::named("hopf");
  const auto w2 = contains_pattern(d, q, true);
  REQUIRE(w2.found());
  const Diagram q_in_d = replay_witness(d, *w2.witness);
  const auto w1 = contains_pattern(q_in_d, p, true);
  REQUIRE(w1.found());
  // Translate the inner witness back to host ids through the kept list.
  MinorWitness composed;
  composed.choices = w2.witness->choices;
  for (auto [c, s] : w1.witness->choices) composed.choices[w2.witness->kept.at(static_cast<std::size_t>(c))] = s;
  for (int c : w1.witness->kept) composed.kept.push_back(w2.witness->kept.at(static_cast<std::size_t>(c)));
  const Diagram back = replay_witness(d, composed);
  CHECK(component_code(back, true) == component_code(p, true));
}

TEST_CASE("theorem cross-check examples") {
  const auto bor = theorem_crosscheck(fixtures::named("borromean"));
  CHECK(bor.irreducible_contains_borromean.applies);
  CHECK(bor.irreducible_contains_borromean.passed);
  CHECK(bor.passed());
  for (const char* name : {"trefoil", "figure_eight"}) {
    const auto r = theorem_crosscheck(fixtures::named(name));
    CHECK(r.reducible_avoids_borromean.applies);
    CHECK(r.reducible_avoids_borromean.passed);
  }
  CHECK_THROWS_AS(theorem_crosscheck(fixtures::named("two_trefoils")), Error);
}

TEST_CASE("theorem cross-check passes on every corpus piece") {
  for (const auto& e : fixtures::corpus())
    for (const Diagram& piece : split_components(e.diagram)) CHECK_MESSAGE(theorem_crosscheck(piece).passed(), e.name);
}

TEST_CASE("batch smoothing order") {
  const std::vector<Diagram> patterns{fixtures::named("hopf")};
  CHECK(smoothing_order_leq(patterns, {fixtures::named("trefoil"), fixtures::named("figure_eight")}));
  CHECK_FALSE(smoothing_order_leq({fixtures::named("borromean")}, {fixtures::named("trefoil")}));
}
