// Acceptance report: one PASS/FAIL line per criterion.  Exit status is 0 when
// every criterion passes except those listed in kKnownUnattainable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "strongl/awtree.hpp"
#include "strongl/cli.hpp"
#include "strongl/goeritz.hpp"
#include "strongl/minor_order.hpp"
#include "strongl/montesinos.hpp"
#include "strongl/reducibility.hpp"

using namespace strongl;

namespace {

// Criterion 10 pins the Borromean determinant at 32; the oracle and the
// library both give 16 (see the decisions ledger).
const std::set<int> kKnownUnattainable{10};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double seconds_limit;  // 0: no time bound
  std::function<Outcome()> check;
};

long long abs_det(const AWTree& t) { return std::llabs(determinant(build_matrix(t))); }

void for_each_forest_upto(int max_n, const std::function<void(const AWTree&)>& f) {
  for (int n = 1; n <= max_n; ++n)
    for_each_tree(n, false, [&](const AWTree& t) {
      f(t);
      return true;
    });
}

Outcome trefoil_reducibility() {
  std::ostringstream os;
  const int code = run_cli({"diagram", "reduce", fixtures::kDataDir + "/examples/trefoil.pd"}, os);
  const auto report = nlohmann::json::parse(os.str());
  const auto& result = report["result"];
  if (code != 0 || result["result"] != "Found") return {false, "reduce did not find a certificate"};
  const Certificate cert = certificate_from_json(result["certificate"].dump());
  const bool ok = cert.moves.size() == 3 && verify_certificate(fixtures::named("trefoil"), cert);
  return {ok, std::to_string(cert.moves.size()) + " moves, verified=" + (ok ? "true" : "false")};
}

Outcome borromean_rigidity() {
  const Diagram& b = fixtures::named("borromean");
  const auto red = decide_b_reducible(b);
  const auto brm = contains_borromean(b);
  const bool identity = brm.found() && brm.witness->kept.size() == 6 && brm.witness->choices.empty();
  const bool ok = red.status == ReductionResult::Status::NotReducible && identity;
  return {ok, std::string("reduction ") + to_string(red.status) + " after " + std::to_string(red.states) +
                  " states; identity witness " + (identity ? "found" : "missing")};
}

Outcome theorem_bi_implication() {
  int checked = 0, failed = 0, max_host = 0;
  auto check = [&](const Diagram& d) {
    for (const Diagram& piece : split_components(d)) {
      max_host = std::max(max_host, piece.crossing_count());
      if (piece.crossing_count() > 12) {
        ++failed;
        continue;
      }
      ++checked;
      if (!theorem_crosscheck(piece).passed()) ++failed;
    }
  };
  for (const auto& e : fixtures::corpus()) check(e.diagram);
  for_each_forest_upto(5, [&](const AWTree& t) { check(m_induced_diagram(realize_tree(t))); });
  return {failed == 0, std::to_string(checked) + " pieces, " + std::to_string(failed) + " failures, largest host " +
                           std::to_string(max_host)};
}

Outcome euler_identity() {
  int applicable = 0, failed = 0;
  for (const auto& e : fixtures::corpus()) {
    const Diagram& d = e.diagram;
    if (d.crossingless() || !validate(d).connected || !validate(d).alternating) continue;
    if (face_census(d).total.begin()->first < 3) continue;
    ++applicable;
    if (euler_identity_residual(d) != 0) ++failed;
  }
  const auto bor = face_census(fixtures::named("borromean")).total;
  const auto k818 = face_census(fixtures::named("knot_8_18")).total;
  const bool counts = bor == std::map<int, int>{{3, 8}} && k818.at(3) == 8 && k818.at(4) == 2;
  return {failed == 0 && counts && applicable > 0,
          std::to_string(applicable) + " diagrams, " + std::to_string(failed) + " nonzero residuals; Borromean n3=" +
              std::to_string(bor.count(3) ? bor.at(3) : 0) + ", 8_18 n3=" + std::to_string(k818.at(3)) +
              " n4=" + std::to_string(k818.count(4) ? k818.at(4) : 0)};
}

Outcome effectiveness() {
  long long exhaustive = 0, random = 0, bad = 0;
  auto check = [&](const AWTree& t) {
    const SignedMatrix m = build_matrix(t);
    if (m.size() <= 9) {
      const auto s = expansion_signatures(m);
      if (s.positives != 0 && s.negatives != 0) ++bad;
    }
    if (permanent_abs(m) != std::llabs(determinant(m))) ++bad;
  };
  for_each_forest_upto(7, [&](const AWTree& t) {
    check(t);
    ++exhaustive;
  });
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 20; ++n)
    for (const AWTree& t : sample_trees(n, 500, rng())) {
      check(t);
      ++random;
    }
  return {bad == 0 && random == 10000, std::to_string(exhaustive) + " exhaustive + " + std::to_string(random) +
                                           " random trees, " + std::to_string(bad) + " violations"};
}

Outcome strong_lspace() {
  long long nonsingular = 0, bad = 0;
  for_each_forest_upto(7, [&](const AWTree& t) {
    const auto r = h1_and_strong_check(t);
    if (!r.rational_homology_sphere) return;
    ++nonsingular;
    if (!r.strong_lspace) ++bad;
  });
  return {bad == 0, std::to_string(nonsingular) + " trees with det != 0, " + std::to_string(bad) + " not strong"};
}

Outcome tree_ops() {
  std::mt19937_64 rng(99);
  int pairs = 0, broken = 0;
  while (pairs < 1000) {
    for (const AWTree& t : sample_trees(1 + static_cast<int>(rng() % 10), 20, rng())) {
      for (int op = 1; op <= 3 && pairs < 1000; ++op) {
        const auto sites = tree_op_sites(t, op);
        if (sites.empty()) continue;
        const int v = sites[static_cast<std::size_t>(rng() % sites.size())];
        if (abs_det(apply_tree_op(t, op, v)) != abs_det(t)) ++broken;
        ++pairs;
      }
    }
  }
  std::string example;
  for (int n = 2; n <= 4 && example.empty(); ++n)
    for_each_tree(n, false, [&](const AWTree& t) {
      for (int v : tree_op_sites(t, 4)) {
        const long long after = abs_det(apply_tree_op(t, 4, v));
        if (after != abs_det(t)) {
          example = std::to_string(n) + "-vertex tree, |det| " + std::to_string(abs_det(t)) + " -> " + std::to_string(after);
          return false;
        }
      }
      return true;
    });
  return {broken == 0 && !example.empty(), std::to_string(pairs) + " pairs, " + std::to_string(broken) +
                                               " changed |det|; op 4 counterexample: " + (example.empty() ? "none" : example)};
}

Outcome leaf_recurrence() {
  long long leaves = 0, bad = 0;
  for_each_forest_upto(7, [&](const AWTree& t) {
    const SignedMatrix m = build_matrix(t);
    const long long det = determinant(m);
    const auto adj = t.adjacency();
    for (int leaf = 0; leaf < t.size(); ++leaf) {
      if (adj[static_cast<std::size_t>(leaf)].size() != 1) continue;
      const int nb = adj[static_cast<std::size_t>(leaf)][0];
      const auto& lv = t.vertices[static_cast<std::size_t>(leaf)];
      const auto& nv = t.vertices[static_cast<std::size_t>(nb)];
      const long long rhs = lv.sign * numerator(lv.weight) * determinant(m.principal_minor_without({leaf})) -
                            denominator(lv.weight) * denominator(nv.weight) * determinant(m.principal_minor_without({leaf, nb}));
      ++leaves;
      if (rhs != det) ++bad;
    }
  });
  return {bad == 0, std::to_string(leaves) + " leaves, " + std::to_string(bad) + " mismatches"};
}

Outcome montesinos_roundtrip() {
  long long trees = 0, bad = 0;
  for_each_forest_upto(5, [&](const AWTree& t) {
    ++trees;
    if (!roundtrip_verify(t).passed()) ++bad;
  });
  return {bad == 0, std::to_string(trees) + " forests, " + std::to_string(bad) + " failures"};
}

Outcome determinant_oracle() {
  int compared = 0, disagree = 0;
  for (const auto& e : fixtures::corpus()) {
    if (e.diagram.crossing_count() > 10) continue;
    ++compared;
    if (link_determinant(e.diagram) != oracle::kauffman_determinant(e.diagram)) ++disagree;
  }
  const std::vector<std::pair<const char*, long long>> pinned{
      {"unknot", 1}, {"hopf", 2}, {"trefoil", 3}, {"figure_eight", 5}, {"borromean", 32}};
  std::string mismatches;
  for (auto [name, want] : pinned) {
    const long long got = link_determinant(fixtures::named(name));
    const long long ref = oracle::kauffman_determinant(fixtures::named(name));
    if (got != want)
      mismatches += std::string(" ") + name + ": expected " + std::to_string(want) + ", library " +
                    std::to_string(got) + ", oracle " + std::to_string(ref) + ";";
  }
  return {disagree == 0 && mismatches.empty(), std::to_string(compared) + " diagrams, " + std::to_string(disagree) +
                                                   " library/oracle disagreements;" +
                                                   (mismatches.empty() ? std::string(" pinned values match") : mismatches)};
}

Outcome fibonacci() {
  const long long want[] = {1, 2, 3, 5, 8, 13};
  std::string got;
  bool ok = true;
  for (int n = 1; n <= 6; ++n) {
    const long long d = abs_det(oracle::path_tree(n, Weight::One));
    got += (n > 1 ? "," : "") + std::to_string(d);
    ok = ok && d == want[n - 1];
  }
  return {ok, "|det| = " + got};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "trefoil reducibility", 1, trefoil_reducibility},
      {2, "Borromean rigidity", 10, borromean_rigidity},
      {3, "reducible iff Borromean-free", 600, theorem_bi_implication},
      {4, "triangle count identity", 1, euler_identity},
      {5, "effectiveness", 300, effectiveness},
      {6, "strong L-space criterion", 0, strong_lspace},
      {7, "tree operation invariance", 0, tree_ops},
      {8, "leaf recurrence", 0, leaf_recurrence},
      {9, "Montesinos round trip", 900, montesinos_roundtrip},
      {10, "determinant oracle", 0, determinant_oracle},
      {11, "Fibonacci paths", 0, fibonacci},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.seconds_limit == 0 || secs < c.seconds_limit;
    const bool pass = o.pass && in_time;
    const bool known = kKnownUnattainable.count(c.id) != 0;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << ": " << o.detail << " [" << timing;
    if (c.seconds_limit > 0) std::cout << ", limit " << c.seconds_limit << " s";
    std::cout << "]";
    if (!pass && known) std::cout << " (known unattainable, see decisions ledger)";
    if (pass && known) std::cout << " (listed as unattainable but passed)";
    std::cout << "\n";
    if (pass == known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
