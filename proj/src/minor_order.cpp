#include "strongl/minor_order.hpp"

#include <json.hpp>

namespace strongl {

namespace {

constexpr const char* kBorromeanPd = "X(1,2,3,4) X(2,5,6,7) X(7,8,9,3) X(8,6,10,11) X(11,12,4,9) X(12,10,5,1)";

struct Search {
  const Diagram& host;
  int want;  // pattern crossings
  CanonicalCode target;
  bool reflect;
  std::vector<int> kept;
  std::map<int, Smoothing> choices;
  std::optional<MinorWitness> found;

  // ids[c] is the current id of host crossing c, or -1 once smoothed.
  bool run(int i, const Diagram& cur, const std::vector<int>& ids) {
    const int n = host.crossing_count();
    if (static_cast<int>(kept.size()) + (n - i) < want) return false;
    if (i == n) return check(cur, ids);
    if (static_cast<int>(kept.size()) < want) {
      kept.push_back(i);
      if (run(i + 1, cur, ids)) return true;
      kept.pop_back();
    }
    for (Smoothing s : {Smoothing::A, Smoothing::B}) {
      const int c = ids[static_cast<std::size_t>(i)];
      const Diagram next = smooth(cur, c, s);
      std::vector<int> next_ids = ids;
      for (int& id : next_ids) {
        if (id == c) id = -1;
        else if (id > c) --id;
      }
      if (!kept_connected(next, next_ids)) continue;
      choices[i] = s;
      if (run(i + 1, next, next_ids)) return true;
      choices.erase(i);
    }
    return false;
  }

  bool kept_connected(const Diagram& d, const std::vector<int>& ids) const {
    if (kept.size() < 2) return true;
    const Components comps = crossing_components(d);
    const int first = comps.of_crossing[static_cast<std::size_t>(ids[static_cast<std::size_t>(kept[0])])];
    for (int k : kept)
      if (comps.of_crossing[static_cast<std::size_t>(ids[static_cast<std::size_t>(k)])] != first) return false;
    return true;
  }

  bool check(const Diagram& d, const std::vector<int>& ids) {
    if (!kept_connected(d, ids)) return false;
    const Components comps = crossing_components(d);
    const int comp = comps.of_crossing[static_cast<std::size_t>(ids[static_cast<std::size_t>(kept[0])])];
    if (component_code(extract_component(d, comps, comp), reflect) != target) return false;
    found = MinorWitness{kept, choices, target};
    return true;
  }
};

}  // namespace

const char* to_string(ContainmentResult::Status s) noexcept {
  switch (s) {
    case ContainmentResult::Status::Found: return "Found";
    case ContainmentResult::Status::NotContained: return "NotContained";
    case ContainmentResult::Status::PatternLargerThanHost: return "PatternLargerThanHost";
  }
  return "NotContained";
}

ContainmentResult contains_pattern(const Diagram& host, const Diagram& pattern, bool allow_reflection) {
  ContainmentResult out;
  const int k = pattern.crossing_count();
  if (k > host.crossing_count()) {
    out.status = ContainmentResult::Status::PatternLargerThanHost;
    return out;
  }
  if (k == 0) {
    if (pattern.free_loops() != 1) throw Error(ErrorCode::NotConnected, "pattern must be one component");
    // Smoothing everything always leaves at least one circle.
    MinorWitness w;
    for (int c = 0; c < host.crossing_count(); ++c) w.choices[c] = Smoothing::A;
    if (host.crossingless() && host.free_loops() == 0) return out;
    w.component_code = canonical_code(Diagram::unknot(1), allow_reflection);
    out.status = ContainmentResult::Status::Found;
    out.witness = std::move(w);
    return out;
  }
  if (pattern.free_loops() != 0 || crossing_components(pattern).with_crossings != 1)
    throw Error(ErrorCode::NotConnected, "pattern must be one component");

  Search s{host, k, component_code(pattern, allow_reflection), allow_reflection, {}, {}, std::nullopt};
  std::vector<int> ids(static_cast<std::size_t>(host.crossing_count()));
  for (int c = 0; c < host.crossing_count(); ++c) ids[static_cast<std::size_t>(c)] = c;
  if (s.run(0, host, ids)) {
    out.status = ContainmentResult::Status::Found;
    out.witness = std::move(s.found);
  }
  return out;
}

Diagram replay_witness(const Diagram& host, const MinorWitness& w) {
  Diagram cur = host;
  std::vector<int> ids(static_cast<std::size_t>(host.crossing_count()));
  for (int c = 0; c < host.crossing_count(); ++c) ids[static_cast<std::size_t>(c)] = c;
  for (const auto& [orig, choice] : w.choices) {
    const int c = ids.at(static_cast<std::size_t>(orig));
    cur = smooth(cur, c, choice);
    for (int& id : ids) {
      if (id == c) id = -1;
      else if (id > c) --id;
    }
  }
  if (w.kept.empty()) return Diagram::unknot(1);
  const Components comps = crossing_components(cur);
  return extract_component(cur, comps, comps.of_crossing[static_cast<std::size_t>(ids.at(static_cast<std::size_t>(w.kept[0])))]);
}

const Diagram& borromean_pattern() {
  static const Diagram d = parse_pd(kBorromeanPd);
  return d;
}

ContainmentResult contains_borromean(const Diagram& host) {
  if (host.crossing_count() > kBorromeanHostCap)
    throw Error(ErrorCode::SizeLimit, "Borromean search limited to " + std::to_string(kBorromeanHostCap) + " crossings");
  return contains_pattern(host, borromean_pattern(), true);
}

bool smoothing_order_leq(const std::vector<Diagram>& patterns, const std::vector<Diagram>& hosts,
                         bool allow_reflection) {
  for (const auto& h : hosts) {
    bool any = false;
    for (const auto& p : patterns) {
      if (contains_pattern(h, p, allow_reflection).found()) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

CrosscheckReport theorem_crosscheck(const Diagram& d, std::size_t budget) {
  const auto v = validate(d);
  if (!v.connected) throw Error(ErrorCode::NotConnected, "diagram is split");
  CrosscheckReport r;
  r.crossings = d.crossing_count();
  r.has_reducible_site = !find_reducible_sites(d).empty();
  const auto red = decide_b_reducible(d, budget);
  r.reduction = red.status;
  if (red.status == ReductionResult::Status::BudgetExhausted)
    throw Error(ErrorCode::Inconclusive, "reduction search hit its budget");
  if (d.crossing_count() > kBorromeanHostCap)
    throw Error(ErrorCode::Inconclusive, "host above the Borromean search cap");
  r.contains_borromean = contains_borromean(d).found();

  r.irreducible_contains_borromean.applies = r.crossings >= 1 && !r.has_reducible_site;
  r.irreducible_contains_borromean.passed =
      !r.irreducible_contains_borromean.applies || r.contains_borromean;
  r.reducible_avoids_borromean.applies = red.status == ReductionResult::Status::Found;
  r.reducible_avoids_borromean.passed = !r.reducible_avoids_borromean.applies || !r.contains_borromean;
  return r;
}

std::string witness_to_json(const MinorWitness& w) {
  nlohmann::ordered_json j;
  j["kept"] = w.kept;
  nlohmann::ordered_json choices = nlohmann::ordered_json::object();
  for (const auto& [c, s] : w.choices) choices[std::to_string(c)] = std::string(1, to_char(s));
  j["choices"] = std::move(choices);
  j["component"] = to_hex(w.component_code);
  return j.dump();
}

}  // namespace strongl
