#include "strongl/montesinos.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <sstream>

#include "strongl/error.hpp"
#include "strongl/goeritz.hpp"

namespace strongl {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// positions[a] = {first, second} axis positions of arc a.
std::vector<std::array<int, 2>> arc_positions(const LinearRealization& r) {
  std::vector<std::array<int, 2>> pos(r.arcs.size(), {-1, -1});
  for (int p = 0; p < static_cast<int>(r.endpoints.size()); ++p) {
    const int a = r.endpoints[idx(p)];
    if (a < 0 || a >= static_cast<int>(r.arcs.size()))
      throw Error(ErrorCode::MalformedRecord, "endpoint names a missing arc");
    auto& slot = pos[idx(a)];
    if (slot[0] < 0) slot[0] = p;
    else if (slot[1] < 0) slot[1] = p;
    else throw Error(ErrorCode::MalformedRecord, "arc " + arc_label(a) + " has more than two endpoints");
  }
  for (std::size_t a = 0; a < pos.size(); ++a)
    if (pos[a][1] < 0) throw Error(ErrorCode::MalformedRecord, "arc " + arc_label(static_cast<int>(a)) + " needs two endpoints");
  return pos;
}

bool interleave(const std::array<int, 2>& a, const std::array<int, 2>& b) {
  const bool first_inside = a[0] < b[0] && b[0] < a[1];
  const bool second_inside = a[0] < b[1] && b[1] < a[1];
  return first_inside != second_inside;
}

}  // namespace

std::string arc_label(int arc) {
  std::string s(1, static_cast<char>('A' + arc % 26));
  if (arc >= 26) s += std::to_string(arc / 26);
  return s;
}

bool arcs_interleave(const LinearRealization& r, int a, int b) {
  const auto pos = arc_positions(r);
  return interleave(pos.at(idx(a)), pos.at(idx(b)));
}

AWTree interleaving_tree(const LinearRealization& r) {
  const auto pos = arc_positions(r);
  AWTree t;
  for (const auto& arc : r.arcs) t.add_vertex(arc.sign, arc.weight);
  const int m = static_cast<int>(r.arcs.size());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (interleave(pos[idx(a)], pos[idx(b)])) t.add_edge(a, b);
  return t;
}

void validate_realization(const LinearRealization& r) { validate_tree(interleaving_tree(r)); }

LinearRealization realize_tree(const AWTree& t) {
  validate_tree(t);
  LinearRealization r;
  for (int v = 0; v < t.size(); ++v)
    r.arcs.push_back({t.vertices[idx(v)].sign, t.vertices[idx(v)].weight, v});
  auto adj = t.adjacency();
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<bool> seen(idx(t.size()), false);

  // around(u): children open in reverse order, then u closes, then each
  // child's own layout follows.
  const auto around = [&](auto&& self, int u) -> void {
    std::vector<int> kids;
    for (int w : adj[idx(u)])
      if (!seen[idx(w)]) {
        seen[idx(w)] = true;
        kids.push_back(w);
      }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) r.endpoints.push_back(*it);
    r.endpoints.push_back(u);
    for (int w : kids) self(self, w);
  };
  for (int root = 0; root < t.size(); ++root) {
    if (seen[idx(root)]) continue;
    seen[idx(root)] = true;
    r.endpoints.push_back(root);
    around(around, root);
  }
  return r;
}

Diagram m_induced_diagram(const LinearRealization& r) {
  validate_realization(r);
  const auto pos = arc_positions(r);

  // Cut points: endpoints of finite arcs, in axis order.  End 2k is the left
  // side of cut k, end 2k+1 its right side.
  std::vector<int> cut_of_position(r.endpoints.size(), -1);
  int cuts = 0;
  for (std::size_t p = 0; p < r.endpoints.size(); ++p)
    if (r.arcs[idx(r.endpoints[p])].weight != Weight::Infinity) cut_of_position[p] = cuts++;
  if (cuts == 0) return Diagram::unknot(1);

  const int ends = 2 * cuts;
  std::vector<int> axis(idx(ends));
  for (int k = 0; k < cuts; ++k) {
    const int right = 2 * k + 1;
    const int next_left = 2 * ((k + 1) % cuts);
    axis[idx(right)] = next_left;
    axis[idx(next_left)] = right;
  }

  // band[e] >= 0: another end (flat band); band[e] < 0: half-edge -1 - band[e].
  std::vector<int> band(idx(ends), 0);
  std::vector<int> end_of_slot;
  int crossing = 0;
  for (std::size_t a = 0; a < r.arcs.size(); ++a) {
    const auto& arc = r.arcs[a];
    if (arc.weight == Weight::Infinity) continue;
    const int p = cut_of_position[idx(pos[a][0])];
    const int q = cut_of_position[idx(pos[a][1])];
    const int p_left = 2 * p, p_right = 2 * p + 1, q_left = 2 * q, q_right = 2 * q + 1;
    if (arc.weight == Weight::Zero) {
      band[idx(p_right)] = q_left;
      band[idx(q_left)] = p_right;
      band[idx(p_left)] = q_right;
      band[idx(q_right)] = p_left;
      continue;
    }
    // Counterclockwise ports around the crossing at the middle of the band.
    const std::array<int, 4> ports = arc.sign > 0 ? std::array<int, 4>{q_left, q_right, p_left, p_right}
                                                  : std::array<int, 4>{q_left, p_right, p_left, q_right};
    for (int s = 0; s < 4; ++s) {
      const int h = Diagram::half_edge(crossing, s);
      band[idx(ports[idx(s)])] = -1 - h;
      end_of_slot.push_back(ports[idx(s)]);
    }
    ++crossing;
  }

  std::vector<bool> visited(idx(ends), false);
  std::vector<int> mate(end_of_slot.size(), -1);
  for (int h = 0; h < static_cast<int>(end_of_slot.size()); ++h) {
    int cur = end_of_slot[idx(h)];
    while (true) {
      visited[idx(cur)] = true;
      const int nxt = axis[idx(cur)];
      visited[idx(nxt)] = true;
      if (band[idx(nxt)] < 0) {
        mate[idx(h)] = -1 - band[idx(nxt)];
        break;
      }
      cur = band[idx(nxt)];
    }
  }
  int loops = 0;
  for (int e = 0; e < ends; ++e) {
    if (visited[idx(e)]) continue;
    ++loops;
    int cur = e;
    while (!visited[idx(cur)]) {
      visited[idx(cur)] = true;
      const int nxt = axis[idx(cur)];
      visited[idx(nxt)] = true;
      cur = band[idx(nxt)];
    }
  }

  // Alternation: along every edge exactly one end is under.
  const int n = crossing;
  std::vector<int> under(idx(n), -1);
  const auto is_under = [&](int h) { return ((Diagram::slot_of(h) & 1) == 0) == (under[idx(Diagram::crossing_of(h))] == 1); };
  for (int start = 0; start < n; ++start) {
    if (under[idx(start)] >= 0) continue;
    under[idx(start)] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      for (int s = 0; s < 4; ++s) {
        const int h = Diagram::half_edge(c, s);
        const int m = mate[idx(h)];
        const int cm = Diagram::crossing_of(m);
        const bool m_even = (Diagram::slot_of(m) & 1) == 0;
        const int want = (!is_under(h)) == m_even ? 1 : 0;
        if (under[idx(cm)] < 0) {
          under[idx(cm)] = want;
          stack.push_back(cm);
        } else if (under[idx(cm)] != want) {
          throw Error(ErrorCode::AlternationUnsatisfiable, "no alternating over/under assignment");
        }
      }
    }
  }
  std::vector<std::uint8_t> marks(idx(n));
  for (int c = 0; c < n; ++c) marks[idx(c)] = static_cast<std::uint8_t>(under[idx(c)]);
  return Diagram(std::move(mate), std::move(marks), loops);
}

namespace {

std::vector<LinearRealization> template_candidates(const LinearRealization& r) {
  std::vector<LinearRealization> out;
  for (std::size_t a = 0; a < r.arcs.size(); ++a) {
    if (r.arcs[a].weight == Weight::One) continue;
    LinearRealization c = r;
    c.arcs[a].weight = Weight::One;
    out.push_back(std::move(c));
  }
  const int m = static_cast<int>(r.arcs.size());
  const int gaps = static_cast<int>(r.endpoints.size()) + 1;
  for (int sign : {1, -1}) {
    for (int i = 0; i < gaps; ++i) {
      for (int j = i; j < gaps; ++j) {
        LinearRealization c;
        c.arcs = r.arcs;
        c.arcs.push_back({sign, Weight::One, m});
        c.endpoints.reserve(r.endpoints.size() + 2);
        for (int p = 0; p <= static_cast<int>(r.endpoints.size()); ++p) {
          if (p == i) c.endpoints.push_back(m);
          if (p == j) c.endpoints.push_back(m);
          if (p < static_cast<int>(r.endpoints.size())) c.endpoints.push_back(r.endpoints[idx(p)]);
        }
        try {
          validate_realization(c);
        } catch (const Error&) {
          continue;
        }
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace

TreeFromDiagram diagram_to_tree(const Diagram& d, const Certificate& cert, std::size_t budget) {
  bool ok = false;
  try {
    ok = verify_certificate(d, cert);
  } catch (const Error& e) {
    throw Error(ErrorCode::CertificateInvalid, e.what());
  }
  if (!ok) throw Error(ErrorCode::CertificateInvalid, "certificate does not end at its final code");

  std::vector<CanonicalCode> targets{projection_code(d)};
  Diagram cur = d;
  for (const auto& mv : cert.moves) {
    cur = apply_move(cur, mv);
    targets.push_back(projection_code(cur));
  }
  const int loops = cur.free_loops();
  if (loops < 1) throw Error(ErrorCode::CertificateInvalid, "reduction ends with no circles");

  LinearRealization base;
  for (int a = 0; a + 1 < loops; ++a) {
    base.arcs.push_back({1, Weight::Zero, a});
    base.endpoints.push_back(a);
    base.endpoints.push_back(a);
  }

  std::size_t evaluations = 0;
  LinearRealization found;
  const auto solve = [&](auto&& self, std::size_t k, const LinearRealization& r) -> bool {
    if (k == 0) {
      found = r;
      return true;
    }
    for (const auto& c : template_candidates(r)) {
      if (++evaluations > budget)
        throw Error(ErrorCode::CaseAnalysisFailure, "template search budget exhausted at step " + std::to_string(k));
      if (projection_code(m_induced_diagram(c)) == targets[k - 1] && self(self, k - 1, c)) return true;
    }
    return false;
  };
  if (!solve(solve, cert.moves.size(), base))
    throw Error(ErrorCode::CaseAnalysisFailure, "no realization template reproduces the certificate");
  return {interleaving_tree(found), found};
}

RoundtripReport roundtrip_verify(const AWTree& t, std::size_t budget) {
  RoundtripReport rep;
  const LinearRealization r = realize_tree(t);
  const Diagram d = m_induced_diagram(r);
  rep.crossings = d.crossing_count();
  rep.alternating = is_alternating(d);
  rep.tree_determinant = std::llabs(determinant(build_matrix(t)));
  rep.diagram_determinant = link_determinant(d);
  rep.forward_match = rep.tree_determinant == rep.diagram_determinant;
  const auto red = decide_b_reducible(d, budget);
  rep.reducible = red.status == ReductionResult::Status::Found;
  if (!rep.reducible) {
    rep.error = std::string("reduction search: ") + to_string(red.status);
    return rep;
  }
  try {
    const auto back = diagram_to_tree(d, *red.certificate);
    rep.back_determinant = std::llabs(determinant(build_matrix(back.tree)));
    rep.back_match = rep.back_determinant == rep.diagram_determinant;
  } catch (const Error& e) {
    rep.error = e.what();
  }
  return rep;
}

std::string to_realization_text(const LinearRealization& r) {
  std::string out;
  for (std::size_t p = 0; p < r.endpoints.size(); ++p) {
    if (p > 0) out += ' ';
    out += arc_label(r.endpoints[p]);
  }
  out += '\n';
  for (std::size_t a = 0; a < r.arcs.size(); ++a) {
    out += arc_label(static_cast<int>(a)) + (r.arcs[a].sign > 0 ? " + " : " - ") + to_string(r.arcs[a].weight) + "\n";
  }
  return out;
}

LinearRealization parse_realization_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> labels;
  bool have_sequence = false;
  std::map<std::string, int> ids;
  LinearRealization r;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (!have_sequence) {
      labels = tokens;
      have_sequence = true;
      continue;
    }
    if (tokens.size() != 3 || (tokens[1] != "+" && tokens[1] != "-"))
      throw Error(ErrorCode::MalformedRecord, "legend line must be <label> <+|-> <0|1|inf>");
    const int id = static_cast<int>(r.arcs.size());
    if (!ids.emplace(tokens[0], id).second) throw Error(ErrorCode::MalformedRecord, "duplicate legend label " + tokens[0]);
    r.arcs.push_back({tokens[1] == "+" ? 1 : -1, parse_weight(tokens[2]), id});
  }
  for (const auto& l : labels) {
    const auto it = ids.find(l);
    if (it == ids.end()) throw Error(ErrorCode::MalformedRecord, "endpoint label " + l + " has no legend line");
    r.endpoints.push_back(it->second);
  }
  validate_realization(r);
  return r;
}

}  // namespace strongl
