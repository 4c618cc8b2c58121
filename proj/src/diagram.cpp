#include "strongl/diagram.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

namespace strongl {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::EdgeLabelNotUsedTwice: return "EdgeLabelNotUsedTwice";
    case ErrorCode::NonSphericalEmbedding: return "NonSphericalEmbedding";
    case ErrorCode::PreconditionFaceTooSmall: return "PreconditionFaceTooSmall";
    case ErrorCode::NoSuchCrossing: return "NoSuchCrossing";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::Crossingless: return "Crossingless";
    case ErrorCode::StaleSite: return "StaleSite";
    case ErrorCode::ReplayError: return "ReplayError";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::CycleFound: return "CycleFound";
    case ErrorCode::SignClash: return "SignClash";
    case ErrorCode::SiteShapeMismatch: return "SiteShapeMismatch";
    case ErrorCode::AlternationUnsatisfiable: return "AlternationUnsatisfiable";
    case ErrorCode::CertificateInvalid: return "CertificateInvalid";
    case ErrorCode::CaseAnalysisFailure: return "CaseAnalysisFailure";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Error";
}

char to_char(Smoothing s) noexcept { return s == Smoothing::A ? 'A' : 'B'; }

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

}  // namespace

Diagram::Diagram(std::vector<int> mate, std::vector<std::uint8_t> under_even, int free_loops)
    : mate_(std::move(mate)), under_even_(std::move(under_even)), free_loops_(free_loops) {
  if (free_loops_ < 0) throw Error(ErrorCode::MalformedRecord, "negative free loop count");
  const int n = static_cast<int>(mate_.size());
  if (n != 4 * crossing_count()) {
    throw Error(ErrorCode::MalformedRecord, "pairing size does not match crossing count");
  }
  for (int h = 0; h < n; ++h) {
    const int m = mate_[idx(h)];
    if (m < 0 || m >= n || m == h || mate_[idx(m)] != h) {
      throw Error(ErrorCode::EdgeLabelNotUsedTwice, "half-edge pairing is not a perfect matching");
    }
  }
  const Components comps = crossing_components(*this);
  const Faces f = faces(*this);
  std::vector<int> verts(idx(comps.with_crossings), 0);
  std::vector<int> face_count(idx(comps.with_crossings), 0);
  for (int c = 0; c < crossing_count(); ++c) ++verts[idx(comps.of_crossing[idx(c)])];
  for (int comp : f.component) ++face_count[idx(comp)];
  for (int k = 0; k < comps.with_crossings; ++k) {
    // V - E + F = 2 with E = 2V
    if (face_count[idx(k)] != verts[idx(k)] + 2) {
      throw Error(ErrorCode::NonSphericalEmbedding,
                  "component " + std::to_string(k) + " has V=" + std::to_string(verts[idx(k)]) +
                      " and F=" + std::to_string(face_count[idx(k)]));
    }
  }
}

Diagram Diagram::unknot(int loops) { return Diagram({}, {}, loops); }

Diagram Diagram::with_crossing_switched(int c) const {
  if (c < 0 || c >= crossing_count()) throw Error(ErrorCode::NoSuchCrossing, std::to_string(c));
  Diagram out = *this;
  out.under_even_[idx(c)] ^= 1;
  return out;
}

Diagram Diagram::mirrored() const {
  Diagram out = *this;
  for (auto& u : out.under_even_) u ^= 1;
  return out;
}

Diagram disjoint_union(const Diagram& a, const Diagram& b) {
  std::vector<int> mate = a.mates();
  const int shift = a.half_edge_count();
  for (int m : b.mates()) mate.push_back(m + shift);
  std::vector<std::uint8_t> under = a.under_marks();
  under.insert(under.end(), b.under_marks().begin(), b.under_marks().end());
  return Diagram(std::move(mate), std::move(under), a.free_loops() + b.free_loops());
}

Components crossing_components(const Diagram& d) {
  const int v = d.crossing_count();
  UnionFind uf(v);
  for (int h = 0; h < d.half_edge_count(); ++h) {
    uf.unite(Diagram::crossing_of(h), Diagram::crossing_of(d.mate(h)));
  }
  Components out;
  out.of_crossing.assign(idx(v), -1);
  std::vector<int> id_of_root(idx(v), -1);
  for (int c = 0; c < v; ++c) {
    const int r = uf.find(c);
    if (id_of_root[idx(r)] < 0) id_of_root[idx(r)] = out.with_crossings++;
    out.of_crossing[idx(c)] = id_of_root[idx(r)];
  }
  return out;
}

Faces faces(const Diagram& d) {
  Faces f;
  const int n = d.half_edge_count();
  f.face_of_half_edge.assign(idx(n), -1);
  const Components comps = crossing_components(d);
  for (int h = 0; h < n; ++h) {
    if (f.face_of_half_edge[idx(h)] >= 0) continue;
    const int id = f.count();
    int len = 0;
    int x = h;
    do {
      f.face_of_half_edge[idx(x)] = id;
      ++len;
      x = Diagram::rotate(d.mate(x), 1);
    } while (x != h);
    f.degree.push_back(len);
    f.component.push_back(comps.of_crossing[idx(Diagram::crossing_of(h))]);
  }
  return f;
}

bool is_alternating(const Diagram& d) {
  for (int h = 0; h < d.half_edge_count(); ++h) {
    if (d.is_under(h) == d.is_under(d.mate(h))) return false;
  }
  return true;
}

ValidationReport validate(const Diagram& d) {
  ValidationReport r;
  r.components = crossing_components(d).with_crossings + d.free_loops();
  r.connected = r.components <= 1;
  r.alternating = is_alternating(d);
  return r;
}

FaceCensus face_census(const Diagram& d) {
  const Faces f = faces(d);
  FaceCensus census;
  census.per_component.resize(idx(crossing_components(d).with_crossings));
  for (int i = 0; i < f.count(); ++i) {
    ++census.total[f.degree[idx(i)]];
    ++census.per_component[idx(f.component[idx(i)])][f.degree[idx(i)]];
  }
  return census;
}

long euler_identity_residual(const Diagram& d) {
  if (d.crossingless()) throw Error(ErrorCode::Crossingless, "no faces to count");
  if (!validate(d).connected) throw Error(ErrorCode::NotConnected, "diagram is split");
  const FaceCensus census = face_census(d);
  long residual = -8;
  for (const auto& [k, n] : census.total) {
    if (k <= 2) {
      throw Error(ErrorCode::PreconditionFaceTooSmall,
                  std::to_string(n) + " face(s) with " + std::to_string(k) + " corner(s)");
    }
    if (k == 3) residual += n;
    if (k >= 5) residual -= static_cast<long>(k - 4) * n;
  }
  return residual;
}

int a_corner_parity(const Diagram& d, int c) {
  // Over slots are o and o+2; rotating them counterclockwise sweeps corners o and o+2.
  return d.under_even(c) ? 1 : 0;
}

Diagram smooth_merging_corners(const Diagram& d, int c, int parity) {
  if (c < 0 || c >= d.crossing_count()) throw Error(ErrorCode::NoSuchCrossing, std::to_string(c));
  // Merging corners p and p+2 leaves arcs around corners p+1 and p+3.
  std::array<int, 4> partner{};
  const int p = parity & 1;
  const auto link = [&](int s, int t) {
    partner[idx(s & 3)] = t & 3;
    partner[idx(t & 3)] = s & 3;
  };
  link(p + 1, p + 2);
  link(p + 3, p);

  const int n = d.half_edge_count();
  std::vector<int> mate = d.mates();
  std::array<bool, 4> seen{};
  for (int h = 0; h < n; ++h) {
    if (Diagram::crossing_of(h) == c || Diagram::crossing_of(d.mate(h)) != c) continue;
    int x = d.mate(h);
    while (true) {
      seen[idx(Diagram::slot_of(x))] = true;
      const int y = Diagram::half_edge(c, partner[idx(Diagram::slot_of(x))]);
      seen[idx(Diagram::slot_of(y))] = true;
      const int z = d.mate(y);
      if (Diagram::crossing_of(z) != c) {
        mate[idx(h)] = z;
        break;
      }
      x = z;
    }
  }
  int loops = d.free_loops();
  for (int s = 0; s < 4; ++s) {
    if (seen[idx(s)]) continue;
    ++loops;
    int x = Diagram::half_edge(c, s);
    while (!seen[idx(Diagram::slot_of(x))]) {
      seen[idx(Diagram::slot_of(x))] = true;
      const int y = Diagram::half_edge(c, partner[idx(Diagram::slot_of(x))]);
      seen[idx(Diagram::slot_of(y))] = true;
      x = d.mate(y);
    }
  }

  const auto renumber = [c](int h) { return Diagram::crossing_of(h) > c ? h - 4 : h; };
  std::vector<int> out_mate;
  out_mate.reserve(idx(n - 4));
  for (int h = 0; h < n; ++h) {
    if (Diagram::crossing_of(h) == c) continue;
    out_mate.push_back(renumber(mate[idx(h)]));
  }
  std::vector<std::uint8_t> under = d.under_marks();
  under.erase(under.begin() + c);
  return Diagram(std::move(out_mate), std::move(under), loops);
}

Diagram smooth(const Diagram& d, int c, Smoothing choice) {
  if (c < 0 || c >= d.crossing_count()) throw Error(ErrorCode::NoSuchCrossing, std::to_string(c));
  const int a = a_corner_parity(d, c);
  return smooth_merging_corners(d, c, choice == Smoothing::A ? a : 1 - a);
}

Diagram extract_component(const Diagram& d, const Components& comps, int comp) {
  std::vector<int> new_id(idx(d.crossing_count()), -1);
  std::vector<std::uint8_t> under;
  for (int c = 0; c < d.crossing_count(); ++c) {
    if (comps.of_crossing[idx(c)] == comp) {
      new_id[idx(c)] = static_cast<int>(under.size());
      under.push_back(d.under_even(c) ? 1 : 0);
    }
  }
  std::vector<int> mate(under.size() * 4);
  for (int c = 0; c < d.crossing_count(); ++c) {
    if (new_id[idx(c)] < 0) continue;
    for (int s = 0; s < 4; ++s) {
      const int m = d.mate(Diagram::half_edge(c, s));
      mate[idx(Diagram::half_edge(new_id[idx(c)], s))] =
          Diagram::half_edge(new_id[idx(Diagram::crossing_of(m))], Diagram::slot_of(m));
    }
  }
  return Diagram(std::move(mate), std::move(under), 0);
}

std::vector<Diagram> split_components(const Diagram& d) {
  const Components comps = crossing_components(d);
  std::vector<Diagram> out;
  for (int k = 0; k < comps.with_crossings; ++k) out.push_back(extract_component(d, comps, k));
  for (int i = 0; i < d.free_loops(); ++i) out.push_back(Diagram::unknot(1));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Words = std::vector<std::uint16_t>;

// Breadth-first encoding of the component containing `start`, reading slots
// in direction `dir` (+1 counterclockwise, -1 clockwise).
void encode_from(const Diagram& d, int start, int dir, std::vector<int>& index,
                 std::vector<int>& base, std::vector<int>& order, Words& out) {
  for (int c : order) index[idx(c)] = -1;
  order.clear();
  out.clear();
  const auto enter = [&](int h) {
    const int c = Diagram::crossing_of(h);
    index[idx(c)] = static_cast<int>(order.size());
    base[idx(c)] = Diagram::slot_of(h);
    order.push_back(c);
  };
  enter(start);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int c = order[i];
    const int b = base[idx(c)];
    out.push_back(d.is_under(Diagram::half_edge(c, b)) ? 1 : 0);
    for (int k = 0; k < 4; ++k) {
      const int m = d.mate(Diagram::half_edge(c, b + dir * k));
      const int cm = Diagram::crossing_of(m);
      if (index[idx(cm)] < 0) enter(m);
      const int local = ((Diagram::slot_of(m) - base[idx(cm)]) * dir + 8) & 3;
      out.push_back(static_cast<std::uint16_t>(index[idx(cm)]));
      out.push_back(static_cast<std::uint16_t>(local));
    }
  }
  out.insert(out.begin(), static_cast<std::uint16_t>(order.size()));
}

Words component_words(const Diagram& d, const std::vector<int>& starts, bool allow_reflection) {
  std::vector<int> index(idx(d.crossing_count()), -1);
  std::vector<int> base(idx(d.crossing_count()), 0);
  std::vector<int> order;
  Words best;
  Words cur;
  for (int h : starts) {
    for (int dir : {1, -1}) {
      if (dir < 0 && !allow_reflection) continue;
      encode_from(d, h, dir, index, base, order, cur);
      if (best.empty() || cur < best) best = cur;
    }
  }
  return best;
}

void push_words(const Words& w, CanonicalCode& out) {
  for (std::uint16_t x : w) {
    out.push_back(static_cast<std::uint8_t>(x >> 8));
    out.push_back(static_cast<std::uint8_t>(x & 0xff));
  }
}

}  // namespace

CanonicalCode component_code(const Diagram& connected, bool allow_reflection) {
  std::vector<int> starts(idx(connected.half_edge_count()));
  std::iota(starts.begin(), starts.end(), 0);
  CanonicalCode out;
  push_words(component_words(connected, starts, allow_reflection), out);
  return out;
}

CanonicalCode canonical_code(const Diagram& d, bool allow_reflection) {
  const Components comps = crossing_components(d);
  std::vector<std::vector<int>> starts(idx(comps.with_crossings));
  for (int h = 0; h < d.half_edge_count(); ++h) {
    starts[idx(comps.of_crossing[idx(Diagram::crossing_of(h))])].push_back(h);
  }
  std::vector<Words> codes;
  codes.reserve(starts.size());
  for (const auto& s : starts) codes.push_back(component_words(d, s, allow_reflection));
  std::sort(codes.begin(), codes.end());
  CanonicalCode out;
  push_words({static_cast<std::uint16_t>(codes.size())}, out);
  for (const auto& w : codes) push_words(w, out);
  push_words({static_cast<std::uint16_t>(d.free_loops())}, out);
  return out;
}

CanonicalCode projection_code(const Diagram& d) {
  const Components comps = crossing_components(d);
  std::vector<std::vector<int>> starts(idx(comps.with_crossings));
  for (int h = 0; h < d.half_edge_count(); ++h) {
    starts[idx(comps.of_crossing[idx(Diagram::crossing_of(h))])].push_back(h);
  }
  const Diagram mirror = d.mirrored();
  std::vector<Words> codes;
  codes.reserve(starts.size());
  for (const auto& s : starts) {
    codes.push_back(std::min(component_words(d, s, true), component_words(mirror, s, true)));
  }
  std::sort(codes.begin(), codes.end());
  CanonicalCode out;
  push_words({static_cast<std::uint16_t>(codes.size())}, out);
  for (const auto& w : codes) push_words(w, out);
  push_words({static_cast<std::uint16_t>(d.free_loops())}, out);
  return out;
}

std::string to_hex(const CanonicalCode& code) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(code.size() * 2);
  for (std::uint8_t b : code) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

Diagram from_records(const std::vector<std::array<long, 4>>& records, int loops) {
  std::unordered_map<long, std::vector<int>> uses;
  for (std::size_t c = 0; c < records.size(); ++c) {
    for (int s = 0; s < 4; ++s) {
      uses[records[c][idx(s)]].push_back(Diagram::half_edge(static_cast<int>(c), s));
    }
  }
  std::vector<int> mate(records.size() * 4, -1);
  for (const auto& [label, hs] : uses) {
    if (hs.size() != 2) {
      throw Error(ErrorCode::EdgeLabelNotUsedTwice,
                  "label " + std::to_string(label) + " used " + std::to_string(hs.size()) + " time(s)");
    }
    mate[idx(hs[0])] = hs[1];
    mate[idx(hs[1])] = hs[0];
  }
  return Diagram(std::move(mate), std::vector<std::uint8_t>(records.size(), 1), loops);
}

struct Labelled {
  std::vector<std::array<int, 4>> records;
};

// Orients every strand and labels edges consecutively; records start at the
// incoming under-strand.
Labelled label_edges(const Diagram& d) {
  const int n = d.half_edge_count();
  std::vector<int> label(idx(n), 0);
  std::vector<std::uint8_t> incoming(idx(n), 0);
  int next = 1;
  for (int c = 0; c < d.crossing_count(); ++c) {
    for (int s : {2, 3, 0, 1}) {
      const int start = Diagram::half_edge(c, s);
      if (label[idx(start)] != 0) continue;
      int out = start;
      do {
        const int m = d.mate(out);
        label[idx(out)] = label[idx(m)] = next++;
        incoming[idx(m)] = 1;
        out = Diagram::rotate(m, 2);
      } while (out != start);
    }
  }
  Labelled l;
  for (int c = 0; c < d.crossing_count(); ++c) {
    int first = 0;
    for (int s = 0; s < 4; ++s) {
      const int h = Diagram::half_edge(c, s);
      if (d.is_under(h) && incoming[idx(h)]) first = s;
    }
    std::array<int, 4> r{};
    for (int k = 0; k < 4; ++k) r[idx(k)] = label[idx(Diagram::half_edge(c, first + k))];
    l.records.push_back(r);
  }
  return l;
}

}  // namespace

Diagram parse_pd(std::string_view text) {
  std::vector<std::array<long, 4>> records;
  int loops = 0;
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',' || text[i] == ';')) ++i;
  };
  const auto fail = [&](const std::string& why) {
    return Error(ErrorCode::MalformedRecord, why + " at offset " + std::to_string(i));
  };
  skip();
  if (i == text.size()) throw fail("empty input");
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == 'O' || ch == 'o') {
      ++loops;
      ++i;
    } else if (ch == 'X' || ch == 'x') {
      ++i;
      if (i >= text.size() || (text[i] != '(' && text[i] != '[')) throw fail("expected '(' after X");
      const char close = text[i] == '(' ? ')' : ']';
      ++i;
      std::array<long, 4> r{};
      for (int k = 0; k < 4; ++k) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || (k > 0 && text[i] == ','))) ++i;
        std::size_t j = i;
        if (j < text.size() && text[j] == '-') ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i || (j == i + 1 && text[i] == '-')) throw fail("expected edge label");
        r[idx(k)] = std::stol(std::string(text.substr(i, j - i)));
        i = j;
      }
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      if (i >= text.size() || text[i] != close) throw fail("expected closing bracket");
      ++i;
      records.push_back(r);
    } else {
      throw fail(std::string("unexpected character '") + ch + "'");
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',' && text[i] != ';') {
      throw fail("records must be separated");
    }
    skip();
  }
  return from_records(records, loops);
}

std::string to_pd(const Diagram& d) {
  std::string out;
  for (const auto& r : label_edges(d).records) {
    if (!out.empty()) out += ' ';
    out += "X(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "," + std::to_string(r[2]) + "," +
           std::to_string(r[3]) + ")";
  }
  for (int i = 0; i < d.free_loops(); ++i) out += out.empty() ? "O" : " O";
  return out;
}

Diagram parse_diagram_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::MalformedRecord, "expected a JSON object");
  std::vector<std::array<long, 4>> records;
  int loops = 0;
  try {
    for (const auto& x : j.value("crossings", nlohmann::json::array())) {
      if (!x.is_array() || x.size() != 4) throw Error(ErrorCode::MalformedRecord, "crossing needs 4 labels");
      records.push_back({x[0].get<long>(), x[1].get<long>(), x[2].get<long>(), x[3].get<long>()});
    }
    loops = j.value("free_loops", 0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
  return from_records(records, loops);
}

std::string to_diagram_json(const Diagram& d) {
  nlohmann::ordered_json j;
  j["crossings"] = nlohmann::json::array();
  for (const auto& r : label_edges(d).records) j["crossings"].push_back(r);
  j["free_loops"] = d.free_loops();
  return j.dump();
}

Diagram parse_diagram(std::string_view text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' ? parse_diagram_json(text) : parse_pd(text);
  }
  throw Error(ErrorCode::MalformedRecord, "empty input");
}

}  // namespace strongl
