#include "strongl/reducibility.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <json.hpp>

namespace strongl {

namespace {

// Corner parity q at crossing c with {face(q), face(q+2)} == {f, g}, or -1.
int parity_with_faces(const Faces& fs, int c, int f, int g) {
  for (int q = 0; q < 2; ++q) {
    const int a = fs.corner_face(c, q);
    const int b = fs.corner_face(c, q + 2);
    if ((a == f && b == g) || (a == g && b == f)) return q;
  }
  return -1;
}

bool site_present(const Diagram& d, const ReducibleSite& site) {
  const auto sites = site.kind == ReducibleSite::Kind::One ? find_one_reducible(d) : find_two_reducible(d);
  return std::find(sites.begin(), sites.end(), site) != sites.end();
}

std::string stale(const ReducibleSite& s) {
  return "no reducible site at crossings " + std::to_string(s.c1) +
         (s.kind == ReducibleSite::Kind::Two ? "," + std::to_string(s.c2) : std::string{});
}

std::uint8_t hex_digit(char ch) {
  if (ch >= '0' && ch <= '9') return static_cast<std::uint8_t>(ch - '0');
  if (ch >= 'a' && ch <= 'f') return static_cast<std::uint8_t>(ch - 'a' + 10);
  if (ch >= 'A' && ch <= 'F') return static_cast<std::uint8_t>(ch - 'A' + 10);
  throw Error(ErrorCode::CertificateInvalid, "bad hex digit in canonical code");
}

CanonicalCode from_hex(const std::string& s) {
  if (s.size() % 2 != 0) throw Error(ErrorCode::CertificateInvalid, "odd-length canonical code");
  CanonicalCode out;
  for (std::size_t i = 0; i < s.size(); i += 2)
    out.push_back(static_cast<std::uint8_t>(hex_digit(s[i]) << 4 | hex_digit(s[i + 1])));
  return out;
}

}  // namespace

std::vector<ReducibleSite> find_one_reducible(const Diagram& d) {
  std::vector<ReducibleSite> out;
  const Faces fs = faces(d);
  for (int c = 0; c < d.crossing_count(); ++c) {
    for (int q = 0; q < 2; ++q) {
      const int f = fs.corner_face(c, q);
      if (f == fs.corner_face(c, q + 2)) {
        out.push_back({ReducibleSite::Kind::One, c, -1, f, -1});
        break;
      }
    }
  }
  return out;
}

std::vector<ReducibleSite> find_two_reducible(const Diagram& d) {
  std::vector<ReducibleSite> out;
  const Faces fs = faces(d);
  const int n = d.crossing_count();
  for (int c1 = 0; c1 < n; ++c1) {
    for (int q = 0; q < 2; ++q) {
      const int f = fs.corner_face(c1, q);
      const int g = fs.corner_face(c1, q + 2);
      if (f == g) continue;
      for (int c2 = c1 + 1; c2 < n; ++c2) {
        if (parity_with_faces(fs, c2, f, g) >= 0)
          out.push_back({ReducibleSite::Kind::Two, c1, c2, std::min(f, g), std::max(f, g)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ReducibleSite& a, const ReducibleSite& b) {
    return std::tie(a.c1, a.c2, a.face1, a.face2) < std::tie(b.c1, b.c2, b.face1, b.face2);
  });
  return out;
}

std::vector<ReducibleSite> find_reducible_sites(const Diagram& d) {
  auto out = find_one_reducible(d);
  const auto two = find_two_reducible(d);
  out.insert(out.end(), two.begin(), two.end());
  return out;
}

Diagram apply_move_i(const Diagram& d, const ReducibleSite& site) {
  if (site.kind != ReducibleSite::Kind::One || !site_present(d, site))
    throw Error(ErrorCode::StaleSite, stale(site));
  const Faces fs = faces(d);
  const int q = fs.corner_face(site.c1, 0) == site.face1 && fs.corner_face(site.c1, 2) == site.face1 ? 0 : 1;
  return smooth_merging_corners(d, site.c1, q + 1);
}

Diagram apply_move_ii(const Diagram& d, const ReducibleSite& site, int smoothed) {
  if (site.kind != ReducibleSite::Kind::Two || (smoothed != site.c1 && smoothed != site.c2) ||
      !site_present(d, site))
    throw Error(ErrorCode::StaleSite, stale(site));
  const int q = parity_with_faces(faces(d), smoothed, site.face1, site.face2);
  return smooth_merging_corners(d, smoothed, q + 1);
}

Diagram apply_move(const Diagram& d, const Move& move) {
  if (move.kind == Move::Kind::I) {
    for (const auto& s : find_one_reducible(d))
      if (s.c1 == move.c1) return apply_move_i(d, s);
    throw Error(ErrorCode::StaleSite, "no nugatory crossing " + std::to_string(move.c1));
  }
  for (const auto& s : find_two_reducible(d)) {
    if (s.c1 != move.c1 || s.c2 != move.c2) continue;
    if (move.face1 >= 0 && (s.face1 != move.face1 || s.face2 != move.face2)) continue;
    return apply_move_ii(d, s, move.smoothed);
  }
  throw Error(ErrorCode::StaleSite,
              "no 2-reducible site at crossings " + std::to_string(move.c1) + "," + std::to_string(move.c2));
}

const char* to_string(ReductionResult::Status s) noexcept {
  switch (s) {
    case ReductionResult::Status::Found: return "Found";
    case ReductionResult::Status::NotReducible: return "NotReducible";
    case ReductionResult::Status::BudgetExhausted: return "BudgetExhausted";
  }
  return "NotReducible";
}

ReductionResult decide_b_reducible(const Diagram& d, std::size_t budget) {
  ReductionResult result;
  std::set<CanonicalCode> seen;
  std::vector<Move> path;
  bool exhausted = false;

  const auto search = [&](auto&& self, const Diagram& cur) -> bool {
    if (cur.crossingless()) return true;
    if (!seen.insert(canonical_code(cur, false)).second) return false;
    if (seen.size() > budget) {
      exhausted = true;
      return false;
    }
    const auto attempt = [&](const Move& m, const Diagram& next) {
      path.push_back(m);
      if (self(self, next)) return true;
      path.pop_back();
      return false;
    };
    for (const auto& s : find_reducible_sites(cur)) {
      if (s.kind == ReducibleSite::Kind::One) {
        if (attempt({Move::Kind::I, s.c1, -1, s.c1, -1, -1}, apply_move_i(cur, s))) return true;
      } else {
        for (int c : {s.c1, s.c2}) {
          if (attempt({Move::Kind::II, s.c1, s.c2, c, s.face1, s.face2}, apply_move_ii(cur, s, c)))
            return true;
        }
      }
      if (exhausted) return false;
    }
    return false;
  };

  Diagram cur = d;
  const bool found = search(search, cur);
  result.states = seen.size();
  if (found) {
    Certificate cert;
    cert.moves = path;
    cert.initial = canonical_code(d, false);
    Diagram end = d;
    for (const auto& m : path) end = apply_move(end, m);
    cert.final_code = canonical_code(end, false);
    result.status = ReductionResult::Status::Found;
    result.certificate = std::move(cert);
  } else {
    result.status = exhausted ? ReductionResult::Status::BudgetExhausted : ReductionResult::Status::NotReducible;
  }
  return result;
}

bool verify_certificate(const Diagram& d, const Certificate& cert) {
  if (canonical_code(d, false) != cert.initial) throw ReplayError(0, "initial canonical code mismatch");
  Diagram cur = d;
  for (std::size_t i = 0; i < cert.moves.size(); ++i) {
    try {
      cur = apply_move(cur, cert.moves[i]);
    } catch (const Error& e) {
      throw ReplayError(static_cast<int>(i + 1), e.what());
    }
  }
  return cur.crossingless() && canonical_code(cur, false) == cert.final_code;
}

std::string certificate_to_json(const Certificate& cert) {
  nlohmann::ordered_json moves = nlohmann::ordered_json::array();
  for (const auto& m : cert.moves) {
    nlohmann::ordered_json j;
    if (m.kind == Move::Kind::I) {
      j["kind"] = "I";
      j["c"] = m.c1;
    } else {
      j["kind"] = "II";
      j["c1"] = m.c1;
      j["c2"] = m.c2;
      j["smoothed"] = m.smoothed;
      if (m.face1 >= 0) j["faces"] = {m.face1, m.face2};
    }
    moves.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["moves"] = std::move(moves);
  out["initial"] = to_hex(cert.initial);
  out["final"] = to_hex(cert.final_code);
  return out.dump();
}

Certificate certificate_from_json(const std::string& text) {
  Certificate cert;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& m : j.at("moves")) {
      Move mv;
      const std::string type = m.at("kind").get<std::string>();
      if (type == "I") {
        mv.kind = Move::Kind::I;
        mv.c1 = mv.smoothed = m.at("c").get<int>();
      } else if (type == "II") {
        mv.kind = Move::Kind::II;
        mv.c1 = m.at("c1").get<int>();
        mv.c2 = m.at("c2").get<int>();
        mv.smoothed = m.at("smoothed").get<int>();
        if (m.contains("faces")) {
          mv.face1 = m.at("faces").at(0).get<int>();
          mv.face2 = m.at("faces").at(1).get<int>();
        }
      } else {
        throw Error(ErrorCode::CertificateInvalid, "unknown move type " + type);
      }
      cert.moves.push_back(mv);
    }
    cert.initial = from_hex(j.at("initial").get<std::string>());
    cert.final_code = from_hex(j.at("final").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CertificateInvalid, e.what());
  }
  return cert;
}

}  // namespace strongl
