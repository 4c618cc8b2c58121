#include "strongl/awtree.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "strongl/error.hpp"

namespace strongl {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

using EdgeList = std::vector<std::pair<int, int>>;

std::vector<std::vector<int>> adjacency_of(int n, const EdgeList& edges) {
  std::vector<std::vector<int>> adj(idx(n));
  for (auto [u, v] : edges) {
    adj[idx(u)].push_back(v);
    adj[idx(v)].push_back(u);
  }
  return adj;
}

std::string ahu(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[idx(v)])
    if (w != parent) kids.push_back(ahu(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

// Canonical string of a tree: the least AHU encoding over its centres.
std::string tree_form(int n, const EdgeList& edges) {
  if (n == 1) return "()";
  const auto adj = adjacency_of(n, edges);
  std::vector<int> deg(idx(n));
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    deg[idx(v)] = static_cast<int>(adj[idx(v)].size());
    if (deg[idx(v)] <= 1) layer.push_back(v);
  }
  int left = n;
  while (left > 2) {
    left -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int w : adj[idx(v)])
        if (--deg[idx(w)] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::string best;
  for (int c : layer) {
    std::string s = ahu(adj, c, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

Weight weight_from_index(int k) { return k == 0 ? Weight::Zero : k == 1 ? Weight::One : Weight::Infinity; }

}  // namespace

const char* to_string(Weight w) noexcept {
  switch (w) {
    case Weight::Zero: return "0";
    case Weight::One: return "1";
    case Weight::Infinity: return "inf";
  }
  return "0";
}

Weight parse_weight(std::string_view s) {
  if (s == "0") return Weight::Zero;
  if (s == "1") return Weight::One;
  if (s == "inf") return Weight::Infinity;
  throw Error(ErrorCode::MalformedRecord, "bad weight '" + std::string(s) + "'");
}

int AWTree::add_vertex(int sign, Weight w) {
  vertices.push_back({sign, w});
  return size() - 1;
}

std::vector<std::vector<int>> AWTree::adjacency() const { return adjacency_of(size(), edges); }

int AWTree::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

TreeReport validate_tree(const AWTree& t) {
  const int n = t.size();
  for (const auto& v : t.vertices)
    if (v.sign != 1 && v.sign != -1) throw Error(ErrorCode::MalformedRecord, "vertex sign must be +1 or -1");
  std::vector<int> parent(idx(n));
  for (int v = 0; v < n; ++v) parent[idx(v)] = v;
  const auto find = [&](int v) {
    while (parent[idx(v)] != v) v = parent[idx(v)] = parent[idx(parent[idx(v)])];
    return v;
  };
  TreeReport r;
  r.components = n;
  for (auto [u, v] : t.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error(ErrorCode::MalformedRecord, "edge names a missing vertex");
    const int a = find(u);
    const int b = find(v);
    if (a == b) throw Error(ErrorCode::CycleFound, "cycle through vertices " + std::to_string(u) + "," + std::to_string(v));
    if (t.vertices[idx(u)].sign == t.vertices[idx(v)].sign)
      throw Error(ErrorCode::SignClash, "equal signs on edge " + std::to_string(u) + "," + std::to_string(v));
    parent[idx(a)] = b;
    --r.components;
    ++r.edges;
  }
  return r;
}

SignedMatrix build_matrix(const AWTree& t, std::vector<int> ordering) {
  const int n = t.size();
  if (ordering.empty()) {
    ordering.resize(idx(n));
    for (int i = 0; i < n; ++i) ordering[idx(i)] = i;
  }
  std::vector<int> pos(idx(n), -1);
  for (int k = 0; k < n; ++k) pos[idx(ordering.at(idx(k)))] = k;
  SignedMatrix m(n);
  for (int k = 0; k < n; ++k) {
    const auto& v = t.vertices[idx(ordering[idx(k)])];
    m(k, k) = v.sign * numerator(v.weight);
  }
  for (auto [u, v] : t.edges) {
    m(pos[idx(u)], pos[idx(v)]) = denominator(t.vertices[idx(u)].weight);
    m(pos[idx(v)], pos[idx(u)]) = denominator(t.vertices[idx(v)].weight);
  }
  m.ordering = std::move(ordering);
  return m;
}

H1Report h1_and_strong_check(const AWTree& t) {
  validate_tree(t);
  const SignedMatrix m = build_matrix(t);
  H1Report r;
  r.determinant = determinant(m);
  r.permanent = permanent_abs(m);
  r.rational_homology_sphere = r.determinant != 0;
  if (r.rational_homology_sphere) {
    r.h1 = r.determinant < 0 ? -r.determinant : r.determinant;
    r.strong_lspace = r.permanent == r.h1;
  }
  return r;
}

namespace {

AWTree without(const AWTree& t, const std::vector<int>& drop) {
  std::vector<int> new_id(idx(t.size()), -1);
  AWTree out;
  for (int v = 0; v < t.size(); ++v) {
    if (std::find(drop.begin(), drop.end(), v) != drop.end()) continue;
    new_id[idx(v)] = out.add_vertex(t.vertices[idx(v)].sign, t.vertices[idx(v)].weight);
  }
  for (auto [u, v] : t.edges)
    if (new_id[idx(u)] >= 0 && new_id[idx(v)] >= 0) out.add_edge(new_id[idx(u)], new_id[idx(v)]);
  return out;
}

int only_neighbour(const AWTree& t, int v) {
  for (auto [a, b] : t.edges) {
    if (a == v) return b;
    if (b == v) return a;
  }
  return -1;
}

bool op_applies(const AWTree& t, int op, int v) {
  if (v < 0 || v >= t.size()) return false;
  if (op == 1) return true;
  if (t.degree(v) != 1) return false;
  const Weight wv = t.vertices[idx(v)].weight;
  const Weight wu = t.vertices[idx(only_neighbour(t, v))].weight;
  switch (op) {
    case 2: return wv == Weight::Zero && wu != Weight::Infinity;
    case 3: return wv == Weight::One && wu == Weight::Zero;
    case 4: return wv == Weight::One && wu == Weight::One;
    default: return false;
  }
}

}  // namespace

std::vector<int> tree_op_sites(const AWTree& t, int op) {
  std::vector<int> out;
  for (int v = 0; v < t.size(); ++v)
    if (op_applies(t, op, v)) out.push_back(v);
  return out;
}

AWTree apply_tree_op(const AWTree& t, int op, int v) {
  if (op < 1 || op > 4) throw Error(ErrorCode::UsageError, "tree operation must be 1..4");
  if (!op_applies(t, op, v))
    throw Error(ErrorCode::SiteShapeMismatch, "operation " + std::to_string(op) + " does not apply at vertex " + std::to_string(v));
  if (op == 1) {
    AWTree out = t;
    const int w = out.add_vertex(-t.vertices[idx(v)].sign, Weight::Infinity);
    out.add_edge(v, w);
    return out;
  }
  const int u = only_neighbour(t, v);
  if (op == 2) return without(t, {v, u});
  if (op == 3) {
    AWTree out = t;
    out.vertices[idx(u)].weight = Weight::One;
    return without(out, {v});
  }
  return without(t, {v});
}

AWTree parse_tree_text(std::string_view text) {
  AWTree t;
  std::map<std::string, int> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  const auto bad = [&](const std::string& why) {
    return Error(ErrorCode::MalformedRecord, "line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head)) continue;
    if (head == "e") {
      std::string a, b;
      if (!(fields >> a >> b)) throw bad("edge needs two vertex ids");
      const auto ia = ids.find(a.starts_with("v") ? a : "v" + a);
      const auto ib = ids.find(b.starts_with("v") ? b : "v" + b);
      if (ia == ids.end() || ib == ids.end()) throw bad("edge names an undeclared vertex");
      t.add_edge(ia->second, ib->second);
    } else if (head.size() > 1 && head[0] == 'v') {
      std::string sign, weight;
      if (!(fields >> sign >> weight) || (sign != "+" && sign != "-")) throw bad("expected v<id> <+|-> <0|1|inf>");
      if (!ids.emplace(head, t.size()).second) throw bad("duplicate vertex " + head);
      t.add_vertex(sign == "+" ? 1 : -1, parse_weight(weight));
    } else {
      throw bad("unknown record '" + head + "'");
    }
    std::string extra;
    if (fields >> extra) throw bad("trailing field '" + extra + "'");
  }
  validate_tree(t);
  return t;
}

std::string to_tree_text(const AWTree& t) {
  std::string out;
  for (int v = 0; v < t.size(); ++v) {
    const auto& x = t.vertices[idx(v)];
    out += "v" + std::to_string(v) + (x.sign > 0 ? " + " : " - ") + to_string(x.weight) + "\n";
  }
  for (auto [u, v] : t.edges) out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

AWTree parse_tree_json(std::string_view text) {
  AWTree t;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& v : j.at("vertices")) {
      const std::string sign = v.at("sign").get<std::string>();
      if (sign != "+" && sign != "-") throw Error(ErrorCode::MalformedRecord, "sign must be \"+\" or \"-\"");
      t.add_vertex(sign == "+" ? 1 : -1, parse_weight(v.at("weight").get<std::string>()));
    }
    for (const auto& e : j.at("edges")) t.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
  validate_tree(t);
  return t;
}

std::string to_tree_json(const AWTree& t) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : t.vertices)
    j["vertices"].push_back({{"sign", v.sign > 0 ? "+" : "-"}, {"weight", to_string(v.weight)}});
  j["edges"] = nlohmann::ordered_json::array();
  for (auto [u, v] : t.edges) j["edges"].push_back({u, v});
  return j.dump();
}

AWTree parse_tree(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_tree_json(text);
  return parse_tree_text(text);
}

std::vector<EdgeList> unlabeled_trees(int n) {
  if (n <= 0) return {};
  if (n > 10) throw Error(ErrorCode::SizeLimit, "unlabeled tree generation limited to 10 vertices");
  std::vector<EdgeList> level{EdgeList{}};
  for (int size = 2; size <= n; ++size) {
    std::map<std::string, EdgeList> next;
    for (const auto& edges : level) {
      for (int v = 0; v < size - 1; ++v) {
        EdgeList grown = edges;
        grown.emplace_back(v, size - 1);
        next.emplace(tree_form(size, grown), std::move(grown));
      }
    }
    level.clear();
    for (auto& [form, edges] : next) level.push_back(std::move(edges));
  }
  return level;
}

namespace {

struct Shape {
  int size;
  int index;  // into unlabeled_trees(size)
  friend auto operator<=>(const Shape&, const Shape&) = default;
};

// Multisets of shapes with total size n, in non-increasing order.
void forests(int left, Shape cap, const std::vector<std::vector<EdgeList>>& trees, std::vector<Shape>& cur,
             std::vector<std::vector<Shape>>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  for (int s = std::min(left, cap.size); s >= 1; --s) {
    const int count = static_cast<int>(trees[idx(s)].size());
    for (int i = count - 1; i >= 0; --i) {
      const Shape sh{s, i};
      if (cap < sh) continue;
      cur.push_back(sh);
      forests(left - s, sh, trees, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

void for_each_tree(int n, bool connected_only, const std::function<bool(const AWTree&)>& visit) {
  if (n < 0) throw Error(ErrorCode::UsageError, "vertex count must be non-negative");
  if (n > kExhaustiveTreeLimit)
    throw Error(ErrorCode::SizeLimit, "exhaustive enumeration limited to " + std::to_string(kExhaustiveTreeLimit) + " vertices");
  if (n == 0) {
    visit(AWTree{});
    return;
  }
  std::vector<std::vector<EdgeList>> trees(idx(n + 1));
  for (int s = 1; s <= n; ++s) trees[idx(s)] = unlabeled_trees(s);
  std::vector<std::vector<Shape>> shapes;
  if (connected_only) {
    for (int i = 0; i < static_cast<int>(trees[idx(n)].size()); ++i) shapes.push_back({Shape{n, i}});
  } else {
    std::vector<Shape> cur;
    forests(n, Shape{n, static_cast<int>(trees[idx(n)].size())}, trees, cur, shapes);
  }

  for (const auto& forest : shapes) {
    AWTree base;
    std::vector<int> depth_parity;
    std::vector<int> component;
    for (std::size_t c = 0; c < forest.size(); ++c) {
      const int offset = base.size();
      const EdgeList& edges = trees[idx(forest[c].size)][idx(forest[c].index)];
      const auto adj = adjacency_of(forest[c].size, edges);
      std::vector<int> parity(idx(forest[c].size), -1);
      parity[0] = 0;
      std::vector<int> stack{0};
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[idx(v)])
          if (parity[idx(w)] < 0) {
            parity[idx(w)] = 1 - parity[idx(v)];
            stack.push_back(w);
          }
      }
      for (int v = 0; v < forest[c].size; ++v) {
        base.add_vertex(1, Weight::Zero);
        depth_parity.push_back(parity[idx(v)]);
        component.push_back(static_cast<int>(c));
      }
      for (auto [u, v] : edges) base.add_edge(u + offset, v + offset);
    }
    const int comps = static_cast<int>(forest.size());
    long long weight_count = 1;
    for (int i = 0; i < n; ++i) weight_count *= 3;
    for (int polarity = 0; polarity < (1 << comps); ++polarity) {
      for (int v = 0; v < n; ++v) {
        const int root_sign = (polarity >> component[idx(v)]) & 1 ? -1 : 1;
        base.vertices[idx(v)].sign = depth_parity[idx(v)] ? -root_sign : root_sign;
      }
      for (long long code = 0; code < weight_count; ++code) {
        long long rest = code;
        for (int v = 0; v < n; ++v) {
          base.vertices[idx(v)].weight = weight_from_index(static_cast<int>(rest % 3));
          rest /= 3;
        }
        if (!visit(base)) return;
      }
    }
  }
}

std::vector<AWTree> enumerate_trees(int n, bool connected_only) {
  std::vector<AWTree> out;
  for_each_tree(n, connected_only, [&](const AWTree& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::vector<AWTree> sample_trees(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 0) throw Error(ErrorCode::UsageError, "sample needs n >= 1 and k >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> label(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> weight(0, 2);
  std::vector<AWTree> out;
  out.reserve(idx(k));
  for (int s = 0; s < k; ++s) {
    // Decode a uniform Pruefer sequence.
    std::vector<int> code(idx(std::max(0, n - 2)));
    for (int& x : code) x = label(rng);
    std::vector<int> deg(idx(n), 1);
    for (int x : code) ++deg[idx(x)];
    EdgeList edges;
    for (int x : code) {
      int leaf = 0;
      while (deg[idx(leaf)] != 1) ++leaf;
      edges.emplace_back(leaf, x);
      --deg[idx(leaf)];
      --deg[idx(x)];
    }
    if (n >= 2) {
      int u = 0;
      while (deg[idx(u)] != 1) ++u;
      int v = u + 1;
      while (deg[idx(v)] != 1) ++v;
      edges.emplace_back(u, v);
    }
    AWTree t;
    for (int v = 0; v < n; ++v) t.add_vertex(1, weight_from_index(weight(rng)));
    t.edges = edges;
    const auto adj = t.adjacency();
    std::vector<int> sign(idx(n), 0);
    sign[0] = coin(rng) ? 1 : -1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[idx(v)])
        if (sign[idx(w)] == 0) {
          sign[idx(w)] = -sign[idx(v)];
          stack.push_back(w);
        }
    }
    for (int v = 0; v < n; ++v) t.vertices[idx(v)].sign = sign[idx(v)];
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace strongl
