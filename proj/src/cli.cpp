#include "strongl/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "strongl/awtree.hpp"
#include "strongl/corpus.hpp"
#include "strongl/goeritz.hpp"
#include "strongl/minor_order.hpp"
#include "strongl/montesinos.hpp"
#include "strongl/reducibility.hpp"

#ifndef STRONGL_DEFAULT_CORPUS
#define STRONGL_DEFAULT_CORPUS "data/corpus.txt"
#endif

namespace strongl {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string certificate;
  std::string corpus = STRONGL_DEFAULT_CORPUS;
  std::size_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
  bool pretty = false;
  bool no_reflection = false;
  bool connected = false;
  bool list = false;
  int op = 0;
  int vertex = -1;
  int vertices = -1;
  int sample = 0;
};

struct Outcome {
  Json result;
  int exit = kExitOk;
};

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Inconclusive: return kExitBudget;
    case ErrorCode::CaseAnalysisFailure:
    case ErrorCode::AlternationUnsatisfiable: return kExitFalse;
    default: return kExitInput;
  }
}

Diagram load_diagram(const Options& o) { return parse_diagram(read_file(o.file)); }
AWTree load_tree(const Options& o) { return parse_tree(read_file(o.file)); }

void require_file(const Options& o) {
  if (o.file.empty()) throw Error(ErrorCode::UsageError, "an input file is required");
}

Json faces_json(const std::map<int, int>& census) {
  Json j = Json::object();
  for (const auto& [k, n] : census) j[std::to_string(k)] = n;
  return j;
}

Json tree_json(const AWTree& t) { return Json::parse(to_tree_json(t)); }

long long abs_det(const AWTree& t) { return std::llabs(determinant(build_matrix(t))); }

int exit_for(ReductionResult::Status s) {
  switch (s) {
    case ReductionResult::Status::Found: return kExitOk;
    case ReductionResult::Status::NotReducible: return kExitFalse;
    case ReductionResult::Status::BudgetExhausted: return kExitBudget;
  }
  return kExitFalse;
}

Json implication_json(const Implication& i) { return Json{{"applies", i.applies}, {"passed", i.passed}}; }

Json crosscheck_json(const CrosscheckReport& r) {
  Json j;
  j["crossings"] = r.crossings;
  j["has_reducible_site"] = r.has_reducible_site;
  j["reduction"] = to_string(r.reduction);
  j["contains_borromean"] = r.contains_borromean;
  j["irreducible_contains_borromean"] = implication_json(r.irreducible_contains_borromean);
  j["reducible_avoids_borromean"] = implication_json(r.reducible_avoids_borromean);
  j["passed"] = r.passed();
  return j;
}

// Cross-checks every connected piece; crossingless circles are skipped.
Json crosscheck_pieces(const Diagram& d, std::size_t budget, bool& passed) {
  Json pieces = Json::array();
  for (const auto& piece : split_components(d)) {
    if (piece.crossingless()) continue;
    const auto r = theorem_crosscheck(piece, budget);
    passed = passed && r.passed();
    pieces.push_back(crosscheck_json(r));
  }
  return pieces;
}

Json roundtrip_json(const RoundtripReport& r) {
  Json j;
  j["crossings"] = r.crossings;
  j["alternating"] = r.alternating;
  j["reducible"] = r.reducible;
  j["tree_det"] = r.tree_determinant;
  j["diagram_det"] = r.diagram_determinant;
  j["forward_match"] = r.forward_match;
  j["back_det"] = r.back_determinant < 0 ? Json(nullptr) : Json(r.back_determinant);
  j["back_match"] = r.back_match;
  j["passed"] = r.passed();
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

// --- diagram ---------------------------------------------------------------

Outcome diagram_info(const Options& o, Json& input) {
  const Diagram d = load_diagram(o);
  input["code"] = to_hex(canonical_code(d, true));
  const auto v = validate(d);
  Outcome out;
  out.result["crossings"] = d.crossing_count();
  out.result["free_loops"] = d.free_loops();
  out.result["components"] = v.components;
  out.result["connected"] = v.connected;
  out.result["alternating"] = v.alternating;
  out.result["faces"] = faces_json(face_census(d).total);
  out.result["det"] = link_determinant(d);
  out.result["reducible_sites"] = find_reducible_sites(d).size();
  try {
    out.result["euler_residual"] = euler_identity_residual(d);
  } catch (const Error&) {
    out.result["euler_residual"] = nullptr;
  }
  return out;
}

Outcome diagram_reduce(const Options& o, Json& input) {
  const Diagram d = load_diagram(o);
  input["code"] = to_hex(canonical_code(d, false));
  const auto r = decide_b_reducible(d, o.budget);
  Outcome out;
  out.result["result"] = to_string(r.status);
  out.result["states"] = r.states;
  out.result["certificate"] = r.certificate ? Json::parse(certificate_to_json(*r.certificate)) : Json(nullptr);
  if (r.certificate) out.result["verified"] = verify_certificate(d, *r.certificate);
  out.exit = exit_for(r.status);
  return out;
}

Outcome diagram_brm(const Options& o, Json& input) {
  const Diagram d = load_diagram(o);
  input["code"] = to_hex(canonical_code(d, true));
  if (o.no_reflection && d.crossing_count() > kBorromeanHostCap)
    throw Error(ErrorCode::SizeLimit, "Borromean search limited to " + std::to_string(kBorromeanHostCap) + " crossings");
  const auto r = o.no_reflection ? contains_pattern(d, borromean_pattern(), false) : contains_borromean(d);
  Outcome out;
  out.result["result"] = to_string(r.status);
  out.result["reflection"] = !o.no_reflection;
  out.result["witness"] = r.witness ? Json::parse(witness_to_json(*r.witness)) : Json(nullptr);
  out.exit = r.found() ? kExitOk : kExitFalse;
  return out;
}

Outcome diagram_census(const Options& o, Json& input) {
  input["corpus"] = o.corpus;
  const auto entries = read_corpus(o.corpus);
  Outcome out;
  Json rows = Json::array();
  bool all = true;
  for (const auto& e : entries) {
    Json row;
    row["name"] = e.name;
    row["crossings"] = e.diagram.crossing_count();
    row["det"] = link_determinant(e.diagram);
    bool passed = true;
    row["pieces"] = crosscheck_pieces(e.diagram, o.budget, passed);
    row["passed"] = passed;
    all = all && passed;
    rows.push_back(std::move(row));
  }
  out.result["entries"] = std::move(rows);
  out.result["passed"] = all;
  out.exit = all ? kExitOk : kExitFalse;
  return out;
}

// --- tree ------------------------------------------------------------------

Outcome tree_info(const Options& o, Json&) {
  const AWTree t = load_tree(o);
  const auto rep = validate_tree(t);
  Outcome out;
  out.result["vertices"] = t.size();
  out.result["edges"] = rep.edges;
  out.result["components"] = rep.components;
  Json weights = {{"0", 0}, {"1", 0}, {"inf", 0}};
  for (const auto& v : t.vertices) weights[to_string(v.weight)] = weights[to_string(v.weight)].get<int>() + 1;
  out.result["weights"] = std::move(weights);
  out.result["tree"] = tree_json(t);
  return out;
}

Outcome tree_mat(const Options& o, Json&) {
  const AWTree t = load_tree(o);
  const SignedMatrix m = build_matrix(t);
  Outcome out;
  out.result["ordering"] = m.ordering;
  Json rows = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  out.result["matrix"] = std::move(rows);
  out.result["det"] = determinant(m);
  out.result["permanent"] = permanent_abs(m);
  return out;
}

Outcome tree_strong(const Options& o, Json&) {
  const AWTree t = load_tree(o);
  const auto r = h1_and_strong_check(t);
  const auto eff = is_effective(build_matrix(t));
  Outcome out;
  out.result["h1"] = r.rational_homology_sphere ? Json(r.h1) : Json(nullptr);
  out.result["rational_homology_sphere"] = r.rational_homology_sphere;
  out.result["det"] = r.determinant;
  out.result["permanent"] = r.permanent;
  out.result["effective"] = eff == Effectiveness::Indeterminate ? Json(nullptr) : Json(eff == Effectiveness::Effective);
  out.result["strong_lspace"] = r.strong_lspace;
  out.exit = r.strong_lspace ? kExitOk : kExitFalse;
  return out;
}

Outcome tree_ops(const Options& o, Json&) {
  const AWTree t = load_tree(o);
  Outcome out;
  if (o.op == 0) {
    Json sites = Json::object();
    for (int op = 1; op <= 4; ++op) sites[std::to_string(op)] = tree_op_sites(t, op);
    out.result["sites"] = std::move(sites);
    return out;
  }
  const AWTree after = apply_tree_op(t, o.op, o.vertex);
  out.result["op"] = o.op;
  out.result["vertex"] = o.vertex;
  out.result["before"] = {{"tree", tree_json(t)}, {"det", abs_det(t)}};
  out.result["after"] = {{"tree", tree_json(after)}, {"det", abs_det(after)}};
  out.result["det_preserved"] = abs_det(t) == abs_det(after);
  return out;
}

Outcome tree_enumerate(const Options& o, Json&) {
  if (o.vertices < 0) throw Error(ErrorCode::UsageError, "--vertices is required");
  Outcome out;
  long long count = 0, effective_violations = 0, strong_violations = 0, det_zero = 0;
  Json listed = Json::array();
  const auto visit = [&](const AWTree& t) {
    ++count;
    const SignedMatrix m = build_matrix(t);
    const long long det = determinant(m);
    const long long perm = permanent_abs(m);
    if (det == 0) ++det_zero;
    if (m.size() <= 9) {
      const auto sig = expansion_signatures(m);
      if (sig.positives > 0 && sig.negatives > 0) ++effective_violations;
    }
    if (det != 0 && perm != std::llabs(det)) ++strong_violations;
    if (o.list) listed.push_back(tree_json(t));
    return true;
  };
  if (o.sample > 0) {
    out.result["mode"] = "sample";
    out.result["seed"] = o.seed;
    for (const auto& t : sample_trees(o.vertices, o.sample, o.seed)) visit(t);
  } else {
    out.result["mode"] = "exhaustive";
    for_each_tree(o.vertices, o.connected, visit);
  }
  out.result["vertices"] = o.vertices;
  out.result["connected_only"] = o.connected || o.sample > 0;
  out.result["count"] = count;
  out.result["det_zero"] = det_zero;
  out.result["effective_violations"] = effective_violations;
  out.result["strong_violations"] = strong_violations;
  if (o.list) out.result["trees"] = std::move(listed);
  out.exit = effective_violations == 0 && strong_violations == 0 ? kExitOk : kExitFalse;
  return out;
}

// --- convert / verify --------------------------------------------------------

Outcome convert_t2d(const Options& o, Json&) {
  const AWTree t = load_tree(o);
  const auto r = realize_tree(t);
  const Diagram d = m_induced_diagram(r);
  Outcome out;
  out.result["realization"] = to_realization_text(r);
  out.result["diagram"] = to_pd(d);
  out.result["crossings"] = d.crossing_count();
  out.result["tree_det"] = abs_det(t);
  out.result["diagram_det"] = link_determinant(d);
  return out;
}

Outcome convert_d2t(const Options& o, Json& input) {
  const Diagram d = load_diagram(o);
  input["code"] = to_hex(canonical_code(d, false));
  Outcome out;
  Certificate cert;
  if (!o.certificate.empty()) {
    cert = certificate_from_json(read_file(o.certificate));
  } else {
    const auto r = decide_b_reducible(d, o.budget);
    if (!r.certificate) {
      out.result["result"] = to_string(r.status);
      out.exit = exit_for(r.status);
      return out;
    }
    cert = *r.certificate;
  }
  const auto back = diagram_to_tree(d, cert);
  out.result["result"] = "Found";
  out.result["certificate"] = Json::parse(certificate_to_json(cert));
  out.result["tree"] = tree_json(back.tree);
  out.result["realization"] = to_realization_text(back.realization);
  out.result["tree_det"] = abs_det(back.tree);
  out.result["diagram_det"] = link_determinant(d);
  return out;
}

Outcome verify_roundtrip(const Options& o, Json&) {
  Outcome out;
  if (!o.file.empty()) {
    const auto r = roundtrip_verify(load_tree(o), o.budget);
    out.result = roundtrip_json(r);
    out.exit = r.passed() ? kExitOk : kExitFalse;
    return out;
  }
  if (o.vertices < 0) throw Error(ErrorCode::UsageError, "give a tree file or --vertices");
  long long count = 0, failed = 0;
  Json failures = Json::array();
  for (int n = 0; n <= o.vertices; ++n) {
    for_each_tree(n, o.connected, [&](const AWTree& t) {
      ++count;
      const auto r = roundtrip_verify(t, o.budget);
      if (!r.passed()) {
        ++failed;
        if (failures.size() < 10) failures.push_back({{"tree", tree_json(t)}, {"report", roundtrip_json(r)}});
      }
      return true;
    });
  }
  out.result["max_vertices"] = o.vertices;
  out.result["count"] = count;
  out.result["failed"] = failed;
  out.result["failures"] = std::move(failures);
  out.exit = failed == 0 ? kExitOk : kExitFalse;
  return out;
}

Outcome verify_theorem(const Options& o, Json& input) {
  const Diagram d = load_diagram(o);
  input["code"] = to_hex(canonical_code(d, true));
  bool passed = true;
  Outcome out;
  out.result["pieces"] = crosscheck_pieces(d, o.budget, passed);
  out.result["passed"] = passed;
  out.exit = passed ? kExitOk : kExitFalse;
  return out;
}

using Handler = std::function<Outcome(const Options&, Json&)>;

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  Options o;
  CLI::App app{"Alternating diagrams, reducibility and weighted trees", "strongl"};
  app.require_subcommand(1);
  app.add_flag("--pretty", o.pretty, "Indent the JSON report");
  app.add_option("--budget", o.budget, "Search budget in memoised states");
  app.add_flag("--no-reflection", o.no_reflection, "Disallow sphere reflection when matching");
  app.add_option("--seed", o.seed, "Random seed for sampling");
  app.add_option("--corpus", o.corpus, "Corpus file for census");

  std::string command;
  Handler handler;
  const auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, Handler h,
                        bool takes_file) {
    CLI::App* sub = group->add_subcommand(name, help);
    sub->fallthrough();
    if (takes_file) sub->add_option("file", o.file, "Input file");
    sub->callback([&, name, group, h] {
      command = group->get_name() + " " + name;
      handler = h;
    });
    return sub;
  };

  CLI::App* diagram = app.add_subcommand("diagram", "Diagram analyses");
  diagram->fallthrough();
  diagram->require_subcommand(1);
  leaf(diagram, "info", "Validation, face census and determinant", diagram_info, true);
  leaf(diagram, "reduce", "Search for a reduction certificate", diagram_reduce, true);
  leaf(diagram, "brm", "Borromean containment", diagram_brm, true);
  leaf(diagram, "census", "Theorem cross-check over the corpus", diagram_census, false);

  CLI::App* tree = app.add_subcommand("tree", "Weighted tree analyses");
  tree->fallthrough();
  tree->require_subcommand(1);
  leaf(tree, "info", "Tree summary", tree_info, true);
  leaf(tree, "mat", "Signed matrix, determinant and permanent", tree_mat, true);
  leaf(tree, "strong", "First homology and strong L-space check", tree_strong, true);
  CLI::App* ops = leaf(tree, "ops", "List or apply tree operations", tree_ops, true);
  ops->add_option("--op", o.op, "Operation 1-4")->check(CLI::Range(1, 4));
  ops->add_option("--vertex", o.vertex, "Site vertex");
  CLI::App* en = leaf(tree, "enumerate", "Enumerate or sample trees", tree_enumerate, false);
  en->add_option("--vertices", o.vertices, "Vertex count")->required();
  en->add_flag("--connected", o.connected, "Trees only, no forests");
  en->add_option("--sample", o.sample, "Draw this many random trees instead");
  en->add_flag("--list", o.list, "Include every tree in the report");

  CLI::App* convert = app.add_subcommand("convert", "Tree and diagram conversions");
  convert->fallthrough();
  convert->require_subcommand(1);
  leaf(convert, "t2d", "Tree to induced diagram", convert_t2d, true);
  CLI::App* d2t = leaf(convert, "d2t", "Reducible diagram to tree", convert_d2t, true);
  d2t->add_option("--certificate", o.certificate, "Certificate JSON file");

  CLI::App* verify = app.add_subcommand("verify", "Batch verification");
  verify->fallthrough();
  verify->require_subcommand(1);
  CLI::App* rt = leaf(verify, "roundtrip", "Tree round trip", verify_roundtrip, false);
  rt->add_option("file", o.file, "Tree file");
  rt->add_option("--vertices", o.vertices, "Check every forest up to this size");
  rt->add_flag("--connected", o.connected, "Trees only, no forests");
  leaf(verify, "theorem", "Reducibility versus Borromean containment", verify_theorem, true);

  Json report;
  const auto emit = [&](int code) {
    report["exit"] = code;
    out << (o.pretty ? report.dump(2) : report.dump()) << '\n';
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report["command"] = command.empty() ? "" : command;
    report["error"] = {{"code", to_string(ErrorCode::UsageError)}, {"message", e.what()}};
    return emit(kExitInput);
  }

  report["command"] = command;
  Json input = Json::object();
  if (!o.file.empty()) input["file"] = o.file;
  try {
    if (o.file.empty() && command != "diagram census" && command != "tree enumerate" &&
        command != "verify roundtrip")
      require_file(o);
    Outcome result = handler(o, input);
    report["input"] = std::move(input);
    report["result"] = std::move(result.result);
    return emit(result.exit);
  } catch (const Error& e) {
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    return emit(exit_for(e.code()));
  }
}

}  // namespace strongl
