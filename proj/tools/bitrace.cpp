#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bitrace/bt.hpp"
#include "bitrace/classify.hpp"
#include "bitrace/enumerate.hpp"
#include "bitrace/fixtures.hpp"
#include "bitrace/harness.hpp"
#include "bitrace/profile.hpp"

using namespace bitrace;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_source(const std::string& source) {
  if (source == "-") return slurp(std::cin);
  if (std::filesystem::is_regular_file(source)) {
    std::ifstream f(source);
    return slurp(f);
  }
  return source;
}

Graph load_graph(const std::string& source) {
  std::string text = read_source(source);
  auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw GraphError("empty graph input");
  if (text[start] == '{') return graph_from_json(text);
  std::istringstream is(text.substr(start));
  std::string line;
  std::getline(is, line);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  return parse_graph6(line);
}

std::vector<Graph> load_stream(const std::string& input, int n_min, int n_max) {
  if (!input.empty()) {
    if (input == "-") return read_graph6_stream(std::cin);
    std::ifstream f(input);
    if (!f) throw UsageError("cannot open " + input);
    return read_graph6_stream(f);
  }
  if (n_max < 1 || n_max > 9 || n_min < 1 || n_min > n_max) throw UsageError("need 1 <= n-min <= n-max <= 9");
  std::vector<Graph> out;
  for (int n = n_min; n <= n_max; ++n) {
    const auto& level = enumerate_connected_graphs(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string verdict_of_pair(const Graph& g, const Path& p, const Path& q, int ell) {
  if (ell > 6) return "unclassified";
  try {
    return to_string(classify_bt(bt_from_paths(g, p, q), false).verdict);
  } catch (const BtError& e) {
    return std::string("error: ") + e.what();
  }
}

std::vector<std::string> bt_labels(const BtRep& bt) {
  std::vector<std::string> labels;
  for (int v = 0; v < bt.host.n(); ++v) {
    std::string l = v < bt.ell ? "a" + std::to_string(v + 1) : "v" + std::to_string(v);
    if (bt.host_vertex[v] >= 0) l += " (" + std::to_string(bt.host_vertex[v]) + ")";
    labels.push_back(l);
  }
  return labels;
}

int cmd_classes(int ell, bool as_json) {
  if (ell < 1 || ell > 8) throw UsageError("ell must be in 1..8");
  auto classes = enumerate_classes(ell);
  json out = json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    std::string conn = "";
    if (c.table_case)
      for (const auto& row : reference_table(ell))
        if (row.case_no == *c.table_case) conn = to_string(row.conn);
    if (as_json) {
      json orbit = json::array();
      for (const auto& p : c.orbit) orbit.push_back(perm_to_string(p));
      json rec{{"index", i + 1}, {"canonical", perm_to_string(c.canonical)}, {"orbit", orbit}};
      if (c.table_case) {
        rec["case"] = *c.table_case;
        rec["conn"] = conn;
      }
      out.push_back(rec);
    } else {
      std::cout << (i + 1) << "\t" << perm_to_string(c.canonical) << "\torbit " << c.orbit.size();
      if (c.table_case) std::cout << "\tcase " << *c.table_case << "\t" << conn;
      std::cout << "\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_inspect(const std::string& source, bool fixture, std::size_t cap, std::size_t max_pairs, bool as_json, bool dot) {
  Graph g;
  if (fixture) {
    require_fixture(intro_fixture());
    g = intro_fixture().graph;
  } else {
    if (source.empty()) throw UsageError("inspect needs a graph or --fixture");
    g = load_graph(source);
  }
  if (!is_connected(g)) throw GraphError("graph is not connected");
  PathList paths = all_longest_paths(g, cap);
  int length = longest_path_length(g);

  // One representative pair per pair of distinct vertex sets.
  std::vector<std::pair<Path, Path>> reps;
  std::set<std::pair<VertexSet, VertexSet>> seen;
  for (std::size_t i = 0; i < paths.paths.size() && reps.size() < max_pairs; ++i)
    for (std::size_t j = i + 1; j < paths.paths.size() && reps.size() < max_pairs; ++j) {
      VertexSet a = vertex_set(paths.paths[i]), b = vertex_set(paths.paths[j]);
      if (a == b || !seen.insert({a, b}).second) continue;
      reps.push_back({paths.paths[i], paths.paths[j]});
    }

  json pairs = json::array();
  for (const auto& [p, q] : reps) {
    IntersectionProfile prof = intersection_profile(p, q);
    VertexSet inter = vertex_set(p) & vertex_set(q);
    pairs.push_back({{"p", p}, {"q", q}, {"ell", prof.ell}, {"sigma", perm_to_string(prof.sigma)},
                     {"separator", is_separator(g, inter)}, {"verdict", verdict_of_pair(g, p, q, prof.ell)}});
  }
  if (dot) {
    if (reps.empty()) {
      std::cout << emit_dot(g);
    } else {
      BtRep bt = bt_from_paths(g, reps.front().first, reps.front().second);
      std::cout << emit_dot(bt.host, bt.intersection(), bt_labels(bt));
    }
    return 0;
  }
  if (as_json) {
    json out{{"graph6", to_graph6(g)}, {"n", g.n()}, {"edges", g.edge_count()}, {"longest_length", length},
             {"longest_paths", paths.paths}, {"truncated", paths.truncated}, {"pairs", pairs}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "graph " << to_graph6(g) << " n=" << g.n() << " m=" << g.edge_count() << "\n";
  std::cout << "longest path length " << length << ", " << paths.paths.size() << " longest paths"
            << (paths.truncated ? " (capped)" : "") << "\n";
  if (reps.empty()) std::cout << "no pairs with distinct vertex sets\n";
  for (const auto& pr : pairs)
    std::cout << "pair ell=" << pr["ell"] << " sigma=" << pr["sigma"].get<std::string>()
              << " separator=" << (pr["separator"].get<bool>() ? "yes" : "no")
              << " verdict=" << pr["verdict"].get<std::string>() << "\n";
  return 0;
}

std::vector<int> parse_lengths(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad length list: " + text);
    }
  }
  return out;
}

int cmd_classify(const std::string& perm_text, int internal, int extremal, const std::string& p_lengths,
                 const std::string& q_lengths, bool touch, bool as_json, bool dot) {
  Perm sigma;
  try {
    sigma = parse_perm(perm_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (sigma.size() > 6) throw UsageError("classification covers ell <= 6");
  GenericLengths lengths = default_lengths(static_cast<int>(sigma.size()), internal, extremal);
  if (!p_lengths.empty()) lengths.p = parse_lengths(p_lengths);
  if (!q_lengths.empty()) lengths.q = parse_lengths(q_lengths);
  BtRep bt;
  try {
    bt = bt_generic(sigma, lengths);
  } catch (const BtError& e) {
    throw UsageError(e.what());
  }
  if (dot) {
    std::cout << emit_dot(bt.host, bt.intersection(), bt_labels(bt));
    return 0;
  }
  BtClassification cls = classify_bt(bt);
  std::optional<TouchReport> tr;
  if (touch) tr = third_path_touch_filter(bt);
  if (as_json) {
    json out = to_json(bt, cls);
    if (auto c = canonical_form(sigma); c.table_case) out["case"] = *c.table_case;
    if (tr) out["third_path"] = to_json(bt, *tr);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "sigma " << perm_to_string(sigma) << "  L(P)=" << bt.length_p << "\n";
  std::cout << describe(bt, cls.tree);
  for (const auto& v : cls.pairs) {
    std::cout << bt.comps[v.X].name() << "~" << bt.comps[v.Y].name() << "\t" << to_string(v.status);
    if (!v.note.empty()) std::cout << "\t(" << v.note << ")";
    std::cout << "\n";
  }
  std::cout << "verdict " << to_string(cls.verdict) << "\n";
  if (tr) {
    std::cout << "third path: " << (tr->applicable ? "" : "not applicable, ") << tr->admissible.size()
              << " admissible connections, at most " << tr->max_cross_pairs << " cross-color pairs per pattern, "
              << (tr->excluded ? "excluded" : "not excluded") << "\n";
  }
  return 0;
}

int report(const SweepReport& r, bool as_json, bool timing) {
  if (as_json) {
    std::cout << to_json(r, timing).dump(2) << "\n";
  } else {
    std::cout << r.theorem << ": " << (r.passed() ? "pass" : "VIOLATION") << " (" << r.graphs_scanned
              << " graphs scanned, " << r.counterexamples.size() << " counterexamples)\n";
    for (const auto& [k, v] : r.stats) std::cout << "  " << k << " = " << v << "\n";
    for (const auto& w : r.counterexamples) std::cout << "  counterexample " << w.graph6 << ": " << w.detail << "\n";
    if (timing) std::cout << "  seconds = " << r.seconds << "\n";
  }
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bitrace: longest-path intersection toolkit"};
  app.require_subcommand(1);
  bool as_json = false, dot = false, timing = false;

  int ell = 0;
  auto* classes = app.add_subcommand("classes", "configuration classes of intersection permutations");
  classes->add_option("ell", ell, "number of intersection vertices (1..8)")->required();
  classes->add_flag("--json", as_json);

  std::string source;
  bool fixture = false;
  std::size_t cap = kDefaultCap, max_pairs = 20;
  auto* inspect = app.add_subcommand("inspect", "longest paths, pairs and verdicts of one graph");
  inspect->add_option("graph", source, "graph6 text, a file with graph6 or adjacency JSON, or - for stdin");
  inspect->add_flag("--fixture", fixture, "use the built-in 11-vertex fixture");
  inspect->add_option("--cap", cap, "cap on enumerated longest paths");
  inspect->add_option("--max-pairs", max_pairs, "cap on reported pairs");
  inspect->add_flag("--json", as_json);
  inspect->add_flag("--dot", dot);

  std::string perm, p_lengths, q_lengths;
  int internal = 2, extremal = 1;
  bool touch = false;
  auto* classify = app.add_subcommand("classify", "classify the generic representation of a permutation");
  classify->add_option("sigma", perm, "permutation, e.g. 2413 or (2,4,1,3)")->required();
  classify->add_option("--internal", internal, "internal component length");
  classify->add_option("--extremal", extremal, "extremal component length");
  classify->add_option("--p-lengths", p_lengths, "comma separated lengths of P_0..P_ell");
  classify->add_option("--q-lengths", q_lengths, "comma separated lengths of Q_0..Q_ell");
  classify->add_flag("--touch", touch, "run the third-path touch filter");
  classify->add_flag("--json", as_json);
  classify->add_flag("--dot", dot);

  std::string selector, input;
  int n_min = 1, n_max = 7, ell_max = 5, k = 3;
  auto* verify = app.add_subcommand("verify", "replay a theorem over a graph space");
  verify->add_option("selector", selector, "separator | hippchen | three-paths | tables")
      ->required()
      ->check(CLI::IsMember({"separator", "hippchen", "three-paths", "tables"}));
  verify->add_option("--n-min", n_min);
  verify->add_option("--n-max", n_max);
  verify->add_option("--input", input, "graph6 stream instead of the internal enumerator");
  verify->add_option("--ell-max", ell_max, "largest intersection checked by the separator sweep");
  verify->add_option("-k,--k", k, "connectivity for hippchen");
  verify->add_flag("--json", as_json);
  verify->add_flag("--timing", timing);

  std::string target;
  auto* search = app.add_subcommand("search", "filtered counterexample search");
  search->add_option("target", target, "common-vertex | hippchen")
      ->required()
      ->check(CLI::IsMember({"common-vertex", "hippchen"}));
  search->add_option("--n-min", n_min);
  search->add_option("--n-max", n_max);
  search->add_option("--input", input);
  search->add_option("-k,--k", k);
  search->add_flag("--json", as_json);
  search->add_flag("--timing", timing);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classes) return cmd_classes(ell, as_json);
    if (*inspect) return cmd_inspect(source, fixture, cap, max_pairs, as_json, dot);
    if (*classify) return cmd_classify(perm, internal, extremal, p_lengths, q_lengths, touch, as_json, dot);
    if (*verify) {
      if (selector == "tables") return report(verify_tables(), as_json, timing);
      auto graphs = load_stream(input, n_min, n_max);
      if (selector == "separator") return report(verify_separator_theorem(graphs, ell_max), as_json, timing);
      if (selector == "hippchen") {
        if (k < 1) throw UsageError("k must be positive");
        return report(verify_hippchen(graphs, k), as_json, timing);
      }
      return report(verify_three_paths(graphs), as_json, timing);
    }
    if (*search) {
      auto graphs = load_stream(input, n_min, n_max);
      auto t = target == "common-vertex" ? Conjecture::CommonVertex : Conjecture::Hippchen;
      return report(search_counterexample(graphs, t, k), as_json, timing);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
