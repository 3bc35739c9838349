#include "bitrace/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>
#include <thread>
#include <unordered_map>

#include "bitrace/bt.hpp"
#include "bitrace/classify.hpp"
#include "bitrace/profile.hpp"

namespace bitrace {

void SweepReport::record_min(const std::string& key, std::int64_t v) {
  auto it = stats.find(key);
  if (it == stats.end() || v < it->second) stats[key] = v;
}

void SweepReport::record_max(const std::string& key, std::int64_t v) {
  auto it = stats.find(key);
  if (it == stats.end() || v > it->second) stats[key] = v;
}

void SweepReport::violation(const std::string& kind, Witness w) {
  ++violations_by_theorem[kind];
  counterexamples.push_back(std::move(w));
}

void SweepReport::merge(const SweepReport& o) {
  graphs_scanned += o.graphs_scanned;
  graphs_skipped += o.graphs_skipped;
  for (const auto& [k, v] : o.stats) {
    if (k.rfind("min_", 0) == 0)
      record_min(k, v);
    else if (k.rfind("max_", 0) == 0)
      record_max(k, v);
    else
      stats[k] += v;
  }
  counterexamples.insert(counterexamples.end(), o.counterexamples.begin(), o.counterexamples.end());
  survivors.insert(survivors.end(), o.survivors.begin(), o.survivors.end());
  for (const auto& [k, v] : o.violations_by_theorem) violations_by_theorem[k] += v;
}

nlohmann::json to_json(const SweepReport& r, bool with_timing) {
  auto wit = [](const std::vector<Witness>& ws) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& w : ws) a.push_back({{"graph6", w.graph6}, {"paths", w.paths}, {"detail", w.detail}});
    return a;
  };
  nlohmann::json j{{"theorem", r.theorem},
                   {"status", r.passed() ? "pass" : "violation"},
                   {"graphs_scanned", r.graphs_scanned},
                   {"graphs_skipped", r.graphs_skipped},
                   {"stats", r.stats},
                   {"violations_by_theorem", r.violations_by_theorem},
                   {"counterexamples", wit(r.counterexamples)}};
  if (!r.survivors.empty()) j["survivors"] = wit(r.survivors);
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

unsigned sweep_workers() {
  if (const char* env = std::getenv("BITRACE_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return static_cast<unsigned>(w);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::vector<Graph> read_graph6_stream(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_graph6(line));
  }
  return out;
}

namespace {

// Contiguous shards, one partial report each, merged in shard order.
template <class PerGraph>
SweepReport sweep(const std::string& name, const std::vector<Graph>& graphs, PerGraph per_graph) {
  auto t0 = std::chrono::steady_clock::now();
  unsigned workers = std::max(1u, std::min<unsigned>(sweep_workers(), static_cast<unsigned>(graphs.size())));
  std::vector<SweepReport> parts(workers);
  std::size_t chunk = (graphs.size() + workers - 1) / std::max(1u, workers);
  auto work = [&](unsigned w) {
    std::size_t lo = w * chunk, hi = std::min(graphs.size(), lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) per_graph(graphs[i], parts[w]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  SweepReport out;
  out.theorem = name;
  for (const auto& p : parts) out.merge(p);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

struct Sets {
  int length = 0;
  std::vector<VertexSet> sets;
  bool truncated = false;
};

Sets longest_sets(const Graph& g) {
  Sets s;
  if (g.n() <= 24) {
    LongestSets ls = longest_path_vertex_sets(g);
    s.length = ls.length;
    s.sets = std::move(ls.sets);
    return s;
  }
  PathList pl = all_longest_paths(g);
  std::set<VertexSet> uniq;
  for (const auto& p : pl.paths) uniq.insert(vertex_set(p));
  s.length = pl.paths.empty() ? 0 : path_length(pl.paths.front());
  s.sets.assign(uniq.begin(), uniq.end());
  s.truncated = pl.truncated;
  return s;
}

bool usable(const Graph& g, SweepReport& r) {
  if (g.n() == 0 || !is_connected(g)) {
    ++r.graphs_skipped;
    r.bump("disconnected");
    return false;
  }
  ++r.graphs_scanned;
  return true;
}

// Minimum pairwise intersection over distinct vertex sets, or |V(P)| with a single set.
std::pair<int, std::pair<std::size_t, std::size_t>> min_pair(const Sets& s) {
  int best = s.length + 1;
  std::pair<std::size_t, std::size_t> arg{0, 0};
  for (std::size_t i = 0; i < s.sets.size(); ++i)
    for (std::size_t j = i + 1; j < s.sets.size(); ++j) {
      int c = popcount(s.sets[i] & s.sets[j]);
      if (c < best) {
        best = c;
        arg = {i, j};
      }
    }
  return {best, arg};
}

bool hippchen_check(const Graph& g, int k, SweepReport& r, const std::string& kind) {
  Sets s = longest_sets(g);
  if (s.truncated) r.bump("capped");
  auto [m, arg] = min_pair(s);
  r.record_min("min_pair_intersection", m);
  if (m >= std::min(k, s.length + 1)) return true;
  r.violation(kind, {to_graph6(g), {path_on_set(g, s.sets[arg.first]), path_on_set(g, s.sets[arg.second])},
                     "pair intersection " + std::to_string(m) + " below " + std::to_string(k)});
  return false;
}

bool common_vertex_check(const Graph& g, SweepReport& r, const std::string& kind) {
  if (g.n() > 24) {
    r.bump("capped");
    return true;
  }
  TripleResult t = min_triple_intersection(g);
  r.record_min("min_triple_intersection", t.size);
  if (t.size > 0) return true;
  r.violation(kind, {to_graph6(g), {(*t.witness)[0], (*t.witness)[1], (*t.witness)[2]},
                     "three longest paths without a common vertex"});
  return false;
}

constexpr std::size_t kSurvivorCap = 100;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

SweepReport verify_separator_theorem(const std::vector<Graph>& graphs, int ell_max) {
  return sweep("separator", graphs, [ell_max](const Graph& g, SweepReport& r) {
    if (!usable(g, r)) return;
    Sets s = longest_sets(g);
    if (s.truncated) r.bump("capped");
    for (std::size_t i = 0; i < s.sets.size(); ++i)
      for (std::size_t j = i + 1; j < s.sets.size(); ++j) {
        VertexSet inter = s.sets[i] & s.sets[j];
        if (popcount(inter) > ell_max) continue;
        r.bump("pairs_checked");
        if (!is_separator(g, inter)) {
          r.violation("separator", {to_graph6(g), {path_on_set(g, s.sets[i]), path_on_set(g, s.sets[j])},
                                    "intersection of size " + std::to_string(popcount(inter)) + " does not separate"});
        }
      }
  });
}

SweepReport verify_hippchen(const std::vector<Graph>& graphs, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return sweep("hippchen", graphs, [k](const Graph& g, SweepReport& r) {
    if (!usable(g, r)) return;
    if (vertex_connectivity(g) < k) {
      r.bump("below_connectivity");
      return;
    }
    r.bump("k_connected");
    hippchen_check(g, k, r, "hippchen");
  });
}

SweepReport verify_three_paths(const std::vector<Graph>& graphs) {
  return sweep("three-paths", graphs, [](const Graph& g, SweepReport& r) {
    if (!usable(g, r)) return;
    Sets s = longest_sets(g);
    if (s.truncated) r.bump("capped");
    const auto& S = s.sets;
    int best = g.n() + 1;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i; j < S.size(); ++j) {
        VertexSet ij = S[i] & S[j];
        for (std::size_t k = j; k < S.size(); ++k) {
          VertexSet common = ij & S[k];
          best = std::min(best, popcount(common));
          if (common) continue;
          r.bump("empty_triples");
          int low = std::min({popcount(ij), popcount(S[i] & S[k]), popcount(S[j] & S[k])});
          if (low < 6)
            r.violation("three-paths", {to_graph6(g), {path_on_set(g, S[i]), path_on_set(g, S[j]), path_on_set(g, S[k])},
                                        "empty common intersection with a pairwise intersection of " + std::to_string(low)});
        }
      }
    r.record_min("min_triple_intersection", best);
  });
}

SweepReport verify_tables() {
  auto t0 = std::chrono::steady_clock::now();
  SweepReport r;
  r.theorem = "tables";
  for (int ell = 3; ell <= 5; ++ell) {
    auto classes = enumerate_classes(ell);
    r.stats["classes_ell" + std::to_string(ell)] = static_cast<std::int64_t>(classes.size());
    const auto& table = reference_table(ell);
    if (!table.empty()) {
      if (table.size() != classes.size())
        r.violation("tables", {"", {}, "ell=" + std::to_string(ell) + ": " + std::to_string(classes.size()) + " classes, table has " + std::to_string(table.size())});
      for (const auto& row : table) {
        std::vector<Perm> listed = row.perms;
        std::sort(listed.begin(), listed.end());
        ConfigClass c = canonical_form(listed.front());
        if (c.orbit != listed)
          r.violation("tables", {"", {}, "ell=" + std::to_string(ell) + " case " + std::to_string(row.case_no) + ": orbit differs from the listed row"});
      }
    }
    for (auto [internal, extremal] : {std::pair{2, 1}, std::pair{3, 2}}) {
      std::string tag = std::to_string(internal) + "/" + std::to_string(extremal);
      for (const auto& c : classes) {
        TableConn want = TableConn::LNC;
        if (c.table_case)
          for (const auto& row : table)
            if (row.case_no == *c.table_case) want = row.conn;
        BtRep bt = bt_generic(c.canonical, internal, extremal);
        BtClassification cls = classify_bt(bt, false);
        std::string got = to_string(cls.verdict);
        std::string expect = want == TableConn::LNC ? "AllLNC" : to_string(want);
        r.bump("rows_checked");
        r.bump("blocks_total_" + tag, static_cast<std::int64_t>(cls.tree.blocks.size()));
        r.bump("ell" + std::to_string(ell) + "_" + got + "_" + tag);
        if (got != expect)
          r.violation("tables", {"", {}, "ell=" + std::to_string(ell) + " " + perm_to_string(c.canonical) +
                                             (c.table_case ? " case " + std::to_string(*c.table_case) : "") + " at " + tag +
                                             ": expected " + expect + ", got " + got});
      }
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SweepReport search_counterexample(const std::vector<Graph>& graphs, Conjecture target, int k_or_bound) {
  std::string name = target == Conjecture::CommonVertex ? "search-common-vertex" : "search-hippchen";
  SweepReport out = sweep(name, graphs, [target, k_or_bound, name](const Graph& g, SweepReport& r) {
    if (!usable(g, r)) return;
    if (target == Conjecture::Hippchen && vertex_connectivity(g) < k_or_bound) {
      r.bump("below_connectivity");
      return;
    }
    thread_local std::unordered_map<std::string, BtVerdict> cache;
    PairList pairs = longest_path_pairs(g, true);
    bool filtered = !pairs.truncated;
    std::string reason = pairs.truncated ? "pair enumeration capped" : "";
    for (const auto& pp : pairs.pairs) {
      if (!filtered) break;
      IntersectionProfile prof = intersection_profile(pp.p, pp.q);
      if (prof.ell > 6) {
        filtered = false;
        reason = "intersection of size " + std::to_string(prof.ell) + " beyond classified range";
        break;
      }
      BtRep bt = bt_from_paths(g, pp.p, pp.q);
      std::string key = perm_to_string(bt.sigma);
      for (const auto& c : bt.comps) key += "," + std::to_string(c.length);
      auto it = cache.find(key);
      if (it == cache.end()) {
        BtVerdict v = BtVerdict::Mixed;
        try {
          v = classify_bt(bt, false).verdict;
        } catch (const BtError&) {
          r.bump("classification_errors");
        }
        it = cache.emplace(key, v).first;
      }
      if (it->second != BtVerdict::AllLNC && it->second != BtVerdict::TD) {
        filtered = false;
        reason = std::string("pair verdict ") + to_string(it->second) + " for " + perm_to_string(bt.sigma);
      }
    }
    auto full = [&](SweepReport& into, const std::string& kind) {
      return target == Conjecture::CommonVertex ? common_vertex_check(g, into, kind)
                                                : hippchen_check(g, k_or_bound, into, kind);
    };
    if (filtered) {
      r.bump("skipped_by_filter");
      std::string g6 = to_graph6(g);
      if (fnv1a(g6) % 100 == 0) {
        r.bump("sampled_skips");
        SweepReport scratch;
        if (!full(scratch, "filter-soundness")) {
          for (auto& w : scratch.counterexamples) {
            w.detail = "filter skipped a violating graph: " + w.detail;
            r.violation("filter-soundness", w);
          }
        }
      }
      return;
    }
    r.bump("survivors");
    r.survivors.push_back({to_graph6(g), {}, reason});
    full(r, name);
  });
  if (out.survivors.size() > kSurvivorCap) out.survivors.resize(kSurvivorCap);
  return out;
}

}  // namespace bitrace
