#include "bitrace/longest.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitrace {

VertexSet vertex_set(const Path& p) {
  VertexSet s = 0;
  for (int v : p) s |= bit(v);
  return s;
}

bool is_valid_path(const Graph& g, const Path& p) {
  VertexSet seen = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= g.n() || ((seen >> p[i]) & 1)) return false;
    seen |= bit(p[i]);
    if (i && !g.has_edge(p[i - 1], p[i])) return false;
  }
  return true;
}

Path canonical_orientation(Path p) {
  if (!p.empty() && p.front() > p.back()) std::reverse(p.begin(), p.end());
  return p;
}

namespace {

void require_connected(const Graph& g) {
  if (g.n() == 0) throw GraphError("empty graph");
  if (!is_connected(g)) throw GraphError("graph is not connected");
}

struct Search {
  explicit Search(const Graph& graph) : g(graph) {}
  const Graph& g;
  int target = -1;  // -1: maximize; otherwise enumerate paths of this length
  int best = 0;
  std::size_t cap = 0;
  bool truncated = false;
  std::vector<Path> found;
  Path cur;

  int reach(int v, VertexSet used) const {
    return popcount(component_of(g, all_vertices(g.n()) & ~used, v)) - 1;
  }

  void run(int v, VertexSet used) {
    if (truncated) return;
    int len = path_length(cur);
    if (target < 0) {
      best = std::max(best, len);
      if (len + reach(v, used & ~bit(v)) <= best) return;
    } else {
      if (len == target) {
        if (cur.front() < cur.back() || cur.size() == 1) {
          if (found.size() >= cap) {
            truncated = true;
            return;
          }
          found.push_back(cur);
        }
        return;
      }
      if (len + reach(v, used & ~bit(v)) < target) return;
    }
    for (VertexSet nb = g.neighbors(v) & ~used; nb; nb &= nb - 1) {
      int w = __builtin_ctzll(nb);
      cur.push_back(w);
      run(w, used | bit(w));
      cur.pop_back();
    }
  }
};

}  // namespace

int longest_path_length(const Graph& g) {
  require_connected(g);
  Search s(g);
  for (int v = 0; v < g.n(); ++v) {
    s.cur = {v};
    s.run(v, bit(v));
    if (s.best == g.n() - 1) break;
  }
  return s.best;
}

PathList all_longest_paths(const Graph& g, std::size_t cap) {
  int len = longest_path_length(g);
  Search s(g);
  s.target = len;
  s.cap = cap;
  for (int v = 0; v < g.n() && !s.truncated; ++v) {
    s.cur = {v};
    s.run(v, bit(v));
  }
  std::sort(s.found.begin(), s.found.end());
  return {std::move(s.found), s.truncated};
}

PairList longest_path_pairs(const Graph& g, bool require_distinct, std::size_t cap) {
  PathList all = all_longest_paths(g, cap);
  PairList out;
  out.truncated = all.truncated;
  std::vector<VertexSet> sets;
  for (auto& p : all.paths) sets.push_back(vertex_set(p));
  for (std::size_t i = 0; i < all.paths.size() && !out.truncated; ++i)
    for (std::size_t j = require_distinct ? i + 1 : i; j < all.paths.size(); ++j) {
      bool same = sets[i] == sets[j];
      if (require_distinct && same) continue;
      if (out.pairs.size() >= cap) {
        out.truncated = true;
        break;
      }
      VertexSet inter = sets[i] & sets[j];
      if (!inter) throw std::logic_error("two longest paths of a connected graph are disjoint");
      out.pairs.push_back({all.paths[i], all.paths[j], inter, same});
    }
  return out;
}

LongestSets longest_path_vertex_sets(const Graph& g) {
  require_connected(g);
  int n = g.n();
  if (n > 24) throw GraphError("vertex-set DP limited to n <= 24");
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (int v = 0; v < n; ++v) ends[bit(v)] = 1u << v;
  int best = 1;
  for (std::size_t mask = 1; mask < ends.size(); ++mask) {
    std::uint32_t e = ends[mask];
    if (!e) continue;
    best = std::max(best, popcount(mask));
    for (; e; e &= e - 1) {
      int v = __builtin_ctz(e);
      for (VertexSet nb = g.neighbors(v) & ~VertexSet(mask); nb; nb &= nb - 1) {
        int w = __builtin_ctzll(nb);
        ends[mask | bit(w)] |= 1u << w;
      }
    }
  }
  LongestSets out;
  out.length = best - 1;
  for (std::size_t mask = 1; mask < ends.size(); ++mask)
    if (ends[mask] && popcount(mask) == best) out.sets.push_back(mask);
  return out;
}

Path path_on_set(const Graph& g, VertexSet s) {
  Path cur;
  int want = popcount(s);
  auto dfs = [&](auto&& self, int v, VertexSet used) -> bool {
    if (static_cast<int>(cur.size()) == want) return true;
    for (VertexSet nb = g.neighbors(v) & s & ~used; nb; nb &= nb - 1) {
      int w = __builtin_ctzll(nb);
      cur.push_back(w);
      if (self(self, w, used | bit(w))) return true;
      cur.pop_back();
    }
    return false;
  };
  for (VertexSet t = s; t; t &= t - 1) {
    int v = __builtin_ctzll(t);
    cur = {v};
    if (dfs(dfs, v, bit(v))) return canonical_orientation(cur);
  }
  return {};
}

TripleResult min_triple_intersection(const Graph& g) {
  LongestSets ls = longest_path_vertex_sets(g);
  const auto& S = ls.sets;
  TripleResult r;
  r.size = g.n() + 1;
  std::array<std::size_t, 3> arg{};
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i; j < S.size(); ++j) {
      VertexSet ij = S[i] & S[j];
      if (r.size == 0) break;
      for (std::size_t k = j; k < S.size(); ++k) {
        int c = popcount(ij & S[k]);
        if (c < r.size) {
          r.size = c;
          arg = {i, j, k};
        }
      }
    }
  r.witness = std::array<Path, 3>{path_on_set(g, S[arg[0]]), path_on_set(g, S[arg[1]]), path_on_set(g, S[arg[2]])};
  return r;
}

}  // namespace bitrace
