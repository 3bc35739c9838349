#include "bitrace/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bitrace {

namespace {

using Cells = std::vector<VertexSet>;

int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }  // i < j

// Splits cells by neighbor counts into each splitter until stable.
void refine(const Graph& g, Cells& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
      VertexSet splitter = cells[s];
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (popcount(cells[c]) < 2) continue;
        std::map<int, VertexSet> by_count;
        for (VertexSet t = cells[c]; t; t &= t - 1) {
          int v = __builtin_ctzll(t);
          by_count[popcount(g.neighbors(v) & splitter)] |= bit(v);
        }
        if (by_count.size() < 2) continue;
        Cells parts;
        for (auto& [k, part] : by_count) parts.push_back(part);
        cells.erase(cells.begin() + c);
        cells.insert(cells.begin() + c, parts.begin(), parts.end());
        changed = true;
        break;
      }
    }
  }
}

bool twins(const Graph& g, int u, int v) {
  return (g.neighbors(u) & ~bit(v)) == (g.neighbors(v) & ~bit(u));
}

struct Best {
  std::uint64_t code = ~std::uint64_t{0};
  std::vector<int> label;
};

void search(const Graph& g, Cells cells, Best& best) {
  refine(g, cells);
  auto open = std::find_if(cells.begin(), cells.end(), [](VertexSet c) { return popcount(c) > 1; });
  if (open == cells.end()) {
    std::vector<int> label(g.n());
    for (std::size_t i = 0; i < cells.size(); ++i) label[__builtin_ctzll(cells[i])] = static_cast<int>(i);
    std::uint64_t code = 0;
    for (auto [u, v] : g.edges()) {
      int a = std::min(label[u], label[v]), b = std::max(label[u], label[v]);
      code |= std::uint64_t{1} << pair_bit(a, b);
    }
    code |= static_cast<std::uint64_t>(g.n()) << 56;
    if (code < best.code) {
      best.code = code;
      best.label = label;
    }
    return;
  }
  std::size_t at = open - cells.begin();
  VertexSet cell = *open, tried = 0;
  for (VertexSet t = cell; t; t &= t - 1) {
    int v = __builtin_ctzll(t);
    bool twin = false;
    for (VertexSet u = tried; u && !twin; u &= u - 1) twin = twins(g, __builtin_ctzll(u), v);
    if (twin) continue;
    tried |= bit(v);
    Cells next = cells;
    next[at] = bit(v);
    next.insert(next.begin() + at + 1, cell & ~bit(v));
    search(g, next, best);
  }
}

Best run(const Graph& g) {
  if (g.n() > kMaxCanonicalVertices) throw GraphError("canonical code limited to 11 vertices");
  Best best;
  Cells cells;
  if (g.n()) {
    std::map<int, VertexSet> by_degree;
    for (int v = 0; v < g.n(); ++v) by_degree[g.degree(v)] |= bit(v);
    for (auto& [d, c] : by_degree) cells.push_back(c);
  }
  if (!g.n()) return {0, {}};
  search(g, cells, best);
  return best;
}

unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) { return run(g).code; }

Graph canonical_graph(const Graph& g) {
  Best b = run(g);
  Graph out(g.n());
  for (auto [u, v] : g.edges()) out.add_edge(b.label[u], b.label[v]);
  return out;
}

const std::vector<Graph>& enumerate_connected_graphs(int n) {
  if (n < 1 || n > 9) throw std::invalid_argument("internal enumerator covers 1 <= n <= 9");
  static std::mutex mu;
  static std::map<int, std::vector<Graph>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::vector<Graph> out;
  if (n == 1) {
    out.push_back(Graph(1));
  } else {
    const auto& prev = enumerate_connected_graphs(n - 1);
    unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(prev.size()));
    std::vector<std::vector<std::uint64_t>> found(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < prev.size(); i += workers) {
          Graph base(n);
          for (auto [u, v] : prev[i].edges()) base.add_edge(u, v);
          for (VertexSet nb = 1; nb < bit(n - 1); ++nb) {
            Graph g = base;
            for (VertexSet t = nb; t; t &= t - 1) g.add_edge(n - 1, __builtin_ctzll(t));
            found[w].push_back(canonical_code(g));
          }
          std::sort(found[w].begin(), found[w].end());
          found[w].erase(std::unique(found[w].begin(), found[w].end()), found[w].end());
        }
      });
    for (auto& t : pool) t.join();
    std::vector<std::uint64_t> codes;
    for (auto& f : found) codes.insert(codes.end(), f.begin(), f.end());
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    for (std::uint64_t code : codes) {
      Graph g(n);
      for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
          if ((code >> pair_bit(i, j)) & 1) g.add_edge(i, j);
      out.push_back(std::move(g));
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(out)).first->second;
}

std::vector<Graph> connected_graphs_up_to(int n_max) {
  std::vector<Graph> out;
  for (int n = 1; n <= n_max; ++n) {
    const auto& level = enumerate_connected_graphs(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace bitrace
