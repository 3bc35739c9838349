#include "bitrace/graph.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace bitrace {

Graph::Graph(int n) : n_(n), adj_(n < 0 || n > kMaxVertices ? 0 : n, 0) {
  if (n < 0 || n > kMaxVertices) throw GraphError("vertex count out of range");
}

int Graph::edge_count() const {
  int m = 0;
  for (auto r : adj_) m += popcount(r);
  return m / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw GraphError("self-loop");
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw GraphError("vertex out of range");
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

void Graph::remove_edge(int u, int v) {
  adj_[u] &= ~bit(v);
  adj_[v] &= ~bit(u);
}

Graph Graph::induced(VertexSet s) const {
  std::vector<int> ids;
  std::vector<int> pos(n_, -1);
  for (int v = 0; v < n_; ++v)
    if ((s >> v) & 1) {
      pos[v] = static_cast<int>(ids.size());
      ids.push_back(v);
    }
  Graph h(static_cast<int>(ids.size()));
  for (int i = 0; i < h.n(); ++i)
    for (int j = i + 1; j < h.n(); ++j)
      if (has_edge(ids[i], ids[j])) h.add_edge(i, j);
  return h;
}

int MultiGraph::add_vertex() {
  inc_.emplace_back();
  return n_++;
}

int MultiGraph::add_edge(int u, int v, Color c) {
  if (u == v) throw GraphError("self-loop in multigraph");
  int parallel = 0;
  for (int e : inc_[u]) {
    if (other(e, u) != v) continue;
    ++parallel;
    if (edges_[e].color == c) throw GraphError("parallel edges of equal color");
  }
  if (parallel >= 2) throw GraphError("edge multiplicity above 2");
  edges_.push_back({u, v, c});
  int id = static_cast<int>(edges_.size()) - 1;
  inc_[u].push_back(id);
  inc_[v].push_back(id);
  return id;
}

Graph MultiGraph::simple() const {
  Graph g(n_);
  for (auto& e : edges_) g.add_edge(e.u, e.v);
  return g;
}

VertexSet component_of(const Graph& g, VertexSet s, int v) {
  VertexSet seen = bit(v), frontier = bit(v);
  while (frontier) {
    VertexSet next = 0;
    for (VertexSet f = frontier; f; f &= f - 1) next |= g.neighbors(__builtin_ctzll(f));
    next &= s & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

int component_count(const Graph& g, VertexSet s) {
  int c = 0;
  while (s) {
    s &= ~component_of(g, s, __builtin_ctzll(s));
    ++c;
  }
  return c;
}

bool is_connected(const Graph& g) { return component_count(g, all_vertices(g.n())) <= 1; }

bool is_separator(const Graph& g, VertexSet s) {
  VertexSet all = all_vertices(g.n());
  if (s & ~all) throw GraphError("separator candidate outside vertex set");
  VertexSet rest = all & ~s;
  if (!rest) throw GraphError("separator candidate has empty complement");
  return component_count(g, rest) >= 2;
}

int local_connectivity(const Graph& g, int s, int t) {
  // Vertex-split network: v_in = 2v, v_out = 2v+1.
  int n = g.n(), m = 2 * n;
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> cap(m, std::vector<int>(m, 0));
  for (int v = 0; v < n; ++v) cap[2 * v][2 * v + 1] = (v == s || v == t) ? inf : 1;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (g.has_edge(u, v)) cap[2 * u + 1][2 * v] = inf;
  int src = 2 * s + 1, dst = 2 * t;
  int flow = 0;
  std::vector<int> prev(m);
  while (true) {
    std::fill(prev.begin(), prev.end(), -1);
    prev[src] = src;
    std::queue<int> q;
    q.push(src);
    while (!q.empty() && prev[dst] < 0) {
      int a = q.front();
      q.pop();
      for (int b = 0; b < m; ++b)
        if (prev[b] < 0 && cap[a][b] > 0) {
          prev[b] = a;
          q.push(b);
        }
    }
    if (prev[dst] < 0) break;
    int aug = inf;
    for (int b = dst; b != src; b = prev[b]) aug = std::min(aug, cap[prev[b]][b]);
    for (int b = dst; b != src; b = prev[b]) {
      cap[prev[b]][b] -= aug;
      cap[b][prev[b]] += aug;
    }
    flow += aug;
    if (flow >= n) break;
  }
  return flow;
}

int vertex_connectivity(const Graph& g) {
  int n = g.n();
  if (n <= 1) return 0;
  if (!is_connected(g)) return 0;
  int best = n - 1;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) best = std::min(best, local_connectivity(g, u, v));
  return best;
}

Graph parse_graph6(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  if (line.rfind(">>graph6<<", 0) == 0) line.remove_prefix(10);
  if (line.empty()) throw GraphError("graph6: empty input");
  for (char ch : line)
    if (ch < 63 || ch > 126) throw GraphError("graph6: character out of range");
  if (line[0] == 126) throw GraphError("graph6: only n <= 62 is supported");
  int n = line[0] - 63;
  std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::size_t need = (bits + 5) / 6;
  if (line.size() - 1 < need) throw GraphError("graph6: truncated payload");
  if (line.size() - 1 > need) throw GraphError("graph6: trailing data");
  Graph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int byte = line[1 + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  return g;
}

std::string to_graph6(const Graph& g) {
  int n = g.n();
  std::string out(1, static_cast<char>(n + 63));
  int acc = 0, fill = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++fill == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = fill = 0;
      }
    }
  if (fill) out.push_back(static_cast<char>((acc << (6 - fill)) + 63));
  return out;
}

Graph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(std::string("json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) throw GraphError("json: expected {n, edges}");
  try {
    Graph g(j["n"].get<int>());
    for (auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw GraphError("json: edge must be [u, v]");
      int u = e[0].get<int>(), v = e[1].get<int>();
      if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) throw GraphError("json: vertex out of range");
      if (g.has_edge(u, v)) throw GraphError("json: parallel edge");
      g.add_edge(u, v);
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("json: ") + e.what());
  }
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump();
}

std::string emit_dot(const Graph& g, VertexSet highlight) {
  std::ostringstream os;
  os << "graph G {\n  node [shape=circle];\n";
  for (int v = 0; v < g.n(); ++v) {
    os << "  " << v;
    if ((highlight >> v) & 1) os << " [style=filled, fillcolor=gold]";
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string emit_dot(const MultiGraph& g, VertexSet highlight, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "graph BT {\n  node [shape=circle];\n";
  for (int v = 0; v < g.n(); ++v) {
    os << "  " << v;
    std::vector<std::string> attrs;
    if (v < static_cast<int>(labels.size()) && !labels[v].empty()) attrs.push_back("label=\"" + labels[v] + "\"");
    if ((highlight >> v) & 1) attrs.push_back("style=filled, fillcolor=gold");
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
      os << "]";
    }
    os << ";\n";
  }
  for (auto& e : g.edges())
    os << "  " << e.u << " -- " << e.v << " [color=" << (e.color == Color::P ? "black" : "blue") << "];\n";
  os << "}\n";
  return os.str();
}

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

}  // namespace bitrace
