#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bitrace {

using VertexSet = std::uint64_t;

inline constexpr int kMaxVertices = 62;

inline VertexSet bit(int v) { return VertexSet{1} << v; }
inline int popcount(VertexSet s) { return __builtin_popcountll(s); }
inline VertexSet all_vertices(int n) { return n >= 64 ? ~VertexSet{0} : bit(n) - 1; }

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  VertexSet neighbors(int v) const { return adj_[v]; }
  const std::vector<VertexSet>& rows() const { return adj_; }
  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1; }
  int degree(int v) const { return popcount(adj_[v]); }
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  Graph induced(VertexSet s) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_ = 0;
  std::vector<VertexSet> adj_;
};

enum class Color : std::uint8_t { P, Q };

inline char color_char(Color c) { return c == Color::P ? 'P' : 'Q'; }

struct ColoredEdge {
  int u;
  int v;
  Color color;
};

class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int n) : n_(n), inc_(n) {}

  int n() const { return n_; }
  int add_vertex();
  int add_edge(int u, int v, Color c);
  const std::vector<ColoredEdge>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const { return inc_[v]; }
  int other(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }
  Graph simple() const;

 private:
  int n_ = 0;
  std::vector<ColoredEdge> edges_;
  std::vector<std::vector<int>> inc_;
};

// Number of connected components of g restricted to s.
int component_count(const Graph& g, VertexSet s);
VertexSet component_of(const Graph& g, VertexSet s, int v);

bool is_connected(const Graph& g);
bool is_separator(const Graph& g, VertexSet s);
int vertex_connectivity(const Graph& g);
int local_connectivity(const Graph& g, int s, int t);

Graph parse_graph6(std::string_view line);
std::string to_graph6(const Graph& g);

Graph graph_from_json(const std::string& text);
std::string graph_to_json(const Graph& g);

std::string emit_dot(const Graph& g, VertexSet highlight = 0);
std::string emit_dot(const MultiGraph& g, VertexSet highlight = 0,
                     const std::vector<std::string>& labels = {});

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph petersen_graph();

}  // namespace bitrace
