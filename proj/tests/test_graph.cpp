#include <algorithm>
#include <random>
#include <string>

#include "doctest.h"

#include "bitrace/graph.hpp"

using namespace bitrace;

namespace {

// Straight decoder of the graph6 upper-triangle layout, written separately from the library.
std::vector<std::pair<int, int>> decode_g6(const std::string& s) {
  int n = s[0] - 63;
  std::vector<int> bits;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (int b = 5; b >= 0; --b) bits.push_back(((s[i] - 63) >> b) & 1);
  std::vector<std::pair<int, int>> out;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if (bits[k]) out.push_back({i, j});
  std::sort(out.begin(), out.end());
  return out;
}

Graph random_graph(std::mt19937& rng, int n, double p) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

int brute_connectivity(const Graph& g) {
  int n = g.n();
  int best = n - 1;
  for (VertexSet s = 0; s < (VertexSet{1} << n); ++s) {
    if (popcount(s) >= best || popcount(s) > n - 2) continue;
    if (component_count(g, all_vertices(n) & ~s) >= 2) best = popcount(s);
  }
  return best;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("connectivity of small families") {
    CHECK(vertex_connectivity(petersen_graph()) == 3);
    CHECK(vertex_connectivity(complete_graph(5)) == 4);
    CHECK(vertex_connectivity(path_graph(6)) == 1);
    CHECK(vertex_connectivity(cycle_graph(6)) == 2);
    CHECK(vertex_connectivity(complete_graph(1)) == 0);
    Graph two(2);
    CHECK(vertex_connectivity(two) == 0);
    CHECK(is_connected(petersen_graph()));
    CHECK_FALSE(is_connected(two));
  }

  TEST_CASE("separators") {
    Graph p = path_graph(5);
    CHECK(is_separator(p, bit(2)));
    CHECK_FALSE(is_separator(p, bit(0)));
    CHECK_FALSE(is_separator(p, bit(0) | bit(1)));
    Graph c = cycle_graph(6);
    CHECK_FALSE(is_separator(c, bit(0)));
    CHECK(is_separator(c, bit(0) | bit(3)));
    CHECK_THROWS_AS(is_separator(p, bit(7)), GraphError);
    CHECK_THROWS_AS(is_separator(p, all_vertices(5)), GraphError);
  }

  TEST_CASE("connectivity matches exhaustive cut search") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
      int n = 2 + trial % 7;
      Graph g = random_graph(rng, n, 0.3 + 0.1 * (trial % 5));
      if (!is_connected(g)) continue;
      CAPTURE(to_graph6(g));
      CHECK(vertex_connectivity(g) == brute_connectivity(g));
    }
  }

  TEST_CASE("local connectivity counts disjoint paths") {
    Graph c = cycle_graph(8);
    CHECK(local_connectivity(c, 0, 4) == 2);
    CHECK(local_connectivity(petersen_graph(), 0, 7) == 3);
  }

  TEST_CASE("graph6 decoding") {
    Graph k2 = parse_graph6("A_");
    CHECK(k2.n() == 2);
    CHECK(k2.has_edge(0, 1));

    Graph star = parse_graph6("D?{");
    CHECK(star.n() == 5);
    CHECK(star.edges() == decode_g6("D?{"));
    CHECK(star.degree(4) == 4);
    for (int v = 0; v < 4; ++v) CHECK(star.degree(v) == 1);

    CHECK(parse_graph6(">>graph6<<A_\n") == k2);
    CHECK(parse_graph6("@").n() == 1);
  }

  TEST_CASE("graph6 round trip") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      Graph g = random_graph(rng, 1 + trial % 14, 0.4);
      std::string s = to_graph6(g);
      CHECK(parse_graph6(s) == g);
      CHECK(decode_g6(s) == g.edges());
    }
    CHECK(to_graph6(petersen_graph()) == to_graph6(parse_graph6(to_graph6(petersen_graph()))));
  }

  TEST_CASE("graph6 errors") {
    CHECK_THROWS_AS(parse_graph6(""), GraphError);
    CHECK_THROWS_AS(parse_graph6("~~~~"), GraphError);
    CHECK_THROWS_AS(parse_graph6("D?"), GraphError);
    CHECK_THROWS_AS(parse_graph6("A__"), GraphError);
    CHECK_THROWS_AS(parse_graph6("A "), GraphError);
  }

  TEST_CASE("json round trip and errors") {
    Graph g = petersen_graph();
    CHECK(graph_from_json(graph_to_json(g)) == g);
    Graph h = graph_from_json(R"({"n": 3, "edges": [[0, 1], [1, 2]]})");
    CHECK(h == path_graph(3));
    CHECK_THROWS_AS(graph_from_json("{"), GraphError);
    CHECK_THROWS_AS(graph_from_json(R"({"n": 3})"), GraphError);
    CHECK_THROWS_AS(graph_from_json(R"({"n": 3, "edges": [[0, 3]]})"), GraphError);
    CHECK_THROWS_AS(graph_from_json(R"({"n": 3, "edges": [[0, 1], [1, 0]]})"), GraphError);
    CHECK_THROWS_AS(graph_from_json(R"({"n": 3, "edges": [[1, 1]]})"), GraphError);
    CHECK_THROWS_AS(graph_from_json(R"({"n": 3, "edges": [[0, 1, 2]]})"), GraphError);
    CHECK_THROWS_AS(graph_from_json(R"({"n": -1, "edges": []})"), GraphError);
    CHECK_THROWS_AS(graph_from_json(R"({"n": "x", "edges": []})"), GraphError);
  }

  TEST_CASE("edits and induced subgraphs") {
    Graph g = cycle_graph(5);
    CHECK(g.edge_count() == 5);
    g.remove_edge(0, 4);
    CHECK(g == path_graph(5));
    Graph sub = g.induced(bit(1) | bit(2) | bit(4));
    CHECK(sub.n() == 3);
    CHECK(sub.edge_count() == 1);
    CHECK_THROWS_AS(g.add_edge(2, 2), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 5), GraphError);
    CHECK_THROWS_AS(Graph(kMaxVertices + 1), GraphError);
  }

  TEST_CASE("dot output") {
    std::string d = emit_dot(path_graph(3), bit(1));
    CHECK(d.find("graph G {") == 0);
    CHECK(d.find("0 -- 1;") != std::string::npos);
    CHECK(d.find("1 [style=filled, fillcolor=gold]") != std::string::npos);

    MultiGraph m(2);
    m.add_edge(0, 1, Color::P);
    m.add_edge(0, 1, Color::Q);
    std::string md = emit_dot(m, 0, {"a1", ""});
    CHECK(md.find("label=\"a1\"") != std::string::npos);
    CHECK(md.find("color=blue") != std::string::npos);
  }

  TEST_CASE("multigraph constraints") {
    MultiGraph m(3);
    m.add_edge(0, 1, Color::P);
    CHECK_THROWS_AS(m.add_edge(1, 0, Color::P), GraphError);
    m.add_edge(1, 0, Color::Q);
    CHECK_THROWS_AS(m.add_edge(0, 0, Color::Q), GraphError);
    CHECK(m.add_vertex() == 3);
    m.add_edge(2, 3, Color::Q);
    CHECK(m.other(2, 3) == 2);
    CHECK(m.simple().edge_count() == 2);
    CHECK(m.incident(0).size() == 2);
  }
}
