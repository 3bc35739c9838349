#include "bitrace/fixtures.hpp"

namespace bitrace {

const Fixture& intro_fixture() {
  static const Fixture f = [] {
    Fixture x;
    x.name = "intro-n11";
    x.graph = Graph(11);
    const int edges[][2] = {{0, 1}, {1, 2}, {1, 4}, {4, 7}, {2, 3}, {3, 5}, {5, 7},
                            {3, 8}, {7, 6}, {6, 9}, {9, 10}, {8, 9}, {2, 6}, {4, 8}};
    for (auto& e : edges) x.graph.add_edge(e[0], e[1]);
    x.expected_length = 9;
    x.expected_intersection = 9;
    return x;
  }();
  return f;
}

FixtureCheck check_fixture(const Fixture& f) {
  FixtureCheck c;
  const Graph& g = f.graph;
  c.length = longest_path_length(g);
  if (c.length != f.expected_length) c.problems.push_back("longest path length " + std::to_string(c.length));
  LongestSets sets = longest_path_vertex_sets(g);
  for (std::size_t i = 0; i < sets.sets.size() && c.p.empty(); ++i)
    for (std::size_t j = i + 1; j < sets.sets.size(); ++j) {
      VertexSet inter = sets.sets[i] & sets.sets[j];
      if (popcount(inter) != f.expected_intersection) continue;
      if (!is_connected(g.induced(all_vertices(g.n()) & ~inter))) continue;
      c.p = path_on_set(g, sets.sets[i]);
      c.q = path_on_set(g, sets.sets[j]);
      c.intersection = popcount(inter);
      c.distinct_sets = true;
      c.complement_connected = true;
      break;
    }
  if (c.p.empty()) c.problems.push_back("no longest-path pair with the expected non-separating intersection");
  c.ok = c.problems.empty();
  return c;
}

void require_fixture(const Fixture& f) {
  FixtureCheck c = check_fixture(f);
  if (!c.ok) throw GraphError("fixture " + f.name + " failed its self-check: " + c.problems.front());
}

}  // namespace bitrace
