#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "bitrace/graph.hpp"

namespace bitrace {

using Path = std::vector<int>;

inline constexpr std::size_t kDefaultCap = 100000;

inline int path_length(const Path& p) { return p.empty() ? 0 : static_cast<int>(p.size()) - 1; }
VertexSet vertex_set(const Path& p);
bool is_valid_path(const Graph& g, const Path& p);
Path canonical_orientation(Path p);

int longest_path_length(const Graph& g);

struct PathList {
  std::vector<Path> paths;
  bool truncated = false;
};

PathList all_longest_paths(const Graph& g, std::size_t cap = kDefaultCap);

struct PathPair {
  Path p;
  Path q;
  VertexSet intersection = 0;
  bool same_vertex_set = false;
};

struct PairList {
  std::vector<PathPair> pairs;
  bool truncated = false;
};

PairList longest_path_pairs(const Graph& g, bool require_distinct_vertex_sets, std::size_t cap = kDefaultCap);

struct TripleResult {
  int size = 0;
  std::optional<std::array<Path, 3>> witness;
};

TripleResult min_triple_intersection(const Graph& g);

// Vertex sets of all longest paths, sorted ascending. Exact subset DP, n <= 24.
struct LongestSets {
  int length = 0;
  std::vector<VertexSet> sets;
};

LongestSets longest_path_vertex_sets(const Graph& g);

// Some path visiting exactly the vertices of s, or empty if none exists.
Path path_on_set(const Graph& g, VertexSet s);

}  // namespace bitrace
