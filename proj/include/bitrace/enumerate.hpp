#pragma once

#include <cstdint>
#include <vector>

#include "bitrace/graph.hpp"

namespace bitrace {

inline constexpr int kMaxCanonicalVertices = 11;

// Isomorphism-invariant code: n in the top bits, then the relabeled upper triangle.
std::uint64_t canonical_code(const Graph& g);

// Relabels g so that its upper triangle spells the canonical code.
Graph canonical_graph(const Graph& g);

// Every connected simple graph on n vertices once up to isomorphism, ordered by code. 1 <= n <= 9.
const std::vector<Graph>& enumerate_connected_graphs(int n);

// All connected graphs with 1 <= n <= n_max vertices, in increasing n.
std::vector<Graph> connected_graphs_up_to(int n_max);

}  // namespace bitrace
