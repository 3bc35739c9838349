#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bitrace/graph.hpp"
#include "bitrace/longest.hpp"
#include "bitrace/profile.hpp"

namespace bitrace {

using EdgeSet = std::uint64_t;

inline EdgeSet ebit(int e) { return EdgeSet{1} << e; }

class BtError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Component {
  Color color = Color::P;
  int index = 0;               // i in P_i / Q_i
  std::vector<int> verts;      // along the path direction
  std::vector<int> interior;   // verts outside the intersection
  std::vector<int> edges;
  int length = 0;
  bool extremal = false;

  bool empty() const { return interior.empty(); }
  std::string name() const { return std::string(1, color_char(color)) + std::to_string(index); }
};

// Vertices 0..ell-1 are a_1..a_ell. Components are P_0..P_ell followed by Q_0..Q_ell.
struct BtRep {
  int ell = 0;
  Perm sigma;
  MultiGraph host;
  std::vector<Component> comps;
  std::vector<int> edge_comp;
  Path p_path;
  Path q_path;
  int length_p = 0;
  int length_q = 0;
  std::vector<int> host_vertex;  // BT vertex -> vertex of the source graph, if any

  int comp_id(Color c, int i) const { return (c == Color::P ? 0 : ell + 1) + i; }
  const Component& comp(Color c, int i) const { return comps[comp_id(c, i)]; }
  VertexSet intersection() const { return all_vertices(ell); }
  int edge_count() const { return static_cast<int>(host.edges().size()); }
  EdgeSet all_edges() const;
  EdgeSet comp_edges(int c) const;
  std::vector<int> nonempty(Color c) const;
};

struct GenericLengths {
  std::vector<int> p;
  std::vector<int> q;
};

GenericLengths default_lengths(int ell, int internal = 2, int extremal = 1);

BtRep bt_from_paths(const Graph& g, const Path& p, const Path& q);

// Throws BtError when an exterior swap unit has unequal color sums.
BtRep bt_generic(const Perm& sigma, const GenericLengths& lengths);
BtRep bt_generic(const Perm& sigma, int internal = 2, int extremal = 1);
BtRep bt_build_unchecked(const Perm& sigma, const GenericLengths& lengths);

// True when P and Q are longest paths of the representation itself.
bool is_longest_in_bt(const BtRep& bt);
int bt_longest_path(const BtRep& bt);

// Builds the representation of two vertex sequences sharing at least one vertex.
BtRep bt_from_sequences(const Path& p, const Path& q, const std::vector<int>& host = {});

// A representation derived from another one, with the vertex correspondence.
struct Derived {
  BtRep bt;
  std::vector<int> old_to_new;
};

// Subdivides every edge e into a chain of edge_len[e] edges.
Derived stretch(const BtRep& bt, const std::vector<int>& edge_len);

enum class BlockKind { IBB, ElementaryIBB, EBB, ElementaryEBB, WholeBB };
const char* to_string(BlockKind k);

struct Block {
  BlockKind kind = BlockKind::IBB;
  std::vector<int> ends;      // EBB: cut vertex first
  std::vector<int> comps;
  std::vector<int> embedded;  // blocks strictly inside
  std::vector<int> esu;       // comps not inside an embedded IBB
  int parent = -1;
  bool top = false;
  int length_p = 0;
  int length_q = 0;
};

struct BlockTree {
  std::vector<Block> blocks;
  std::vector<int> esu_of_comp;  // block id whose ESU holds the component
  std::vector<std::string> violations;
};

BlockTree block_decomposition(const BtRep& bt);

// Swaps the colors of the given completed components. Throws BtError unless both colors still form paths.
Derived swap_components(const BtRep& bt, const std::vector<int>& comps);

// Swaps colors of the completed components in the ESU of block b.
Derived swap_esu(const BtRep& bt, const BlockTree& tree, int b);

// Swaps colors of every completed component of block b, embedded blocks included.
Derived swap_block(const BtRep& bt, const BlockTree& tree, int b);

std::string describe(const BtRep& bt, const BlockTree& tree);

}  // namespace bitrace
