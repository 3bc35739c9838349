#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"

#include "bitrace/bt.hpp"
#include "bitrace/fixtures.hpp"
#include "bitrace/longest.hpp"

using namespace bitrace;

namespace {

std::vector<std::string> esu_names(const BtRep& bt, const Block& b) {
  std::vector<std::string> out;
  for (int c : b.esu) out.push_back(bt.comps[c].name());
  return out;
}

int count_kind(const BlockTree& t, BlockKind k, bool embedded) {
  int n = 0;
  for (const auto& b : t.blocks)
    if (b.kind == k && b.top != embedded) ++n;
  return n;
}

std::multiset<std::pair<int, int>> edge_multiset(const BtRep& bt) {
  std::multiset<std::pair<int, int>> out;
  for (const auto& e : bt.host.edges()) out.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  return out;
}

void check_structure(const BtRep& bt) {
  const auto& E = bt.host.edges();
  for (int v = 0; v < bt.ell; ++v) {
    int pc = 0, qc = 0;
    for (int e : bt.host.incident(v)) (E[e].color == Color::P ? pc : qc)++;
    if (pc + qc == 4) {
      CHECK(pc == 2);
      CHECK(qc == 2);
    }
    CHECK(pc <= 2);
    CHECK(qc <= 2);
  }
  BlockTree t = block_decomposition(bt);
  CHECK(t.violations.empty());
  CHECK(describe(bt, block_decomposition(bt)) == describe(bt, t));
  std::map<int, int> owner;
  for (std::size_t b = 0; b < t.blocks.size(); ++b) {
    CHECK(t.blocks[b].length_p == t.blocks[b].length_q);
    for (int c : t.blocks[b].esu) {
      CHECK(owner.count(c) == 0);
      owner[c] = static_cast<int>(b);
      CHECK(t.esu_of_comp[c] == static_cast<int>(b));
    }
  }
  for (std::size_t c = 0; c < bt.comps.size(); ++c)
    if (bt.comps[c].length > 0) CHECK(owner.count(static_cast<int>(c)) == 1);
}

}  // namespace

TEST_SUITE("bt") {
  TEST_CASE("identity ell=3") {
    BtRep bt = bt_generic(identity_perm(3));
    CHECK(bt.length_p == 6);
    CHECK(bt.length_q == 6);
    BlockTree t = block_decomposition(bt);
    CHECK(t.blocks.size() == 4);
    CHECK(count_kind(t, BlockKind::ElementaryEBB, false) == 2);
    CHECK(count_kind(t, BlockKind::ElementaryIBB, false) == 2);
  }

  TEST_CASE("identity ell=7") {
    BtRep bt = bt_generic(identity_perm(7));
    BlockTree t = block_decomposition(bt);
    CHECK(t.blocks.size() == 8);
    CHECK(count_kind(t, BlockKind::ElementaryIBB, false) == 6);
    CHECK(count_kind(t, BlockKind::ElementaryEBB, false) == 2);
    for (const auto& b : t.blocks) CHECK(b.esu.size() == 2);
  }

  TEST_CASE("ell=4 case 6 has one block with a six-component ESU") {
    BtRep bt = bt_generic({2, 1, 4, 3});
    BlockTree t = block_decomposition(bt);
    REQUIRE(t.blocks.size() == 3);
    CHECK(t.blocks[0].kind == BlockKind::WholeBB);
    CHECK(t.blocks[0].embedded.size() == 2);
    CHECK(esu_names(bt, t.blocks[0]) == std::vector<std::string>{"P0", "P2", "P4", "Q0", "Q2", "Q4"});
    CHECK(count_kind(t, BlockKind::ElementaryIBB, true) == 2);
  }

  TEST_CASE("ell=5 case 9 is an elementary EBB and a ten-component EBB") {
    BtRep bt = bt_generic({1, 3, 5, 2, 4});
    REQUIRE(lookup_case(bt.sigma) == 9);
    BlockTree t = block_decomposition(bt);
    REQUIRE(t.blocks.size() == 2);
    CHECK(t.blocks[0].kind == BlockKind::ElementaryEBB);
    CHECK(t.blocks[1].kind == BlockKind::EBB);
    CHECK(t.blocks[1].esu.size() == 10);
    CHECK(t.blocks[1].embedded.empty());
  }

  TEST_CASE("ell=5 case 19 has three embedded elementary IBBs") {
    BtRep bt = bt_generic({2, 1, 5, 4, 3});
    REQUIRE(lookup_case(bt.sigma) == 19);
    BlockTree t = block_decomposition(bt);
    REQUIRE(t.blocks.size() == 4);
    CHECK(t.blocks[0].kind == BlockKind::WholeBB);
    CHECK(t.blocks[0].esu.size() == 6);
    CHECK(count_kind(t, BlockKind::ElementaryIBB, true) == 3);
  }

  TEST_CASE("three concatenated IBBs with five embedded elementary IBBs") {
    // Empty extremal components; the middle IBB spans ten intersection vertices.
    Perm s{1, 2, 4, 3, 6, 5, 10, 9, 8, 7, 11, 12};
    GenericLengths L = default_lengths(12);
    L.p[0] = L.p[12] = L.q[0] = L.q[12] = 0;
    BtRep bt = bt_generic(s, L);
    BlockTree t = block_decomposition(bt);
    int two = 0, eight = 0, other = 0;
    for (const auto& b : t.blocks) (b.esu.size() == 2 ? two : b.esu.size() == 8 ? eight : other)++;
    CHECK(two == 7);
    CHECK(eight == 1);
    CHECK(other == 0);
    CHECK(count_kind(t, BlockKind::ElementaryIBB, true) == 5);
    CHECK(count_kind(t, BlockKind::ElementaryIBB, false) == 2);
    CHECK(count_kind(t, BlockKind::IBB, false) == 1);
  }

  TEST_CASE("single-block classes") {
    for (Perm s : {Perm{2, 4, 1, 3}, Perm{2, 4, 1, 5, 3}, Perm{2, 5, 3, 1, 4}}) {
      BlockTree t = block_decomposition(bt_generic(s));
      REQUIRE(t.blocks.size() == 1);
      CHECK(t.blocks[0].kind == BlockKind::WholeBB);
      CHECK(t.blocks[0].esu.size() == 2 * (s.size() + 1));
    }
  }

  TEST_CASE("structural invariants over all classes up to ell=6") {
    for (int ell = 1; ell <= 6; ++ell)
      for (const auto& c : enumerate_classes(ell)) {
        CAPTURE(perm_to_string(c.canonical));
        BtRep bt = bt_generic(c.canonical);
        CHECK(bt.sigma == c.canonical);
        CHECK(is_longest_in_bt(bt));
        check_structure(bt);
        if (ell <= 5) check_structure(bt_generic(c.canonical, 3, 2));
      }
  }

  TEST_CASE("color swaps give valid representations") {
    // Swapping an embedded IBB inverts its local order; these two classes map onto each other.
    const std::set<std::pair<Perm, Perm>> frozen_class_changes = {
        {{1, 6, 3, 5, 4, 2}, {1, 6, 4, 3, 5, 2}},
        {{1, 6, 4, 3, 5, 2}, {1, 6, 3, 5, 4, 2}},
    };
    std::set<std::pair<Perm, Perm>> changes;
    for (int ell = 1; ell <= 6; ++ell)
      for (const auto& c : enumerate_classes(ell)) {
        BtRep bt = bt_generic(c.canonical);
        BlockTree t = block_decomposition(bt);
        for (std::size_t b = 0; b < t.blocks.size(); ++b) {
          CAPTURE(perm_to_string(c.canonical));
          CAPTURE(b);
          for (const Derived& d : {swap_block(bt, t, static_cast<int>(b)), swap_esu(bt, t, static_cast<int>(b))}) {
            CHECK(d.bt.ell == bt.ell);
            CHECK(d.bt.length_p == bt.length_p);
            CHECK(d.bt.length_q == bt.length_q);
            CHECK(is_longest_in_bt(d.bt));
            std::multiset<std::pair<int, int>> mapped;
            for (auto [u, v] : edge_multiset(bt)) {
              int a = d.old_to_new[u], z = d.old_to_new[v];
              mapped.insert({std::min(a, z), std::max(a, z)});
            }
            CHECK(mapped == edge_multiset(d.bt));
            for (int v = 0; v < bt.ell; ++v) CHECK(d.old_to_new[v] < d.bt.ell);
            check_structure(d.bt);
          }
          Derived whole = swap_block(bt, t, static_cast<int>(b));
          if (canonical_form(whole.bt.sigma).canonical != c.canonical)
            changes.insert({c.canonical, canonical_form(whole.bt.sigma).canonical});
        }
      }
    CHECK(changes == frozen_class_changes);
  }

  TEST_CASE("swapping everything exchanges the paths") {
    BtRep bt = bt_generic({2, 4, 1, 5, 3});
    std::vector<int> all(bt.comps.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    Derived d = swap_components(bt, all);
    CHECK(canonical_form(d.bt.sigma).canonical == canonical_form(inverse(bt.sigma)).canonical);
    CHECK_THROWS_AS(swap_components(bt, {bt.comp_id(Color::P, 1)}), BtError);
  }

  TEST_CASE("length validation") {
    CHECK_NOTHROW(bt_generic({2, 4, 1, 3}, 3, 2));
    CHECK_NOTHROW(bt_generic({2, 4, 1, 3}, 3, 1));
    GenericLengths L = default_lengths(4);
    L.p[1] = 3;
    CHECK_THROWS_AS(bt_generic({2, 4, 1, 3}, L), BtError);
    BtRep raw = bt_build_unchecked({2, 4, 1, 3}, L);
    CHECK_FALSE(is_longest_in_bt(raw));
    CHECK_FALSE(block_decomposition(raw).violations.empty());
    L = default_lengths(4);
    L.p[2] = 0;
    CHECK_THROWS_AS(bt_generic({2, 4, 1, 3}, L), BtError);
    L = default_lengths(4);
    L.q.pop_back();
    CHECK_THROWS_AS(bt_generic({2, 4, 1, 3}, L), BtError);
    CHECK_THROWS_AS(bt_generic({1, 1, 3}), BtError);
  }

  TEST_CASE("representations of concrete paths") {
    Graph g = path_graph(5);
    BtRep same = bt_from_paths(g, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
    CHECK(same.ell == 5);
    CHECK(same.sigma == identity_perm(5));
    CHECK(same.edge_count() == 8);
    for (const auto& c : same.comps) CHECK(c.empty());

    BtRep rev = bt_from_paths(g, {0, 1, 2, 3, 4}, {4, 3, 2, 1, 0});
    CHECK(rev.sigma == Perm{5, 4, 3, 2, 1});

    Graph cross(5);
    for (int v = 1; v < 5; ++v) cross.add_edge(0, v);
    BtRep x = bt_from_paths(cross, {1, 0, 2}, {3, 0, 4});
    CHECK(x.ell == 1);
    int extremal = 0;
    for (const auto& c : x.comps) extremal += c.extremal && !c.empty();
    CHECK(extremal == 4);

    CHECK_THROWS_AS(bt_from_paths(g, {0, 1, 2}, {0, 1, 2, 3}), BtError);
    CHECK_THROWS_AS(bt_from_paths(g, {0, 2}, {0, 1}), BtError);
    CHECK_THROWS_AS(bt_from_sequences({0, 1}, {2, 3}), BtError);
    CHECK_THROWS_AS(bt_from_sequences({0, 1, 0}, {0, 1}), BtError);
  }

  TEST_CASE("intro fixture representation") {
    const Fixture& f = intro_fixture();
    FixtureCheck c = check_fixture(f);
    REQUIRE(c.ok);
    BtRep bt = bt_from_paths(f.graph, c.p, c.q);
    CHECK(bt.ell == 9);
    VertexSet inter = 0;
    for (int v = 0; v < bt.ell; ++v) inter |= bit(bt.host_vertex[v]);
    CHECK(popcount(inter) == 9);
    CHECK_FALSE(is_separator(f.graph, inter));
    BlockTree t = block_decomposition(bt);
    CHECK(t.violations.empty());
    CHECK(t.blocks.size() == 6);
  }

  TEST_CASE("longest paths of the representation") {
    CHECK(bt_longest_path(bt_generic(identity_perm(3))) == 6);
    CHECK(is_longest_in_bt(bt_generic({2, 4, 1, 3})));
  }

  TEST_CASE("stretching") {
    BtRep bt = bt_generic({2, 4, 1, 3});
    Derived one = stretch(bt, std::vector<int>(bt.edge_count(), 1));
    CHECK(one.bt.edge_count() == bt.edge_count());
    CHECK(one.bt.sigma == bt.sigma);

    std::vector<int> len(bt.edge_count(), 3);
    Derived d = stretch(bt, len);
    CHECK(d.bt.length_p == 3 * bt.length_p);
    CHECK(d.bt.sigma == bt.sigma);
    // A path may now stop inside an unused chain, so the traced pair is no longer longest.
    CHECK(bt_longest_path(d.bt) == longest_path_length(d.bt.host.simple()));
    CHECK(bt_longest_path(d.bt) == 28);
    CHECK_FALSE(is_longest_in_bt(d.bt));
    CHECK(d.old_to_new.size() == static_cast<std::size_t>(bt.host.n()));
    for (int v = 0; v < bt.ell; ++v) CHECK(d.old_to_new[v] == v);

    CHECK_THROWS_AS(stretch(bt, {1, 2}), BtError);
    len[0] = 0;
    CHECK_THROWS_AS(stretch(bt, len), BtError);
  }

  TEST_CASE("block kind names") {
    CHECK(std::string(to_string(BlockKind::ElementaryIBB)) == "elementary IBB");
    CHECK(std::string(to_string(BlockKind::WholeBB)) == "BB");
  }
}
