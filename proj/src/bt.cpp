#include "bitrace/bt.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bitrace {

EdgeSet BtRep::all_edges() const {
  int m = edge_count();
  return m >= 64 ? ~EdgeSet{0} : ebit(m) - 1;
}

EdgeSet BtRep::comp_edges(int c) const {
  EdgeSet s = 0;
  for (int e : comps[c].edges) s |= ebit(e);
  return s;
}

std::vector<int> BtRep::nonempty(Color c) const {
  std::vector<int> out;
  for (int i = 0; i <= ell; ++i)
    if (!comp(c, i).empty()) out.push_back(comp_id(c, i));
  return out;
}

GenericLengths default_lengths(int ell, int internal, int extremal) {
  GenericLengths l;
  l.p.assign(ell + 1, internal);
  l.p.front() = l.p.back() = extremal;
  l.q = l.p;
  return l;
}

namespace {

void split_components(BtRep& bt, const Path& seq, Color color, const std::vector<int>& edge_ids) {
  int ell = bt.ell;
  std::vector<int> cut;
  for (std::size_t k = 0; k < seq.size(); ++k)
    if (seq[k] < ell) cut.push_back(static_cast<int>(k));
  auto make = [&](int index, int from, int to, bool extremal) {
    Component c;
    c.color = color;
    c.index = index;
    c.extremal = extremal;
    for (int k = from; k <= to; ++k) {
      c.verts.push_back(seq[k]);
      if (seq[k] >= ell) c.interior.push_back(seq[k]);
      if (k < to) c.edges.push_back(edge_ids[k]);
    }
    c.length = to - from;
    return c;
  };
  int last = static_cast<int>(seq.size()) - 1;
  bt.comps.push_back(make(0, 0, cut.front(), true));
  for (int i = 1; i < ell; ++i) bt.comps.push_back(make(i, cut[i - 1], cut[i], false));
  bt.comps.push_back(make(ell, cut.back(), last, true));
}

}  // namespace

BtRep bt_from_sequences(const Path& p, const Path& q, const std::vector<int>& host) {
  std::set<int> in_p(p.begin(), p.end()), in_q(q.begin(), q.end());
  if (in_p.size() != p.size() || in_q.size() != q.size()) throw BtError("sequence repeats a vertex");
  std::map<int, int> local;
  int ell = 0;
  for (int v : p)
    if (in_q.count(v)) local[v] = ell++;
  if (!ell) throw BtError("paths do not intersect");
  int next = ell;
  for (int v : p)
    if (!local.count(v)) local[v] = next++;
  for (int v : q)
    if (!local.count(v)) local[v] = next++;
  if (next > 64) throw BtError("representation exceeds 64 vertices");

  BtRep bt;
  bt.ell = ell;
  bt.host = MultiGraph(next);
  for (int v : p) bt.p_path.push_back(local[v]);
  for (int v : q) bt.q_path.push_back(local[v]);
  bt.host_vertex.assign(next, -1);
  for (auto [v, id] : local) bt.host_vertex[id] = host.empty() ? v : host[v];
  std::vector<int> pe, qe;
  for (std::size_t k = 0; k + 1 < bt.p_path.size(); ++k) pe.push_back(bt.host.add_edge(bt.p_path[k], bt.p_path[k + 1], Color::P));
  for (std::size_t k = 0; k + 1 < bt.q_path.size(); ++k) qe.push_back(bt.host.add_edge(bt.q_path[k], bt.q_path[k + 1], Color::Q));
  if (bt.edge_count() > 64) throw BtError("representation exceeds 64 edges");
  bt.length_p = static_cast<int>(pe.size());
  bt.length_q = static_cast<int>(qe.size());
  for (int v : bt.q_path)
    if (v < ell) bt.sigma.push_back(v + 1);
  split_components(bt, bt.p_path, Color::P, pe);
  split_components(bt, bt.q_path, Color::Q, qe);
  bt.edge_comp.assign(bt.edge_count(), -1);
  for (std::size_t c = 0; c < bt.comps.size(); ++c)
    for (int e : bt.comps[c].edges) bt.edge_comp[e] = static_cast<int>(c);
  return bt;
}

BtRep bt_from_paths(const Graph& g, const Path& p, const Path& q) {
  if (!is_valid_path(g, p) || !is_valid_path(g, q)) throw BtError("not a path of the graph");
  if (path_length(p) != path_length(q)) throw BtError("paths of different length");
  return bt_from_sequences(p, q);
}

BtRep bt_build_unchecked(const Perm& sigma, const GenericLengths& len) {
  int ell = static_cast<int>(sigma.size());
  if (!is_permutation(sigma)) throw BtError("not a permutation");
  if (static_cast<int>(len.p.size()) != ell + 1 || static_cast<int>(len.q.size()) != ell + 1)
    throw BtError("need ell+1 lengths per color");
  int fresh = ell;
  auto seq = [&](const std::vector<int>& lens, auto at) {
    Path s;
    for (int i = 0; i <= ell; ++i) {
      bool extremal = i == 0 || i == ell;
      if (extremal ? lens[i] < 0 : lens[i] < 1) throw BtError("component length out of range");
      int extra = extremal ? lens[i] : lens[i] - 1;
      if (i > 0) s.push_back(at(i));
      for (int k = 0; k < extra; ++k) s.push_back(fresh++);
    }
    return s;
  };
  Path p = seq(len.p, [](int i) { return i - 1; });
  Path q = seq(len.q, [&](int j) { return sigma[j - 1] - 1; });
  BtRep bt = bt_from_sequences(p, q);
  bt.host_vertex.assign(bt.host.n(), -1);
  return bt;
}

BtRep bt_generic(const Perm& sigma, const GenericLengths& lengths) {
  BtRep bt = bt_build_unchecked(sigma, lengths);
  BlockTree tree = block_decomposition(bt);
  if (!tree.violations.empty()) throw BtError("invalid lengths: " + tree.violations.front());
  return bt;
}

BtRep bt_generic(const Perm& sigma, int internal, int extremal) {
  return bt_generic(sigma, default_lengths(static_cast<int>(sigma.size()), internal, extremal));
}

int bt_longest_path(const BtRep& bt) { return longest_path_length(bt.host.simple()); }

bool is_longest_in_bt(const BtRep& bt) {
  return bt.length_p == bt.length_q && bt_longest_path(bt) == bt.length_p;
}

Derived stretch(const BtRep& bt, const std::vector<int>& edge_len) {
  if (static_cast<int>(edge_len.size()) != bt.edge_count()) throw BtError("one length per edge required");
  int fresh = bt.host.n();
  auto expand = [&](const Path& s, int first_edge) {
    Path out;
    for (std::size_t k = 0; k < s.size(); ++k) {
      out.push_back(s[k]);
      if (k + 1 == s.size()) break;
      int len = edge_len[first_edge + k];
      if (len < 1) throw BtError("edge length must be positive");
      for (int t = 1; t < len; ++t) out.push_back(fresh++);
    }
    return out;
  };
  Path p = expand(bt.p_path, 0);
  Path q = expand(bt.q_path, bt.length_p);
  Derived r{bt_from_sequences(p, q), {}};
  r.old_to_new.assign(bt.host.n(), -1);
  for (int v = 0; v < r.bt.host.n(); ++v) {
    int old = r.bt.host_vertex[v];
    if (old < bt.host.n()) r.old_to_new[old] = v;
    r.bt.host_vertex[v] = old < bt.host.n() ? bt.host_vertex[old] : -1;
  }
  return r;
}

const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::IBB: return "IBB";
    case BlockKind::ElementaryIBB: return "elementary IBB";
    case BlockKind::EBB: return "EBB";
    case BlockKind::ElementaryEBB: return "elementary EBB";
    case BlockKind::WholeBB: return "BB";
  }
  return "?";
}

BlockTree block_decomposition(const BtRep& bt) {
  const int l = bt.ell;
  // Intersection labels 1..l: P visits them in order, Q in sigma order.
  std::vector<int> posQ(l + 1);
  for (int k = 1; k <= l; ++k) posQ[bt.sigma[k - 1]] = k;
  auto qset = [&](int lo, int hi) {
    std::uint64_t s = 0;
    for (int k = lo; k <= hi; ++k) s |= std::uint64_t{1} << bt.sigma[k - 1];
    return s;
  };
  auto pset = [](int lo, int hi) {
    std::uint64_t s = 0;
    for (int k = lo; k <= hi; ++k) s |= std::uint64_t{1} << k;
    return s;
  };
  auto common = [&](int i, int j) {
    int lo = std::min(posQ[i], posQ[j]), hi = std::max(posQ[i], posQ[j]);
    return pset(i, j) == qset(lo, hi);
  };

  enum class Orient { None, Pre, Suf } orient = Orient::None;
  std::vector<int> splits;
  for (int i = 1; i <= l; ++i) {
    int k = posQ[i];
    bool pre = pset(1, i) == qset(1, k);
    bool suf = pset(1, i) == qset(k, l);
    if (orient == Orient::None && (pre || suf)) orient = pre ? Orient::Pre : Orient::Suf;
    if ((orient == Orient::Pre && pre) || (orient == Orient::Suf && suf)) splits.push_back(i);
  }

  struct Raw {
    BlockKind kind;
    std::vector<int> ends;
    std::vector<int> comps;
    bool top;
  };
  std::vector<Raw> raw;
  auto P = [&](int i) { return bt.comp_id(Color::P, i); };
  auto Q = [&](int i) { return bt.comp_id(Color::Q, i); };

  std::vector<Raw> ibbs;
  for (int i = 1; i <= l; ++i)
    for (int j = i + 1; j <= l; ++j) {
      if (!common(i, j)) continue;
      bool two_connected = true;
      for (int m = i + 1; m < j && two_connected; ++m)
        if (common(i, m)) two_connected = false;
      if (!two_connected) continue;
      Raw r{BlockKind::IBB, {i - 1, j - 1}, {}, false};
      for (int t = i; t < j; ++t) r.comps.push_back(P(t));
      int lo = std::min(posQ[i], posQ[j]), hi = std::max(posQ[i], posQ[j]);
      for (int t = lo; t < hi; ++t) r.comps.push_back(Q(t));
      ibbs.push_back(std::move(r));
    }

  auto free_end = [&](int c) {
    const Component& x = bt.comps[c];
    return x.index == 0 ? x.verts.front() : x.verts.back();
  };
  auto qside = [&](int k, bool left) {
    std::vector<int> out;
    bool low = (orient == Orient::Pre) == left;
    for (int t = low ? 0 : k; t <= (low ? k - 1 : l); ++t) out.push_back(Q(t));
    return out;
  };
  auto add_end_piece = [&](std::vector<int> pc, std::vector<int> qc, int cut) {
    int pend = -1, qend = -1;
    for (int c : pc)
      if (bt.comps[c].extremal) pend = free_end(c);
    for (int c : qc)
      if (bt.comps[c].extremal) qend = free_end(c);
    Raw r{BlockKind::EBB, {cut, pend, qend}, pc, true};
    r.comps.insert(r.comps.end(), qc.begin(), qc.end());
    if (pend == qend) {
      r.kind = BlockKind::IBB;
      r.ends = {cut, pend};
    } else if (cut == pend || cut == qend) {
      r.kind = BlockKind::WholeBB;
      std::set<int> e{cut, pend, qend};
      r.ends.assign(e.begin(), e.end());
    }
    raw.push_back(std::move(r));
  };

  if (splits.empty()) {
    Raw r{BlockKind::WholeBB, {}, {}, true};
    for (int i = 0; i <= l; ++i) r.comps.push_back(P(i));
    for (int i = 0; i <= l; ++i) r.comps.push_back(Q(i));
    std::set<int> e{bt.p_path.front(), bt.p_path.back(), bt.q_path.front(), bt.q_path.back()};
    r.ends.assign(e.begin(), e.end());
    raw.push_back(std::move(r));
  } else {
    int s0 = splits.front(), s1 = splits.back();
    std::vector<int> pc;
    for (int t = 0; t < s0; ++t) pc.push_back(P(t));
    add_end_piece(pc, qside(posQ[s0], true), s0 - 1);
    for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
      int u = splits[k], v = splits[k + 1];
      Raw r{BlockKind::IBB, {u - 1, v - 1}, {}, true};
      for (int t = u; t < v; ++t) r.comps.push_back(P(t));
      int lo = std::min(posQ[u], posQ[v]), hi = std::max(posQ[u], posQ[v]);
      for (int t = lo; t < hi; ++t) r.comps.push_back(Q(t));
      raw.push_back(std::move(r));
    }
    pc.clear();
    for (int t = s1; t <= l; ++t) pc.push_back(P(t));
    add_end_piece(pc, qside(posQ[s1], false), s1 - 1);
  }

  auto total_length = [&](const std::vector<int>& cs) {
    int s = 0;
    for (int c : cs) s += bt.comps[c].length;
    return s;
  };
  auto as_set = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };

  BlockTree tree;
  std::set<std::vector<int>> seen;
  for (auto& r : raw) {
    if (total_length(r.comps) == 0) continue;
    Block b;
    b.kind = r.kind;
    b.ends = r.ends;
    b.comps = as_set(r.comps);
    b.top = true;
    seen.insert(b.comps);
    tree.blocks.push_back(std::move(b));
  }
  for (auto& r : ibbs) {
    auto cs = as_set(r.comps);
    if (seen.count(cs)) continue;
    seen.insert(cs);
    Block b;
    b.kind = BlockKind::IBB;
    b.ends = r.ends;
    b.comps = cs;
    tree.blocks.push_back(std::move(b));
  }

  auto strictly_inside = [](const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  int nb = static_cast<int>(tree.blocks.size());
  for (int i = 0; i < nb; ++i) {
    Block& b = tree.blocks[i];
    for (int j = 0; j < nb; ++j) {
      const Block& e = tree.blocks[j];
      if (e.top || !strictly_inside(e.comps, b.comps)) continue;
      b.embedded.push_back(j);
    }
    std::set<int> inner;
    for (int j : b.embedded) inner.insert(tree.blocks[j].comps.begin(), tree.blocks[j].comps.end());
    for (int c : b.comps)
      if (!inner.count(c)) b.esu.push_back(c);
    for (int c : b.comps) (bt.comps[c].color == Color::P ? b.length_p : b.length_q) += bt.comps[c].length;
  }
  for (int i = 0; i < nb; ++i) {
    Block& b = tree.blocks[i];
    std::size_t best = SIZE_MAX;
    for (int j = 0; j < nb; ++j)
      if (j != i && strictly_inside(b.comps, tree.blocks[j].comps) && tree.blocks[j].comps.size() < best) {
        best = tree.blocks[j].comps.size();
        b.parent = j;
      }
    if (b.comps.size() == 2) {
      if (b.kind == BlockKind::IBB) b.kind = BlockKind::ElementaryIBB;
      if (b.kind == BlockKind::EBB) b.kind = BlockKind::ElementaryEBB;
    }
  }

  tree.esu_of_comp.assign(bt.comps.size(), -1);
  for (int i = 0; i < nb; ++i)
    for (int c : tree.blocks[i].esu) {
      if (tree.esu_of_comp[c] >= 0) tree.violations.push_back("component " + bt.comps[c].name() + " in two ESUs");
      tree.esu_of_comp[c] = i;
    }
  for (std::size_t c = 0; c < bt.comps.size(); ++c)
    if (tree.esu_of_comp[c] < 0 && bt.comps[c].length > 0)
      tree.violations.push_back("component " + bt.comps[c].name() + " in no ESU");
  for (int i = 0; i < nb; ++i) {
    const Block& b = tree.blocks[i];
    int sp = 0, sq = 0, np = 0, nq = 0;
    for (int c : b.esu) {
      if (bt.comps[c].color == Color::P) {
        sp += bt.comps[c].length;
        ++np;
      } else {
        sq += bt.comps[c].length;
        ++nq;
      }
    }
    if (sp != sq) tree.violations.push_back("ESU of block " + std::to_string(i) + " has color sums " + std::to_string(sp) + " and " + std::to_string(sq));
    if (np != nq) tree.violations.push_back("ESU of block " + std::to_string(i) + " has unequal component counts");
    if (b.length_p != b.length_q) tree.violations.push_back("block " + std::to_string(i) + " has unequal spans");
  }
  return tree;
}

Derived swap_esu(const BtRep& bt, const BlockTree& tree, int b) {
  return swap_components(bt, tree.blocks[b].esu);
}

Derived swap_block(const BtRep& bt, const BlockTree& tree, int b) {
  return swap_components(bt, tree.blocks[b].comps);
}

Derived swap_components(const BtRep& bt, const std::vector<int>& comps) {
  std::set<int> swapped(comps.begin(), comps.end());
  int n = bt.host.n();
  std::vector<std::vector<int>> adj[2];
  adj[0].assign(n, {});
  adj[1].assign(n, {});
  for (int e = 0; e < bt.edge_count(); ++e) {
    const auto& ed = bt.host.edges()[e];
    int c = ed.color == Color::P ? 0 : 1;
    if (swapped.count(bt.edge_comp[e])) c ^= 1;
    adj[c][ed.u].push_back(ed.v);
    adj[c][ed.v].push_back(ed.u);
  }
  auto walk = [&](int c, int preferred) {
    int start = -1;
    if (adj[c][preferred].size() == 1) start = preferred;
    for (int v = 0; v < n && start < 0; ++v)
      if (adj[c][v].size() == 1) start = v;
    if (start < 0) start = preferred;
    Path s{start};
    std::vector<bool> seen(n, false);
    seen[start] = true;
    int prev = -1, cur = start;
    while (true) {
      int nxt = -1;
      for (int w : adj[c][cur])
        if (w != prev) nxt = w;
      if (nxt < 0 || seen[nxt]) break;
      seen[nxt] = true;
      s.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    std::size_t half_degree = 0;
    for (int v = 0; v < n; ++v) half_degree += adj[c][v].size();
    if (2 * static_cast<std::size_t>(path_length(s)) != half_degree)
      throw BtError("color swap does not leave two paths");
    return s;
  };
  Path p = walk(0, bt.p_path.front());
  Path q = walk(1, bt.q_path.front());
  Derived out{bt_from_sequences(p, q), std::vector<int>(n, -1)};
  for (int v = 0; v < out.bt.host.n(); ++v) {
    int old = out.bt.host_vertex[v];
    out.old_to_new[old] = v;
    out.bt.host_vertex[v] = bt.host_vertex[old];
  }
  return out;
}

std::string describe(const BtRep& bt, const BlockTree& tree) {
  std::ostringstream os;
  for (std::size_t i = 0; i < tree.blocks.size(); ++i) {
    const Block& b = tree.blocks[i];
    os << i << ": " << to_string(b.kind) << (b.top ? "" : " (embedded)") << " comps=" << b.comps.size()
       << " esu={";
    for (std::size_t k = 0; k < b.esu.size(); ++k) os << (k ? "," : "") << bt.comps[b.esu[k]].name();
    os << "} embedded=" << b.embedded.size() << "\n";
  }
  return os.str();
}

}  // namespace bitrace
