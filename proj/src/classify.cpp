#include "bitrace/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "packing_lp.hpp"

namespace bitrace {

const char* to_string(PairStatus s) {
  switch (s) {
    case PairStatus::AdjacentNDC: return "AdjacentNDC";
    case PairStatus::ExtremalNDC: return "ExtremalNDC";
    case PairStatus::NdcByOracle: return "NdcByOracle";
    case PairStatus::LNC: return "LNC";
    case PairStatus::WNDC: return "WNDC";
    case PairStatus::NotClassified: return "NotClassified";
  }
  return "?";
}

bool is_ndc(PairStatus s) {
  return s == PairStatus::AdjacentNDC || s == PairStatus::ExtremalNDC || s == PairStatus::NdcByOracle;
}

const char* to_string(BtVerdict v) {
  switch (v) {
    case BtVerdict::AllLNC: return "AllLNC";
    case BtVerdict::TD: return "TD";
    case BtVerdict::WD: return "WD";
    case BtVerdict::Exceptional: return "Exceptional";
    case BtVerdict::Mixed: return "Mixed";
  }
  return "?";
}

namespace {

struct Adj {
  std::vector<std::vector<std::pair<int, int>>> nb;  // (neighbor, edge id)
};

Adj bt_adj(const BtRep& bt, EdgeSet allowed) {
  Adj a;
  a.nb.resize(bt.host.n());
  const auto& es = bt.host.edges();
  for (int e = 0; e < static_cast<int>(es.size()); ++e)
    if ((allowed >> e) & 1) {
      a.nb[es[e].u].push_back({es[e].v, e});
      a.nb[es[e].v].push_back({es[e].u, e});
    }
  return a;
}

struct HalfPath {
  Path seq;
  VertexSet verts = 0;
  EdgeSet edges = 0;
};

// Every simple path from src, trivial one included, accepted by keep(end, edges).
template <class Keep>
std::vector<HalfPath> half_paths(const Adj& a, int src, Keep keep) {
  std::vector<HalfPath> out;
  HalfPath cur;
  cur.seq = {src};
  cur.verts = bit(src);
  auto dfs = [&](auto&& self, int v) -> void {
    if (keep(v, cur.edges)) out.push_back(cur);
    for (auto [w, e] : a.nb[v]) {
      if ((cur.verts >> w) & 1) continue;
      cur.seq.push_back(w);
      cur.verts |= bit(w);
      cur.edges |= ebit(e);
      self(self, w);
      cur.seq.pop_back();
      cur.verts &= ~bit(w);
      cur.edges &= ~ebit(e);
    }
  };
  dfs(dfs, src);
  std::sort(out.begin(), out.end(), [](const HalfPath& p, const HalfPath& q) {
    return p.seq != q.seq ? p.seq < q.seq : p.edges < q.edges;
  });
  return out;
}

auto keep_all = [](int, EdgeSet) { return true; };

std::vector<EdgeSet> maximal(std::vector<EdgeSet> masks) {
  std::sort(masks.begin(), masks.end(), [](EdgeSet a, EdgeSet b) {
    return popcount(a) != popcount(b) ? popcount(a) > popcount(b) : a < b;
  });
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<EdgeSet> keep;
  for (EdgeSet m : masks)
    if (std::none_of(keep.begin(), keep.end(), [&](EdgeSet k) { return (m & k) == m; })) keep.push_back(m);
  return keep;
}

bool two_cover(const std::vector<EdgeSet>& a, const std::vector<EdgeSet>& b, EdgeSet target) {
  for (EdgeSet m1 : a)
    for (EdgeSet m2 : b)
      if (((m1 | m2) & target) == target) return true;
  return false;
}

struct Hit {
  std::pair<int, int> first;
  std::pair<int, int> second;
};

// Two disjoint half pairs whose edges cover target; lexicographically smallest first.
template <class Ok>
std::optional<Hit> find_cover(const std::vector<HalfPath>& xs, const std::vector<HalfPath>& ys, EdgeSet target, Ok ok) {
  std::unordered_map<EdgeSet, std::pair<int, int>> first;
  std::vector<EdgeSet> order;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i)
    for (int j = 0; j < static_cast<int>(ys.size()); ++j) {
      if (xs[i].verts & ys[j].verts) continue;
      if (!ok(xs[i], ys[j])) continue;
      EdgeSet m = (xs[i].edges | ys[j].edges) & target;
      if (first.try_emplace(m, i, j).second) order.push_back(m);
    }
  auto top = maximal(order);
  if (!two_cover(top, top, target)) return std::nullopt;
  for (EdgeSet m : order) {
    EdgeSet need = target & ~m;
    for (EdgeSet m2 : order)
      if ((m2 & need) == need) return Hit{first[m], first[m2]};
  }
  return std::nullopt;
}

std::vector<EdgeSet> pair_masks(const std::vector<HalfPath>& xs, const std::vector<HalfPath>& ys) {
  std::unordered_set<EdgeSet> seen;
  for (const auto& p : xs)
    for (const auto& q : ys)
      if (!(p.verts & q.verts)) seen.insert(p.edges | q.edges);
  return maximal({seen.begin(), seen.end()});
}

void check_attachment(const BtRep& bt, int x, int y) {
  int n = bt.host.n();
  if (x < 0 || y < 0 || x >= n || y >= n) throw std::invalid_argument("attachment endpoint out of range");
  if (x < bt.ell || y < bt.ell) throw std::invalid_argument("attachment endpoint inside intersection set");
  if (x == y) throw std::invalid_argument("attachment endpoints coincide");
}

void check_cross_pair(const BtRep& bt, int X, int Y) {
  int nc = static_cast<int>(bt.comps.size());
  if (X < 0 || Y < 0 || X >= nc || Y >= nc) throw std::invalid_argument("component out of range");
  if (bt.comps[X].color == bt.comps[Y].color) throw std::invalid_argument("components share a color");
  if (bt.comps[X].empty() || bt.comps[Y].empty()) throw std::invalid_argument("reduced component is empty");
}

HalfPair to_pair(const HalfPath& a, const HalfPath& b) { return {a.seq, b.seq, a.edges, b.edges}; }

long long weight_of(EdgeSet s, const std::vector<long long>& w) {
  long long t = 0;
  for (; s; s &= s - 1) t += w[__builtin_ctzll(s)];
  return t;
}

std::string pair_name(const BtRep& bt, int X, int Y) { return bt.comps[X].name() + "~" + bt.comps[Y].name(); }

}  // namespace

OracleResult ndc_oracle_weighted(const BtRep& bt, const Attachment& att, const std::vector<long long>& weights,
                                 bool inner_ends) {
  check_attachment(bt, att.x, att.y);
  if (att.r_length < 1) throw std::invalid_argument("R must have positive length");
  int m = bt.edge_count();
  std::vector<long long> w = weights.empty() ? std::vector<long long>(m, 1) : weights;
  if (static_cast<int>(w.size()) != m) throw std::invalid_argument("one weight per edge required");
  for (long long x : w)
    if (x < 1) throw std::invalid_argument("edge weights must be positive");
  Adj adj = bt_adj(bt, bt.all_edges());

  // An edge of weight w is a chain with w - 1 inner vertices; a path may stop inside an unused chain.
  struct Tail {
    long long gain[2] = {0, 0};
    int edge[2] = {-1, -1};
  };
  auto tail = [&](int v, int except) {
    Tail t;
    if (!inner_ends) return t;
    for (auto [u, e] : adj.nb[v]) {
      if (e == except) continue;
      long long g = w[e] - 1;
      if (g > t.gain[0]) {
        t.gain[1] = t.gain[0];
        t.edge[1] = t.edge[0];
        t.gain[0] = g;
        t.edge[0] = e;
      } else if (g > t.gain[1]) {
        t.gain[1] = g;
        t.edge[1] = e;
      }
    }
    return t;
  };
  auto both_tails = [&](const Tail& a, const Tail& b) {
    long long best = std::max(a.gain[0], b.gain[0]);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (a.edge[i] < 0 || b.edge[j] < 0) continue;
        if (a.edge[i] != b.edge[j])
          best = std::max(best, a.gain[i] + b.gain[j]);
        else
          best = std::max(best, w[a.edge[i]] - 2);
      }
    return best;
  };

  OracleResult r;
  auto xs = half_paths(adj, att.x, [&](int, EdgeSet) { return true; });
  r.best_disjoint = -1;
  for (const auto& p : xs) {
    if ((p.verts >> att.y) & 1) continue;
    int vx = p.seq.back(), lx = -1;
    for (auto [u, e] : adj.nb[vx])
      if ((p.edges >> e) & 1) lx = e;
    Tail tx = tail(vx, lx);
    long long wx = weight_of(p.edges, w);
    Path cur{att.y};
    auto dfs = [&](auto&& self, int v, int last, VertexSet used, long long len) -> void {
      long long tot = wx + len + both_tails(tx, tail(v, last));
      if (tot > r.best_disjoint) {
        r.best_disjoint = tot;
        r.witness = {p.seq, cur, p.edges, 0};
      }
      for (auto [u, e] : adj.nb[v]) {
        if ((used >> u) & 1) continue;
        cur.push_back(u);
        self(self, u, e, used | bit(u), len + w[e]);
        cur.pop_back();
      }
    };
    dfs(dfs, att.y, -1, p.verts | bit(att.y), 0);
  }
  for (std::size_t i = 1; i < r.witness.from_y.size(); ++i)
    for (auto [u, e] : adj.nb[r.witness.from_y[i - 1]])
      if (u == r.witness.from_y[i] && !((r.witness.y_edges >> e) & 1)) {
        r.witness.y_edges |= ebit(e);
        break;
      }

  for (int v = 0; v < bt.host.n(); ++v) {
    auto dfs = [&](auto&& self, int u, int first, int last, VertexSet used, long long len) -> void {
      long long g = first < 0 ? both_tails(tail(v, -1), tail(v, -1)) : both_tails(tail(v, first), tail(u, last));
      r.longest_bt = std::max(r.longest_bt, len + g);
      for (auto [t, e] : adj.nb[u])
        if (!((used >> t) & 1)) self(self, t, first < 0 ? e : first, e, used | bit(t), len + w[e]);
    };
    dfs(dfs, v, -1, -1, bit(v), 0);
  }

  long long total = std::accumulate(w.begin(), w.end(), 0LL);
  long long via_r = r.best_disjoint + att.r_length;
  r.rhs = total + 2 * att.r_length;
  for (auto [a, b] : {std::pair{via_r, via_r}, std::pair{via_r, r.longest_bt}, std::pair{r.longest_bt, r.longest_bt}})
    if (a + b > r.p_hat + r.q_hat) {
      r.p_hat = a;
      r.q_hat = b;
    }
  r.ndc = r.p_hat + r.q_hat >= r.rhs;
  return r;
}

bool ndc_oracle(const BtRep& bt, const Attachment& att) { return ndc_oracle_weighted(bt, att, {}, true).ndc; }

std::optional<Certificate> cover_certificate(const BtRep& bt, int x, int y) {
  check_attachment(bt, x, y);
  Adj adj = bt_adj(bt, bt.all_edges());
  auto xs = half_paths(adj, x, keep_all);
  auto ys = half_paths(adj, y, keep_all);
  auto hit = find_cover(xs, ys, bt.all_edges(), [](const HalfPath&, const HalfPath&) { return true; });
  if (!hit) return std::nullopt;
  Certificate c;
  c.x = x;
  c.y = y;
  c.first = to_pair(xs[hit->first.first], ys[hit->first.second]);
  c.second = to_pair(xs[hit->second.first], ys[hit->second.second]);
  c.p_hat = path_length(c.first.from_x) + path_length(c.first.from_y) + 1;
  c.q_hat = path_length(c.second.from_x) + path_length(c.second.from_y) + 1;
  c.rhs = bt.length_p + bt.length_q + 2;
  if (c.p_hat + c.q_hat < c.rhs) throw std::logic_error("cover certificate fails the length identity");
  return c;
}

GenericNdcResult generic_ndc(const BtRep& bt, int x, int y) {
  check_attachment(bt, x, y);
  int m = bt.edge_count();
  Adj adj = bt_adj(bt, bt.all_edges());
  auto rows = pair_masks(half_paths(adj, x, keep_all), half_paths(adj, y, keep_all));
  auto lp = detail::solve_packing(rows, m);
  GenericNdcResult out;
  using detail::Rational;
  if (lp.unbounded) {
    out.ndc = false;
    out.optimum = "unbounded";
  } else {
    out.ndc = lp.optimum <= 2;
    out.optimum = lp.optimum.str();
  }
  if (out.ndc) {
    Rational sum = 0;
    bool ok = true;
    for (const auto& u : lp.dual) {
      ok = ok && u >= 0;
      sum += u;
    }
    for (int e = 0; e < m && ok; ++e) {
      Rational cov = 0;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if ((rows[i] >> e) & 1) cov += lp.dual[i];
      ok = cov >= 1;
    }
    out.confirmed = ok && sum == lp.optimum;
    return out;
  }
  // A violation must survive paths that stop inside an unused chain, so each free end may add one edge.
  std::unordered_set<EdgeSet> ext;
  auto xs = half_paths(adj, x, keep_all);
  auto ys = half_paths(adj, y, keep_all);
  auto tails = [&](const HalfPath& h) {
    std::vector<EdgeSet> t;
    for (auto [u, e] : adj.nb[h.seq.back()])
      if (!((h.edges >> e) & 1)) t.push_back(ebit(e));
    if (t.empty()) t.push_back(0);
    return t;
  };
  std::vector<std::vector<EdgeSet>> ytails;
  for (const auto& q : ys) ytails.push_back(tails(q));
  for (const auto& p : xs) {
    auto tp = tails(p);
    for (std::size_t j = 0; j < ys.size(); ++j)
      if (!(p.verts & ys[j].verts))
        for (EdgeSet a : tp)
          for (EdgeSet b : ytails[j]) ext.insert(p.edges | ys[j].edges | a | b);
  }
  auto elp = detail::solve_packing(maximal({ext.begin(), ext.end()}), m);
  out.extended_optimum = elp.unbounded ? "unbounded" : elp.optimum.str();

  using boost::multiprecision::cpp_int;
  cpp_int d = 1;
  for (const auto& z : lp.primal) d = boost::multiprecision::lcm(d, boost::multiprecision::denominator(z));
  if (d > cpp_int(1) << 40) return out;
  long long k = m + 1;
  out.violating_weights.resize(m);
  for (int e = 0; e < m; ++e)
    out.violating_weights[e] =
        1 + k * static_cast<long long>(boost::multiprecision::numerator(Rational(lp.primal[e] * Rational(d))));
  out.r_length = std::accumulate(out.violating_weights.begin(), out.violating_weights.end(), 0LL) + 1;
  out.confirmed = !ndc_oracle_weighted(bt, {x, y, out.r_length}, out.violating_weights, false).ndc;
  return out;
}

bool components_adjacent(const BtRep& bt, int X, int Y) {
  const auto& a = bt.comps[X].verts;
  const auto& b = bt.comps[Y].verts;
  return std::any_of(a.begin(), a.end(), [&](int v) { return std::find(b.begin(), b.end(), v) != b.end(); });
}

PairVerdict ndc_pair(const BtRep& bt, int X, int Y) {
  check_cross_pair(bt, X, Y);
  PairVerdict v;
  v.X = X;
  v.Y = Y;
  if (components_adjacent(bt, X, Y)) {
    v.status = PairStatus::AdjacentNDC;
    v.ndc = true;
    v.transcript.push_back(pair_name(bt, X, Y) + ": completed components share a vertex");
    return v;
  }
  if (bt.comps[X].extremal && bt.comps[Y].extremal) {
    v.status = PairStatus::ExtremalNDC;
    v.ndc = true;
    v.transcript.push_back(pair_name(bt, X, Y) + ": both components extremal");
    return v;
  }
  for (int x : bt.comps[X].interior)
    for (int y : bt.comps[Y].interior) {
      auto c = cover_certificate(bt, x, y);
      if (!c) {
        v.status = PairStatus::NotClassified;
        v.ndc = false;
        v.evidence.clear();
        v.transcript.push_back("attachment (" + std::to_string(x) + "," + std::to_string(y) + "): no two-pair cover");
        return v;
      }
      v.transcript.push_back("attachment (" + std::to_string(x) + "," + std::to_string(y) +
                             "): P-hat " + std::to_string(c->p_hat) + ", Q-hat " + std::to_string(c->q_hat) +
                             ", needed " + std::to_string(c->rhs));
      v.evidence.push_back(std::move(*c));
    }
  v.status = PairStatus::NdcByOracle;
  v.ndc = true;
  return v;
}

LncResult find_lnc_witness(const BtRep& bt, const BlockTree& tree, int block, int X, int Y) {
  check_cross_pair(bt, X, Y);
  if (block < 0 || block >= static_cast<int>(tree.blocks.size())) throw std::invalid_argument("block out of range");
  const Block& b = tree.blocks[block];
  auto in_esu = [&](int c) { return std::find(b.esu.begin(), b.esu.end(), c) != b.esu.end(); };
  if (!in_esu(X) || !in_esu(Y)) throw std::invalid_argument("pair not in the swap unit of the block");

  EdgeSet target = 0;
  for (int c : b.comps) target |= bt.comp_edges(c);
  VertexSet ends = 0;
  for (int e : b.ends) ends |= bit(e);
  std::vector<std::pair<EdgeSet, EdgeSet>> units;
  for (int j : b.embedded) {
    EdgeSet pm = 0, qm = 0;
    for (int c : tree.blocks[j].esu) (bt.comps[c].color == Color::P ? pm : qm) |= bt.comp_edges(c);
    units.push_back({pm, qm});
  }
  auto keep = [&](int v, EdgeSet es) {
    if (!((ends >> v) & 1)) return false;
    for (auto [pm, qm] : units) {
      EdgeSet s = es & (pm | qm);
      if (s && s != pm && s != qm) return false;
    }
    return true;
  };
  bool exterior = b.kind == BlockKind::EBB || b.kind == BlockKind::ElementaryEBB;
  int cut = b.ends.front();
  auto ok = [&](const HalfPath& p, const HalfPath& q) { return !exterior || p.seq.back() == cut || q.seq.back() == cut; };

  Adj adj = bt_adj(bt, target);
  LncResult r;
  long long outside = bt.length_p + bt.length_q - popcount(target);
  for (int x : bt.comps[X].interior)
    for (int y : bt.comps[Y].interior) {
      auto xs = half_paths(adj, x, keep);
      auto ys = half_paths(adj, y, keep);
      auto hit = find_cover(xs, ys, target, ok);
      if (!hit) {
        r.ok = false;
        r.fail_x = x;
        r.fail_y = y;
        r.witnesses.clear();
        return r;
      }
      LncWitness w;
      w.x = x;
      w.y = y;
      w.first = to_pair(xs[hit->first.first], ys[hit->first.second]);
      w.second = to_pair(xs[hit->second.first], ys[hit->second.second]);
      w.lhs = path_length(w.first.from_x) + path_length(w.first.from_y) + path_length(w.second.from_x) +
              path_length(w.second.from_y) + 2 + outside;
      w.rhs = bt.length_p + bt.length_q + 2;
      if (w.lhs < w.rhs) throw std::logic_error("LNC witness fails the length identity");
      r.witnesses.push_back(std::move(w));
    }
  r.ok = true;
  return r;
}

PairVerdict nc_check(const BtRep& bt, const BlockTree& tree, int X, int Y) {
  check_cross_pair(bt, X, Y);
  if (tree.blocks.size() == 1) {
    PairVerdict v = ndc_pair(bt, X, Y);
    v.note = "single swap unit";
    return v;
  }
  int bx = tree.esu_of_comp[X], by = tree.esu_of_comp[Y];
  if (bx >= 0 && bx == by) {
    LncResult l = find_lnc_witness(bt, tree, bx, X, Y);
    if (l.ok) {
      PairVerdict v;
      v.X = X;
      v.Y = Y;
      v.status = PairStatus::LNC;
      v.ndc = false;
      for (const auto& w : l.witnesses) {
        v.evidence.push_back({w.x, w.y, w.first, w.second,
                              path_length(w.first.from_x) + path_length(w.first.from_y) + 1,
                              path_length(w.second.from_x) + path_length(w.second.from_y) + 1, w.rhs});
        v.transcript.push_back("attachment (" + std::to_string(w.x) + "," + std::to_string(w.y) + "): local cover, total " +
                               std::to_string(w.lhs) + " against " + std::to_string(w.rhs));
      }
      return v;
    }
  }
  PairVerdict v = ndc_pair(bt, X, Y);
  if (v.status == PairStatus::NotClassified)
    v.note = bx == by ? "no local witness and no cover" : "components lie in different swap units";
  return v;
}

bool wndc(const BtRep& bt, int x, int y) {
  check_attachment(bt, x, y);
  Adj adj = bt_adj(bt, bt.all_edges());
  auto pairs = pair_masks(half_paths(adj, x, keep_all), half_paths(adj, y, keep_all));
  std::vector<EdgeSet> zs;
  for (const auto& z : half_paths(adj, x, [&](int v, EdgeSet) { return v == y; })) zs.push_back(z.edges);
  return two_cover(pairs, maximal(zs), bt.all_edges());
}

bool wd_check(const BtRep& bt, int X, int Y) {
  check_cross_pair(bt, X, Y);
  for (int x : bt.comps[X].interior)
    for (int y : bt.comps[Y].interior)
      if (!cover_certificate(bt, x, y) && !wndc(bt, x, y)) return false;
  return true;
}

BtClassification classify_bt(const BtRep& bt, bool pair_details) {
  BtClassification out;
  out.tree = block_decomposition(bt);
  if (!out.tree.violations.empty()) throw BtError("invalid representation: " + out.tree.violations.front());
  const auto& tree = out.tree;
  bool multi = tree.blocks.size() >= 2;

  std::map<std::pair<int, int>, bool> lnc;
  for (int b = 0; b < static_cast<int>(tree.blocks.size()); ++b)
    for (int X : tree.blocks[b].esu)
      for (int Y : tree.blocks[b].esu) {
        if (bt.comps[X].color != Color::P || bt.comps[Y].color != Color::Q) continue;
        if (bt.comps[X].empty() || bt.comps[Y].empty()) continue;
        bool ok = find_lnc_witness(bt, tree, b, X, Y).ok;
        lnc[{X, Y}] = ok;
        if (!ok) out.lnc_failures.push_back({X, Y});
      }
  bool all_lnc = out.lnc_failures.empty();
  if (all_lnc && multi) {
    out.verdict = BtVerdict::AllLNC;
    if (!pair_details) return out;
  }

  for (int X : bt.nonempty(Color::P))
    for (int Y : bt.nonempty(Color::Q)) {
      PairVerdict v = ndc_pair(bt, X, Y);
      if (!v.ndc) out.ndc_failures.push_back({X, Y});
      auto it = lnc.find({X, Y});
      if (multi && it != lnc.end() && it->second) {
        PairVerdict l = nc_check(bt, tree, X, Y);
        l.ndc = v.ndc;
        v = std::move(l);
      }
      out.pairs.push_back(std::move(v));
    }
  if (out.verdict == BtVerdict::AllLNC) {
    for (auto& v : out.pairs)
      if (v.status == PairStatus::NotClassified) v.note = "different swap units, each locally connected";
    return out;
  }
  if (out.ndc_failures.empty()) {
    out.verdict = BtVerdict::TD;
    return out;
  }
  bool weak = true;
  for (auto& v : out.pairs) {
    if (v.ndc || v.status == PairStatus::LNC) continue;
    if (wd_check(bt, v.X, v.Y)) {
      v.status = PairStatus::WNDC;
    } else {
      weak = false;
      v.note = tree.esu_of_comp[v.X] == tree.esu_of_comp[v.Y] ? "no local witness, no cover, no path-cycle cover"
                                                              : "different swap units, no cover";
    }
  }
  // A non-NDC pair that is only locally connected still blocks the weak verdict.
  for (const auto& v : out.pairs)
    if (!v.ndc && v.status == PairStatus::LNC && !wd_check(bt, v.X, v.Y)) weak = false;
  if (is_exceptional_class(bt.sigma))
    out.verdict = BtVerdict::Exceptional;
  else
    out.verdict = weak ? BtVerdict::WD : BtVerdict::Mixed;
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

// Two paths of BT + R-pieces covering every BT edge, at least one through a piece.
bool touch_certificate(const BtRep& bt, const std::vector<std::pair<int, int>>& pieces) {
  int n = bt.host.n(), m = bt.edge_count();
  Adj adj = bt_adj(bt, bt.all_edges());
  for (int k = 0; k < static_cast<int>(pieces.size()); ++k) {
    adj.nb[pieces[k].first].push_back({pieces[k].second, m + k});
    adj.nb[pieces[k].second].push_back({pieces[k].first, m + k});
  }
  std::unordered_set<EdgeSet> any, with_r;
  for (int s = 0; s < n; ++s) {
    auto dfs = [&](auto&& self, int v, VertexSet used, EdgeSet es, bool r) -> void {
      bool stuck = true;
      for (auto [w, e] : adj.nb[v]) {
        if ((used >> w) & 1) continue;
        stuck = false;
        if (e < m)
          self(self, w, used | bit(w), es | ebit(e), r);
        else
          self(self, w, used | bit(w), es, true);
      }
      if (stuck) {
        any.insert(es);
        if (r) with_r.insert(es);
      }
    };
    dfs(dfs, s, bit(s), 0, false);
  }
  return two_cover(maximal({with_r.begin(), with_r.end()}), maximal({any.begin(), any.end()}), bt.all_edges());
}

}  // namespace

TouchReport third_path_touch_filter(const BtRep& bt) {
  TouchReport rep;
  BtClassification cls = classify_bt(bt, false);
  if (cls.verdict == BtVerdict::AllLNC || cls.verdict == BtVerdict::TD) return rep;
  rep.applicable = true;

  std::vector<int> comps;
  for (int c = 0; c < static_cast<int>(bt.comps.size()); ++c)
    if (!bt.comps[c].empty()) comps.push_back(c);
  std::vector<std::pair<int, int>> conns;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = i + 1; j < comps.size(); ++j) conns.push_back({comps[i], comps[j]});

  const std::size_t kAttachCap = 4096;
  auto discarded = [&](const std::vector<int>& set) {
    std::vector<std::vector<std::pair<int, int>>> options;
    std::size_t combos = 1;
    for (int c : set) {
      std::vector<std::pair<int, int>> o;
      for (int x : bt.comps[conns[c].first].interior)
        for (int y : bt.comps[conns[c].second].interior) o.push_back({x, y});
      combos *= o.size();
      if (combos > kAttachCap) return false;
      options.push_back(std::move(o));
    }
    std::vector<std::size_t> idx(set.size(), 0);
    while (true) {
      std::vector<std::pair<int, int>> pieces;
      std::vector<int> degree(bt.host.n(), 0);
      UnionFind uf(bt.host.n());
      bool realizable = true;
      for (std::size_t k = 0; k < set.size(); ++k) {
        auto pc = options[k][idx[k]];
        pieces.push_back(pc);
        if (++degree[pc.first] > 2 || ++degree[pc.second] > 2 || !uf.unite(pc.first, pc.second)) realizable = false;
      }
      if (realizable && !touch_certificate(bt, pieces)) return false;
      std::size_t k = 0;
      while (k < set.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
      if (k == set.size()) break;
    }
    return true;
  };

  std::vector<int> ok;
  for (int c = 0; c < static_cast<int>(conns.size()); ++c) {
    if (discarded({c})) {
      rep.discarded.push_back(conns[c]);
    } else {
      ok.push_back(c);
      rep.admissible.push_back(conns[c]);
    }
  }
  auto cross = [&](int c) { return bt.comps[conns[c].first].color != bt.comps[conns[c].second].color; };

  const std::size_t kSetCap = 100000;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue, maximal_sets;
  for (int c : ok) {
    seen.insert({c});
    queue.push_back({c});
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<int> s = queue[qi];
    std::set<int> touched;
    for (int c : s) {
      touched.insert(conns[c].first);
      touched.insert(conns[c].second);
    }
    bool extended = false;
    for (int c : ok) {
      if (std::find(s.begin(), s.end(), c) != s.end()) continue;
      if (!touched.count(conns[c].first) && !touched.count(conns[c].second)) continue;
      std::vector<int> t = s;
      t.insert(std::upper_bound(t.begin(), t.end(), c), c);
      if (seen.count(t)) {
        extended = true;
        continue;
      }
      if (discarded(t)) continue;
      extended = true;
      seen.insert(t);
      if (seen.size() > kSetCap) {
        rep.truncated = true;
        break;
      }
      queue.push_back(std::move(t));
    }
    if (rep.truncated) break;
    if (!extended) maximal_sets.push_back(s);
  }

  for (const auto& s : maximal_sets) {
    int k = static_cast<int>(std::count_if(s.begin(), s.end(), cross));
    rep.max_cross_pairs = std::max(rep.max_cross_pairs, k);
    std::vector<std::pair<int, int>> named;
    for (int c : s) named.push_back(conns[c]);
    rep.maximal_sets.push_back(std::move(named));
  }
  for (std::size_t i = 0; i < ok.size(); ++i)
    for (std::size_t j = i + 1; j < ok.size(); ++j) {
      int a = ok[i], b = ok[j];
      if (!cross(a) || !cross(b)) continue;
      bool together = std::any_of(seen.begin(), seen.end(), [&](const std::vector<int>& s) {
        return std::find(s.begin(), s.end(), a) != s.end() && std::find(s.begin(), s.end(), b) != s.end();
      });
      if (!together) rep.jointly_excluded.push_back({conns[a], conns[b]});
    }
  rep.excluded = !rep.truncated && rep.max_cross_pairs <= 1;
  return rep;
}

nlohmann::json to_json(const BtRep& bt, const Certificate& c) {
  (void)bt;
  auto half = [](const HalfPair& h) { return nlohmann::json{{"from_x", h.from_x}, {"from_y", h.from_y}}; };
  return {{"x", c.x}, {"y", c.y}, {"first", half(c.first)}, {"second", half(c.second)},
          {"p_hat", c.p_hat}, {"q_hat", c.q_hat}, {"required", c.rhs}};
}

nlohmann::json to_json(const BtRep& bt, const PairVerdict& v) {
  nlohmann::json j{{"pair", pair_name(bt, v.X, v.Y)}, {"status", to_string(v.status)}, {"ndc", v.ndc}};
  if (!v.note.empty()) j["note"] = v.note;
  j["transcript"] = v.transcript;
  j["evidence"] = nlohmann::json::array();
  for (const auto& c : v.evidence) j["evidence"].push_back(to_json(bt, c));
  return j;
}

nlohmann::json to_json(const BtRep& bt, const BtClassification& c) {
  nlohmann::json j{{"sigma", perm_to_string(bt.sigma)}, {"verdict", to_string(c.verdict)}};
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : c.tree.blocks) {
    std::vector<std::string> esu;
    for (int x : b.esu) esu.push_back(bt.comps[x].name());
    j["blocks"].push_back({{"kind", to_string(b.kind)}, {"top", b.top}, {"ends", b.ends}, {"esu", esu}});
  }
  j["pairs"] = nlohmann::json::array();
  for (const auto& p : c.pairs) j["pairs"].push_back(to_json(bt, p));
  std::vector<std::string> lf, nf;
  for (auto [x, y] : c.lnc_failures) lf.push_back(pair_name(bt, x, y));
  for (auto [x, y] : c.ndc_failures) nf.push_back(pair_name(bt, x, y));
  j["lnc_failures"] = lf;
  j["ndc_failures"] = nf;
  return j;
}

nlohmann::json to_json(const BtRep& bt, const TouchReport& r) {
  auto names = [&](const std::vector<std::pair<int, int>>& v) {
    std::vector<std::string> out;
    for (auto [a, b] : v) out.push_back(pair_name(bt, a, b));
    return out;
  };
  nlohmann::json j{{"applicable", r.applicable}, {"admissible", names(r.admissible)},
                   {"discarded", names(r.discarded)}, {"max_cross_pairs", r.max_cross_pairs},
                   {"truncated", r.truncated}, {"excluded", r.excluded}};
  j["maximal_sets"] = nlohmann::json::array();
  for (const auto& s : r.maximal_sets) j["maximal_sets"].push_back(names(s));
  j["jointly_excluded"] = nlohmann::json::array();
  for (const auto& [a, b] : r.jointly_excluded)
    j["jointly_excluded"].push_back({pair_name(bt, a.first, a.second), pair_name(bt, b.first, b.second)});
  return j;
}

}  // namespace bitrace
