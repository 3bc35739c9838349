#include "bitrace/profile.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bitrace {

IntersectionProfile intersection_profile(const Path& p, const Path& q) {
  VertexSet inter = vertex_set(p) & vertex_set(q);
  if (!inter) throw std::invalid_argument("paths do not intersect");
  IntersectionProfile out;
  for (int v : p)
    if ((inter >> v) & 1) out.a_seq.push_back(v);
  for (int v : q)
    if ((inter >> v) & 1) out.b_seq.push_back(v);
  out.ell = static_cast<int>(out.a_seq.size());
  for (int b : out.b_seq) {
    auto it = std::find(out.a_seq.begin(), out.a_seq.end(), b);
    out.sigma.push_back(static_cast<int>(it - out.a_seq.begin()) + 1);
  }
  return out;
}

bool is_permutation(const Perm& s) {
  std::vector<bool> seen(s.size() + 1, false);
  for (int v : s) {
    if (v < 1 || v > static_cast<int>(s.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Perm identity_perm(int ell) {
  Perm s(ell);
  std::iota(s.begin(), s.end(), 1);
  return s;
}

Perm inverse(const Perm& s) {
  Perm t(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) t[s[j] - 1] = static_cast<int>(j) + 1;
  return t;
}

Perm reverse_values(const Perm& s) {
  Perm t(s);
  int l = static_cast<int>(s.size());
  for (int& v : t) v = l + 1 - v;
  return t;
}

Perm reverse_positions(const Perm& s) { return Perm(s.rbegin(), s.rend()); }

std::vector<Perm> orbit(const Perm& s) {
  std::set<Perm> out;
  for (const Perm& t : {s, reverse_values(s), reverse_positions(s), reverse_values(reverse_positions(s))}) {
    out.insert(t);
    out.insert(inverse(t));
  }
  return {out.begin(), out.end()};
}

std::string perm_to_string(const Perm& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ')';
  return os.str();
}

Perm parse_perm(std::string_view text) {
  Perm s;
  bool has_sep = text.find_first_of(", ") != std::string_view::npos;
  int cur = -1;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      if (has_sep)
        cur = (cur < 0 ? 0 : cur * 10) + (c - '0');
      else
        s.push_back(c - '0');
    } else if (c == ',' || c == ' ' || c == ')') {
      if (cur >= 0) s.push_back(cur);
      cur = -1;
    } else if (c != '(') {
      throw std::invalid_argument("bad permutation text");
    }
  }
  if (cur >= 0) s.push_back(cur);
  if (s.empty() || !is_permutation(s)) throw std::invalid_argument("not a permutation");
  return s;
}

const char* to_string(TableConn c) {
  switch (c) {
    case TableConn::LNC: return "LNC";
    case TableConn::TD: return "TD";
    case TableConn::Exceptional: return "Exceptional";
  }
  return "?";
}

namespace {

struct RawRow {
  int case_no;
  const char* perms;
  TableConn conn;
};

constexpr auto L = TableConn::LNC;
constexpr auto T = TableConn::TD;
constexpr auto X = TableConn::Exceptional;

const RawRow kRows4[] = {
    {1, "1234 4321", L},
    {2, "1243 2134 3421 4312", L},
    {3, "1324 4231", L},
    {4, "1342 1423 2314 2431 3124 3241 4132 4213", L},
    {5, "1432 2341 3214 4123", L},
    {6, "2143 3412", L},
    {7, "2413 3142", T},
};

const RawRow kRows5[] = {
    {1, "12345 54321", L},
    {2, "12354 21345 45321 54312", L},
    {3, "12435 13245 53421 54231", L},
    {4, "12453 12534 23145 31245 35421 43521 54132 54213", L},
    {5, "12543 32145 34521 54123", L},
    {6, "13254 21435 45231 53412", X},
    {7, "13425 14235 52431 53241", L},
    {8, "13452 15234 23415 25431 41235 43251 51432 53214", L},
    {9, "13524 14253 24135 31425 35241 42531 52413 53142", L},
    {10, "13542 15243 24531 32415 34251 42135 51423 53124", L},
    {11, "14325 52341", L},
    {12, "14352 15324 24315 25341 41325 42351 51342 52314", L},
    {13, "14523 32541 34125 52143", X},
    {14, "14532 15423 23541 32451 34215 43125 51243 52134", X},
    {15, "15342 24351 42315 51324", L},
    {16, "15432 23451 43215 51234", L},
    {17, "21354 45312", L},
    {18, "21453 21534 23154 31254 35412 43512 45132 45213", L},
    {19, "21543 32154 34512 45123", L},
    {20, "23514 25134 25413 31452 35214 41253 41532 43152", L},
    {21, "24153 31524 35142 42513", T},
    {22, "24513 25143 31542 32514 34152 35124 41523 42153", L},
    {23, "25314 41352", T},
};

std::vector<TableRow> build(int ell, const RawRow* rows, std::size_t count) {
  std::vector<TableRow> out;
  for (std::size_t i = 0; i < count; ++i) {
    TableRow r{ell, rows[i].case_no, {}, rows[i].conn};
    std::istringstream is(rows[i].perms);
    std::string tok;
    while (is >> tok) r.perms.push_back(parse_perm(tok));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

const std::vector<TableRow>& reference_table(int ell) {
  static const std::vector<TableRow> t4 = build(4, kRows4, std::size(kRows4));
  static const std::vector<TableRow> t5 = build(5, kRows5, std::size(kRows5));
  static const std::vector<TableRow> none;
  if (ell == 4) return t4;
  if (ell == 5) return t5;
  return none;
}

std::optional<int> lookup_case(const Perm& s) {
  for (const auto& row : reference_table(static_cast<int>(s.size())))
    if (std::find(row.perms.begin(), row.perms.end(), s) != row.perms.end()) return row.case_no;
  return std::nullopt;
}

bool is_exceptional_class(const Perm& s) {
  if (s.size() != 5) return false;
  auto c = lookup_case(s);
  return c && (*c == 6 || *c == 13 || *c == 14);
}

ConfigClass canonical_form(const Perm& s) {
  if (!is_permutation(s)) throw std::invalid_argument("not a permutation");
  ConfigClass c;
  c.ell = static_cast<int>(s.size());
  c.orbit = orbit(s);
  c.canonical = c.orbit.front();
  c.table_case = lookup_case(c.canonical);
  return c;
}

std::vector<ConfigClass> enumerate_classes(int ell) {
  if (ell < 1 || ell > 8) throw std::invalid_argument("ell must be in 1..8");
  static std::mutex mu;
  static std::map<int, std::vector<ConfigClass>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(ell); it != cache.end()) return it->second;
  std::vector<ConfigClass> out;
  std::set<Perm> seen;
  Perm s = identity_perm(ell);
  do {
    if (seen.count(s)) continue;
    ConfigClass c = canonical_form(s);
    seen.insert(c.orbit.begin(), c.orbit.end());
    out.push_back(std::move(c));
  } while (std::next_permutation(s.begin(), s.end()));
  std::sort(out.begin(), out.end(), [](const ConfigClass& a, const ConfigClass& b) { return a.canonical < b.canonical; });
  cache[ell] = out;
  return out;
}

}  // namespace bitrace
