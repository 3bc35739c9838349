#include "packing_lp.hpp"

namespace bitrace::detail {

// Dense tableau simplex with Bland's rule, exact arithmetic.
PackingLp solve_packing(const std::vector<std::uint64_t>& rows, int columns) {
  PackingLp out;
  int r = static_cast<int>(rows.size());
  std::uint64_t covered = 0;
  for (auto a : rows) covered |= a;
  for (int e = 0; e < columns; ++e)
    if (!((covered >> e) & 1)) {
      out.unbounded = true;
      out.primal.assign(columns, 0);
      out.primal[e] = 3;
      return out;
    }
  int width = columns + r + 1;
  std::vector<std::vector<Rational>> t(r + 1, std::vector<Rational>(width));
  for (int i = 0; i < r; ++i) {
    for (int e = 0; e < columns; ++e)
      if ((rows[i] >> e) & 1) t[i][e] = 1;
    t[i][columns + i] = 1;
    t[i][width - 1] = 1;
  }
  for (int e = 0; e < columns; ++e) t[r][e] = -1;
  std::vector<int> basis(r);
  for (int i = 0; i < r; ++i) basis[i] = columns + i;

  while (true) {
    int enter = -1;
    for (int j = 0; j < width - 1 && enter < 0; ++j)
      if (t[r][j] < 0) enter = j;
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < r; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Every column lies in some row, so the objective is bounded.
    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (int i = 0; i <= r; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (int j = 0; j < width; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  out.optimum = t[r][width - 1];
  out.primal.assign(columns, 0);
  for (int i = 0; i < r; ++i)
    if (basis[i] < columns) out.primal[basis[i]] = t[i][width - 1];
  out.dual.resize(r);
  for (int i = 0; i < r; ++i) out.dual[i] = t[r][columns + i];
  return out;
}

}  // namespace bitrace::detail
