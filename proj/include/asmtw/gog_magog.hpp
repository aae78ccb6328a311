#pragma once
// Gog (monotone) and magog triangular/trapezoidal arrays, the ASM <-> gog
// bijection, and exact trapezoid counting (exhaustive DFS and row-keyed
// dynamic programming agree; the DP also covers sizes past the DFS cap).

#include <asmtw/asm_matrix.hpp>
#include <asmtw/rational.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace asmtw {

// Trapezoidal array g_{i,j}, 1 <= i <= n, 1 <= j <= min(i,k):
// g_{i,j} <= g_{i-1,j} <= g_{i,j+1}, strict increase along rows,
// 1 <= g_{i,j} <= n+1-i+j (the diagonal bound is inherited from embedding
// the trapezoid in a full triangle; it is what makes the width-1 counts
// Catalan). k = n gives a monotone (gog) triangle.
struct GogTrapezoid {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> rows;  // rows[i-1] has min(i,k) entries

  GogTrapezoid() = default;
  GogTrapezoid(int n_, int k_, std::vector<std::vector<int>> r)
      : n(n_), k(k_), rows(std::move(r)) {
    validate();
  }

  int at(int i, int j) const { return rows[i - 1][j - 1]; }
  bool defined(int i, int j) const {
    return i >= 1 && i <= n && j >= 1 && j <= std::min(i, k);
  }

  void validate() const {
    if (n < 1 || k < 1 || k > n)
      throw std::invalid_argument("GogTrapezoid: need 1 <= k <= n");
    if (static_cast<int>(rows.size()) != n)
      throw std::invalid_argument("GogTrapezoid: wrong row count");
    for (int i = 1; i <= n; ++i) {
      if (static_cast<int>(rows[i - 1].size()) != std::min(i, k))
        throw std::invalid_argument("GogTrapezoid: row " + std::to_string(i) +
                                    " has wrong length");
      for (int j = 1; j <= std::min(i, k); ++j) {
        int v = at(i, j);
        if (v < 1 || v > n + 1)
          throw std::invalid_argument("GogTrapezoid: entry out of [1,n+1]");
        if (v > n + 1 - i + j)
          throw std::invalid_argument("GogTrapezoid: diagonal bound violated");
        if (defined(i, j + 1) && v >= at(i, j + 1))
          throw std::invalid_argument("GogTrapezoid: row not strictly increasing");
        if (defined(i - 1, j)) {
          if (v > at(i - 1, j))
            throw std::invalid_argument("GogTrapezoid: g(i,j) <= g(i-1,j) violated");
          if (defined(i, j + 1) && at(i - 1, j) > at(i, j + 1))
            throw std::invalid_argument("GogTrapezoid: g(i-1,j) <= g(i,j+1) violated");
        }
      }
    }
  }

  bool operator==(const GogTrapezoid& o) const {
    return n == o.n && k == o.k && rows == o.rows;
  }
  bool operator<(const GogTrapezoid& o) const { return rows < o.rows; }
};

// Trapezoidal array m_{i,j}, 1 <= i <= n, max(1,i-k+1) <= j <= i:
// m_{i,j} <= m_{i+1,j+1}, m_{i,j} >= m_{i+1,j}, weakly increasing along
// rows, 1 <= m_{i,j} <= j+1. Row monotonicity is automatic on the matching
// side (the recorded x-coordinates are strictly increasing) and is needed
// for the trapezoid counts to match the gog ones.
struct MagogTrapezoid {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> rows;  // rows[i-1] holds j = jmin(i)..i

  MagogTrapezoid() = default;
  MagogTrapezoid(int n_, int k_, std::vector<std::vector<int>> r)
      : n(n_), k(k_), rows(std::move(r)) {
    validate();
  }

  int jmin(int i) const { return std::max(1, i - k + 1); }
  bool defined(int i, int j) const {
    return i >= 1 && i <= n && j >= jmin(i) && j <= i;
  }
  int at(int i, int j) const { return rows[i - 1][j - jmin(i)]; }

  void validate() const {
    if (n < 1 || k < 1 || k > n)
      throw std::invalid_argument("MagogTrapezoid: need 1 <= k <= n");
    if (static_cast<int>(rows.size()) != n)
      throw std::invalid_argument("MagogTrapezoid: wrong row count");
    for (int i = 1; i <= n; ++i) {
      if (static_cast<int>(rows[i - 1].size()) != i - jmin(i) + 1)
        throw std::invalid_argument("MagogTrapezoid: row " + std::to_string(i) +
                                    " has wrong length");
      for (int j = jmin(i); j <= i; ++j) {
        int v = at(i, j);
        if (v < 1 || v > j + 1)
          throw std::invalid_argument("MagogTrapezoid: entry out of [1,j+1]");
        if (defined(i, j + 1) && v > at(i, j + 1))
          throw std::invalid_argument("MagogTrapezoid: row not weakly increasing");
        if (defined(i + 1, j + 1) && v > at(i + 1, j + 1))
          throw std::invalid_argument("MagogTrapezoid: m(i,j) <= m(i+1,j+1) violated");
        if (defined(i + 1, j) && v < at(i + 1, j))
          throw std::invalid_argument("MagogTrapezoid: m(i,j) >= m(i+1,j) violated");
      }
    }
  }

  bool operator==(const MagogTrapezoid& o) const {
    return n == o.n && k == o.k && rows == o.rows;
  }
  bool operator<(const MagogTrapezoid& o) const { return rows < o.rows; }
};

// Row i of the triangle lists, in increasing order, the columns whose
// partial sum over the first i ASM rows equals 1. The last (full) row
// 1..n+1 is dropped, so an order-(n+1) ASM gives a triangle of order n.
inline GogTrapezoid asm_to_gog(const AsmMatrix& a) {
  a.validate();
  const int n = a.n - 1;
  if (n < 1) throw std::invalid_argument("asm_to_gog: order must be >= 2");
  std::vector<std::vector<int>> rows(n);
  std::vector<int> colsum(a.n, 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= a.n; ++j) {
      colsum[j - 1] += a.at(i, j);
      if (colsum[j - 1] == 1) rows[i - 1].push_back(j);
    }
  }
  return GogTrapezoid(n, n, std::move(rows));
}

inline AsmMatrix gog_to_asm(const GogTrapezoid& g) {
  g.validate();
  if (g.k != g.n)
    throw std::invalid_argument("gog_to_asm: need a full triangle (k = n)");
  const int n = g.n;
  std::vector<std::vector<int>> b(n + 2, std::vector<int>(n + 2, 0));
  for (int i = 1; i <= n; ++i)
    for (int v : g.rows[i - 1]) b[i][v] = 1;
  for (int j = 1; j <= n + 1; ++j) b[n + 1][j] = 1;
  std::vector<int> a((n + 1) * (n + 1));
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j)
      a[(i - 1) * (n + 1) + (j - 1)] = b[i][j] - b[i - 1][j];
  return AsmMatrix(n + 1, std::move(a));
}

namespace detail {

// Admissible successors of gog row i-1 as row i (widths min(i-1,k), min(i,k)).
inline void gog_next_rows(const std::vector<int>& prev, int i, int n, int k,
                          const std::function<void(const std::vector<int>&)>& f) {
  const int w = std::min(i, k);
  std::vector<int> row(w);
  std::function<void(int)> rec = [&](int j) {  // j is 1-based position
    if (j > w) {
      f(row);
      return;
    }
    int lo = 1, hi = std::min(n + 1, n + 1 - i + j);
    if (j >= 2) lo = std::max(lo, row[j - 2] + 1);
    // g(i,j) >= g(i-1,j-1) and g(i,j) <= g(i-1,j) where defined.
    if (j >= 2 && j - 1 <= static_cast<int>(prev.size()))
      lo = std::max(lo, prev[j - 2]);
    if (j <= static_cast<int>(prev.size())) hi = std::min(hi, prev[j - 1]);
    for (int v = lo; v <= hi; ++v) {
      row[j - 1] = v;
      rec(j + 1);
    }
  };
  rec(1);
}

// Admissible successors of magog row i-1 as row i.
inline void magog_next_rows(const std::vector<int>& prev, int i, int k,
                            const std::function<void(const std::vector<int>&)>& f) {
  const int jlo = std::max(1, i - k + 1);
  const int jlo_prev = std::max(1, i - 1 - k + 1);
  const int w = i - jlo + 1;
  std::vector<int> row(w);
  std::function<void(int)> rec = [&](int j) {
    if (j > i) {
      f(row);
      return;
    }
    int lo = 1, hi = j + 1;
    if (j > jlo) lo = std::max(lo, row[j - jlo - 1]);  // weak row increase
    // m(i-1,j) >= m(i,j) and m(i-1,j-1) <= m(i,j) where defined.
    auto prev_at = [&](int jj) { return prev[jj - jlo_prev]; };
    auto prev_def = [&](int jj) { return jj >= jlo_prev && jj <= i - 1; };
    if (prev_def(j)) hi = std::min(hi, prev_at(j));
    if (prev_def(j - 1)) lo = std::max(lo, prev_at(j - 1));
    for (int v = lo; v <= hi; ++v) {
      row[j - jlo] = v;
      rec(j + 1);
    }
  };
  rec(jlo);
}

}  // namespace detail

// Row-keyed dynamic programming count; exact for any 1 <= k <= n within memory.
inline Int count_gog_trapezoids(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("count_gog_trapezoids: need 1 <= k <= n");
  std::map<std::vector<int>, Int> layer;
  layer[{}] = 1;
  for (int i = 1; i <= n; ++i) {
    std::map<std::vector<int>, Int> next;
    for (const auto& [prev, cnt] : layer)
      detail::gog_next_rows(prev, i, n, k,
                            [&](const std::vector<int>& row) { next[row] += cnt; });
    layer = std::move(next);
  }
  Int total = 0;
  for (const auto& [row, cnt] : layer) total += cnt;
  return total;
}

inline Int count_magog_trapezoids(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("count_magog_trapezoids: need 1 <= k <= n");
  std::map<std::vector<int>, Int> layer;
  layer[{}] = 1;
  for (int i = 1; i <= n; ++i) {
    std::map<std::vector<int>, Int> next;
    for (const auto& [prev, cnt] : layer)
      detail::magog_next_rows(prev, i, k,
                              [&](const std::vector<int>& row) { next[row] += cnt; });
    layer = std::move(next);
  }
  Int total = 0;
  for (const auto& [row, cnt] : layer) total += cnt;
  return total;
}

// Exhaustive enumerations (test oracles; guarded by a cap).
inline std::vector<GogTrapezoid> enumerate_gog(int n, int k,
                                               int cap = kEnumerationCap + 1) {
  if (n > cap) throw std::invalid_argument("enumerate_gog: cap exceeded");
  std::vector<GogTrapezoid> out;
  std::vector<std::vector<int>> rows;
  std::function<void(int)> rec = [&](int i) {
    if (i > n) {
      out.emplace_back(n, k, rows);
      return;
    }
    const std::vector<int> prev = rows.empty() ? std::vector<int>{} : rows.back();
    detail::gog_next_rows(prev, i, n, k, [&](const std::vector<int>& row) {
      rows.push_back(row);
      rec(i + 1);
      rows.pop_back();
    });
  };
  rec(1);
  return out;
}

inline std::vector<MagogTrapezoid> enumerate_magog(int n, int k,
                                                   int cap = kEnumerationCap + 1) {
  if (n > cap) throw std::invalid_argument("enumerate_magog: cap exceeded");
  std::vector<MagogTrapezoid> out;
  std::vector<std::vector<int>> rows;
  std::function<void(int)> rec = [&](int i) {
    if (i > n) {
      out.emplace_back(n, k, rows);
      return;
    }
    const std::vector<int> prev = rows.empty() ? std::vector<int>{} : rows.back();
    detail::magog_next_rows(prev, i, k, [&](const std::vector<int>& row) {
      rows.push_back(row);
      rec(i + 1);
      rows.pop_back();
    });
  };
  rec(1);
  return out;
}

}  // namespace asmtw
