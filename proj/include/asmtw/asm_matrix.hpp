#pragma once
// Alternating sign matrices and their corner-sum encoding, with validated
// conversions both ways and exhaustive enumeration for small orders.

#include <asmtw/rational.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace asmtw {

// Square {-1,0,1} matrix whose rows and columns sum to 1 with alternating
// signs. 1-based accessors to match the conventional subscripts.
struct AsmMatrix {
  int n = 0;
  std::vector<int> entries;  // row-major, n*n

  AsmMatrix() = default;
  AsmMatrix(int order, std::vector<int> e) : n(order), entries(std::move(e)) {
    validate();
  }

  int at(int i, int j) const { return entries[(i - 1) * n + (j - 1)]; }
  int& at(int i, int j) { return entries[(i - 1) * n + (j - 1)]; }

  void validate() const {
    if (n <= 0) throw std::invalid_argument("AsmMatrix: order must be positive");
    if (static_cast<int>(entries.size()) != n * n)
      throw std::invalid_argument("AsmMatrix: entry count != n*n");
    for (int v : entries)
      if (v < -1 || v > 1)
        throw std::invalid_argument("AsmMatrix: entry outside {-1,0,1}");
    for (int i = 1; i <= n; ++i) {
      int rs = 0, cs = 0;
      for (int j = 1; j <= n; ++j) {
        rs += at(i, j);
        if (rs < 0 || rs > 1)
          throw std::invalid_argument(
              "AsmMatrix: row " + std::to_string(i) +
              " partial sums leave {0,1} (alternation violated)");
        cs += at(j, i);
        if (cs < 0 || cs > 1)
          throw std::invalid_argument(
              "AsmMatrix: column " + std::to_string(i) +
              " partial sums leave {0,1} (alternation violated)");
      }
      if (rs != 1)
        throw std::invalid_argument("AsmMatrix: row " + std::to_string(i) +
                                    " does not sum to 1");
      if (cs != 1)
        throw std::invalid_argument("AsmMatrix: column " + std::to_string(i) +
                                    " does not sum to 1");
    }
  }

  bool operator==(const AsmMatrix& o) const {
    return n == o.n && entries == o.entries;
  }
};

// Corner-sum encoding of an ASM of order n+1: an n x n matrix c with
// c_{1,i}, c_{i,n} in {n-1, n}, unit steps right and up.
struct PcsmMatrix {
  int n = 0;
  std::vector<int> entries;  // row-major, n*n

  PcsmMatrix() = default;
  PcsmMatrix(int size, std::vector<int> e) : n(size), entries(std::move(e)) {
    validate();
  }

  int at(int i, int j) const { return entries[(i - 1) * n + (j - 1)]; }
  int& at(int i, int j) { return entries[(i - 1) * n + (j - 1)]; }

  // Entries extended by the boundary convention, defined for
  // 0 <= i, j <= n+1. Used by the inverse map and the height function.
  int padded(int i, int j) const {
    if (i >= 1 && i <= n && j >= 1 && j <= n) return at(i, j);
    if (i == 0) return n;
    if (i == n + 1) return j - 1;
    if (j == n + 1) return n;
    if (j == 0) return n - i;
    throw std::out_of_range("PcsmMatrix::padded: index out of range");
  }

  void validate() const {
    if (n <= 0) throw std::invalid_argument("PcsmMatrix: size must be positive");
    if (static_cast<int>(entries.size()) != n * n)
      throw std::invalid_argument("PcsmMatrix: entry count != n*n");
    for (int i = 1; i <= n; ++i) {
      if (at(1, i) < n - 1 || at(1, i) > n)
        throw std::invalid_argument("PcsmMatrix: c_{1," + std::to_string(i) +
                                    "} not in {n-1,n}");
      if (at(i, n) < n - 1 || at(i, n) > n)
        throw std::invalid_argument("PcsmMatrix: c_{" + std::to_string(i) +
                                    ",n} not in {n-1,n}");
    }
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (j < n) {
          int d = at(i, j + 1) - at(i, j);
          if (d < 0 || d > 1)
            throw std::invalid_argument("PcsmMatrix: horizontal step at (" +
                                        std::to_string(i) + "," +
                                        std::to_string(j) + ") not in {0,1}");
        }
        if (i < n) {
          int d = at(i, j) - at(i + 1, j);
          if (d < 0 || d > 1)
            throw std::invalid_argument("PcsmMatrix: vertical step at (" +
                                        std::to_string(i) + "," +
                                        std::to_string(j) + ") not in {0,1}");
        }
      }
  }

  bool operator==(const PcsmMatrix& o) const {
    return n == o.n && entries == o.entries;
  }
  bool operator<(const PcsmMatrix& o) const {
    return entries < o.entries;  // same n assumed
  }
};

// c_{i,j} = n - sum of ASM entries in rows <= i, columns <= n+1-j.
inline PcsmMatrix asm_to_pcsm(const AsmMatrix& a) {
  a.validate();
  const int n = a.n - 1;
  if (n < 1) throw std::invalid_argument("asm_to_pcsm: order must be >= 2");
  // Corner sums s(i,j) = sum_{r<=i, s<=j} a_{r,s}.
  std::vector<std::vector<int>> s(a.n + 1, std::vector<int>(a.n + 1, 0));
  for (int i = 1; i <= a.n; ++i)
    for (int j = 1; j <= a.n; ++j)
      s[i][j] = a.at(i, j) + s[i - 1][j] + s[i][j - 1] - s[i - 1][j - 1];
  std::vector<int> c(n * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) c[(i - 1) * n + (j - 1)] = n - s[i][n + 1 - j];
  return PcsmMatrix(n, std::move(c));
}

inline AsmMatrix pcsm_to_asm(const PcsmMatrix& c) {
  c.validate();
  const int n = c.n;
  std::vector<int> a((n + 1) * (n + 1));
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j)
      a[(i - 1) * (n + 1) + (j - 1)] =
          c.padded(i - 1, n + 1 - j) - c.padded(i, n + 1 - j) -
          c.padded(i - 1, n + 2 - j) + c.padded(i, n + 2 - j);
  return AsmMatrix(n + 1, std::move(a));
}

// Exact |A_n| by the product formula prod_{i=0}^{n-1} (3i+1)!/(n+i)!.
inline Int count_asm(int n) {
  if (n < 1) throw std::invalid_argument("count_asm: n must be >= 1");
  Rat r = 1;
  for (int i = 0; i < n; ++i) r *= Rat(factorial(3 * i + 1), factorial(n + i));
  r.canonicalize();
  if (r.get_den() != 1)
    throw std::logic_error("count_asm: product formula not an integer");
  return r.get_num();
}

inline constexpr int kEnumerationCap = 6;

// Visit every ASM of order n by row-wise depth-first search with the
// partial-sum constraints as pruning.
inline void for_each_asm(int n, const std::function<void(const AsmMatrix&)>& f,
                         int cap = kEnumerationCap) {
  if (n < 1) throw std::invalid_argument("for_each_asm: n must be >= 1");
  if (n > cap) throw std::invalid_argument("for_each_asm: enumeration cap exceeded");
  std::vector<int> entries(n * n, 0);
  std::vector<int> colsum(n, 0);  // column partial sums over completed rows
  std::function<void(int, int, int)> rec = [&](int i, int j, int rowsum) {
    if (j == n) {
      if (rowsum != 1) return;
      if (i == n - 1) {
        bool ok = true;
        for (int t = 0; t < n; ++t)
          if (colsum[t] != 1) { ok = false; break; }
        if (ok) f(AsmMatrix(n, entries));
        return;
      }
      rec(i + 1, 0, 0);
      return;
    }
    const int remaining_rows = n - 1 - i;
    for (int v = -1; v <= 1; ++v) {
      int rs = rowsum + v;
      int cs = colsum[j] + v;
      if (rs < 0 || rs > 1 || cs < 0 || cs > 1) continue;
      // Column must still be able to reach total 1.
      if (cs + remaining_rows < 1) continue;
      entries[i * n + j] = v;
      colsum[j] = cs;
      rec(i, j + 1, rs);
      colsum[j] -= v;
      entries[i * n + j] = 0;
    }
  };
  rec(0, 0, 0);
}

inline std::vector<AsmMatrix> enumerate_asm(int n, int cap = kEnumerationCap) {
  std::vector<AsmMatrix> out;
  for_each_asm(n, [&](const AsmMatrix& a) { out.push_back(a); }, cap);
  return out;
}

}  // namespace asmtw
