#pragma once
// Skew-symmetric Kasteleyn matrix of the dimer graph, exact Pfaffians, the
// closed-form inverse entries, and local dimer statistics. Every contour
// integral in the closed forms is evaluated as an exact residue sum.

#include <asmtw/dimer.hpp>
#include <asmtw/kernel.hpp>
#include <asmtw/pfaffian.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace asmtw {

namespace detail {

// Signed adjacency weight before antisymmetrization.
inline int kast_weight(const Vtx& x, const Vtx& y) {
  auto [x1, x2] = x;
  auto [y1, y2] = y;
  if ((x1 + x2) % 2 == 0 && x2 == y2 && x1 - y1 == 1) return 1;
  if ((x1 + x2) % 2 == 0 && std::abs(y2 - x2) == 1 && x1 == y1) return 1;
  if (x1 == x2 && y1 == y2 && y1 == x1 - 1) return 1;
  return 0;
}

}  // namespace detail

struct KasteleynMatrix {
  int n = 0;
  std::shared_ptr<const DimerGraph> graph;
  Matrix<Rat> k;  // indexed by graph vertex indices (lexicographic order)

  const Rat& at(const Vtx& x, const Vtx& y) const {
    return k[graph->index_of(x.first, x.second)]
            [graph->index_of(y.first, y.second)];
  }
};

// Builds K_n(x,y) = k_n(x,y) - k_n(y,x) and verifies the odd
// counter-clockwise-arrow count around every bounded face.
inline KasteleynMatrix build_kasteleyn(int n) {
  if (n < 1) throw std::invalid_argument("build_kasteleyn: n >= 1 required");
  KasteleynMatrix km;
  km.n = n;
  km.graph = build_dimer_graph(n);
  const auto& g = *km.graph;
  const int N = static_cast<int>(g.vertices.size());
  km.k.assign(N, std::vector<Rat>(N, Rat(0)));
  for (const auto& [iu, iv] : g.edges) {
    const Vtx& u = g.vertices[iu];
    const Vtx& v = g.vertices[iv];
    int w = detail::kast_weight(u, v) - detail::kast_weight(v, u);
    if (w == 0)
      throw std::logic_error("build_kasteleyn: edge with zero weight");
    km.k[iu][iv] = Rat(w);
    km.k[iv][iu] = Rat(-w);
  }
  for (const auto& face : g.faces) {  // counter-clockwise vertex cycles
    int ccw = 0;
    const int m = static_cast<int>(face.size());
    for (int i = 0; i < m; ++i) {
      if (km.k[face[i]][face[(i + 1) % m]] > 0) ++ccw;
    }
    if (ccw % 2 == 0)
      throw std::logic_error("build_kasteleyn: even arrow count around face");
  }
  return km;
}

inline Rat pfaffian_exact(const Matrix<Rat>& m) {
  check_skew(m);
  return pfaffian(m);
}

namespace detail {

inline Rat h0b_eval(int n, int i) {
  Rat s(-((i + 1) % 2));
  for (int k = 0; k <= n; ++k)
    s += p_coeff(n, k, 0) * Rat(binomial_prefix(n - k, i - 2 * k - 1));
  return s;
}

inline Rat h1b_eval(int n, int i) {
  Rat s(0);
  for (int k = 0; k <= n; ++k)
    s += p_coeff(n, k, 0) * Rat(binomial(n - k, i - 2 * k));
  return s;
}

}  // namespace detail

// Boundary-row contour integrals, reduced to binomial (partial) sums; the
// 1/(1-r) factor expands to a prefix sum because the contour radius is < 1.
inline Rat h0b(int n, int i) {
  if (i < 0 || i > 2 * n - 1) throw std::invalid_argument("h0b: index range");
  return detail::h0b_eval(n, i);
}

inline Rat h1b(int n, int i) {
  if (i < 0 || i > 2 * n - 1) throw std::invalid_argument("h1b: index range");
  return detail::h1b_eval(n, i);
}

enum class TVariant { t00, t10, t01, t11 };

namespace detail {

// The s1,s2 double contour collapses to 1[l2=l1+1] - 1[l2=l1-1], leaving
// this skew pairing of p-coefficients.
struct QTable {
  std::vector<std::vector<Rat>> q;
  explicit QTable(int n) : q(n + 1, std::vector<Rat>(n + 1, Rat(0))) {
    for (int k1 = 0; k1 <= n; ++k1)
      for (int k2 = 0; k2 <= n; ++k2) {
        Rat s(0);
        for (int l = 0; l <= std::min(k1, k2 - 1); ++l)
          s += p_coeff(n, k1, l) * p_coeff(n, k2, l + 1);
        for (int l = 0; l <= std::min(k1 - 1, k2); ++l)
          s -= p_coeff(n, k1, l + 1) * p_coeff(n, k2, l);
        q[k1][k2] = s;
      }
  }
};

inline const QTable& q_table(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<QTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& p = cache[n];
  if (!p) p = std::make_unique<QTable>(n);
  return *p;
}

}  // namespace detail

namespace detail {

// Unchecked evaluation; the inverse assembly below needs indices past
// 2n-1, where the binomial sums remain the right analytic continuation.
inline Rat t_eval(int n, TVariant variant, int i, int j) {
  const auto& Q = detail::q_table(n).q;
  auto ri = [&](int k, int a) { return Rat(binomial_prefix(n - k, a - 2 * k - 1)); };
  auto bi = [&](int k, int a) { return Rat(binomial(n - k, a - 2 * k)); };
  Rat s(0);
  switch (variant) {
    case TVariant::t00:
      s = Rat((i < j ? 1 : 0) * ((i + 1) % 2) * (j % 2) -
              (i > j ? 1 : 0) * (i % 2) * ((j + 1) % 2));
      s += Rat((j + 1) % 2) * h0b_eval(n, i) - Rat((i + 1) % 2) * h0b_eval(n, j);
      for (int k1 = 0; k1 <= n; ++k1)
        for (int k2 = 0; k2 <= n; ++k2)
          s += Q[k1][k2] * ri(k1, i) * ri(k2, j);
      return s;
    case TVariant::t10:
      s = Rat((j + 1) % 2) * h1b_eval(n, i);
      for (int k1 = 0; k1 <= n; ++k1)
        for (int k2 = 0; k2 <= n; ++k2)
          s += Q[k1][k2] * bi(k1, i) * ri(k2, j);
      return s;
    case TVariant::t01:
      s = -Rat((i + 1) % 2) * h1b_eval(n, j);
      for (int k1 = 0; k1 <= n; ++k1)
        for (int k2 = 0; k2 <= n; ++k2)
          s += Q[k1][k2] * ri(k1, i) * bi(k2, j);
      return s;
    case TVariant::t11:
      for (int k1 = 0; k1 <= n; ++k1)
        for (int k2 = 0; k2 <= n; ++k2)
          s += Q[k1][k2] * bi(k1, i) * bi(k2, j);
      return s;
  }
  throw std::invalid_argument("t_matrix: unknown variant");
}

}  // namespace detail

inline Rat t_matrix(int n, TVariant variant, int i, int j) {
  if (i < 0 || i > 2 * n - 1 || j < 0 || j > 2 * n - 1)
    throw std::invalid_argument("t_matrix: index range");
  return detail::t_eval(n, variant, i, j);
}

// Coordinates (x1,x2) = (i1, i1 + 2*i2 + eps_i) and likewise for (y1,y2).
struct InverseEntryRequest {
  int i1 = 0, i2 = 0, ei = 0;
  int j1 = 0, j2 = 0, ej = 0;

  static InverseEntryRequest from_vertices(int n, const Vtx& x, const Vtx& y) {
    InverseEntryRequest r;
    auto decompose = [&](const Vtx& v, int& a1, int& a2, int& e) {
      a1 = v.first;
      int d = v.second - v.first;
      if (d < 0) throw std::invalid_argument("InverseEntryRequest: x2 < x1");
      e = d % 2;
      a2 = (d - e) / 2;
    };
    decompose(x, r.i1, r.i2, r.ei);
    decompose(y, r.j1, r.j2, r.ej);
    r.validate(n);
    return r;
  }

  void validate(int n) const {
    if (i1 < 0 || i1 > 2 * n - 1 || j1 < 0 || j1 > 2 * n - 1)
      throw std::invalid_argument("InverseEntryRequest: first coordinates");
    if (i2 < 0 || j2 < 0 || (ei != 0 && ei != 1) || (ej != 0 && ej != 1))
      throw std::invalid_argument("InverseEntryRequest: offsets");
  }
};

// Closed-form inverse entry. Binomials with possibly-negative upper index
// are the generalized falling-factorial kind.
inline Rat kinverse_entry(int n, const InverseEntryRequest& r) {
  r.validate(n);
  const int i1 = r.i1, i2 = r.i2, j1 = r.j1, j2 = r.j2;
  auto parity = [](int a) { return a % 2 == 0 ? 1 : -1; };
  const Rat sg(parity(i2 + j2));
  Rat s(0);
  if (r.ei == 1 && r.ej == 1) {
    for (int l1 = 0; l1 <= i1; ++l1)
      for (int l2 = 0; l2 <= j1; ++l2)
        s += Rat(parity(l1 + l2)) * gen_binomial(i2 - 1 + l1, l1) *
             gen_binomial(j2 - 1 + l2, l2) *
             detail::t_eval(n, TVariant::t11, i1 - l1, j1 - l2);
    return sg * s;
  }
  if (r.ei == 0 && r.ej == 0) {
    for (int l1 = 0; l1 <= i2; ++l1)
      for (int l2 = 0; l2 <= j2; ++l2)
        s += Rat(binomial(i2, l1) * binomial(j2, l2)) *
             detail::t_eval(n, TVariant::t00, i1 + l1, j1 + l2);
    return sg * s;
  }
  if (r.ei == 1 && r.ej == 0) {
    for (int l1 = 0; l1 <= i1; ++l1)
      for (int l2 = 0; l2 <= j2; ++l2)
        s += Rat(parity(l1)) * gen_binomial(i2 - 1 + l1, l1) *
             Rat(binomial(j2, l2)) *
             detail::t_eval(n, TVariant::t10, i1 - l1, j1 + l2);
    s = sg * s;
    const int x1 = i1, x2 = i1 + 2 * i2 + 1, y1 = j1, y2 = j1 + 2 * j2;
    if (x1 >= y1 && x1 + x2 < y1 + y2)
      s -= sg * gen_binomial(j2 - i2 - 1, i1 - j1);
    return s;
  }
  // (0,1): skew-symmetry of the inverse
  InverseEntryRequest sw{r.j1, r.j2, r.ej, r.i1, r.i2, r.ei};
  return -kinverse_entry(n, sw);
}

namespace detail {

// Exact solve K c = e_col by Gaussian elimination (for the few columns the
// closed form does not cover).
inline std::vector<Rat> solve_column(Matrix<Rat> a, int col) {
  const int N = static_cast<int>(a.size());
  std::vector<Rat> b(N, Rat(0));
  b[col] = Rat(1);
  for (int c = 0; c < N; ++c) {
    int piv = -1;
    for (int r = c; r < N; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("solve_column: singular matrix");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    Rat d = a[c][c];
    for (int j = c; j < N; ++j) a[c][j] /= d;
    b[c] /= d;
    for (int r = 0; r < N; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (int j = c; j < N; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  return b;
}

}  // namespace detail

// Full inverse matrix: closed-form entries wherever both first coordinates
// are <= 2n-1; the one or two remaining boundary columns (x1 = 2n) come
// from an exact linear solve, and the matching rows from skew-symmetry.
inline Matrix<Rat> kinverse_matrix(const KasteleynMatrix& km) {
  const auto& g = *km.graph;
  const int n = km.n;
  const int N = static_cast<int>(g.vertices.size());
  Matrix<Rat> inv(N, std::vector<Rat>(N, Rat(0)));
  for (int a = 0; a < N; ++a) {
    const Vtx& x = g.vertices[a];
    if (x.first > 2 * n - 1) continue;
    for (int b = 0; b < N; ++b) {
      const Vtx& y = g.vertices[b];
      if (y.first > 2 * n - 1) continue;
      inv[a][b] = kinverse_entry(n, InverseEntryRequest::from_vertices(n, x, y));
    }
  }
  for (int b = 0; b < N; ++b) {
    if (g.vertices[b].first <= 2 * n - 1) continue;
    auto col = detail::solve_column(km.k, b);
    for (int a = 0; a < N; ++a) {
      inv[a][b] = col[a];
      inv[b][a] = -col[a];
    }
  }
  return inv;
}

// Probability that all given edges are simultaneously present in a uniform
// perfect matching: prod K(v_{2k-1}, v_{2k}) * Pf((K^{-1}(v_i, v_j))^T).
inline Rat local_stat_prob(const KasteleynMatrix& km, const Matrix<Rat>& kinv,
                           const std::vector<std::pair<Vtx, Vtx>>& edge_list) {
  const auto& g = *km.graph;
  std::vector<int> verts;
  Rat prod(1);
  for (const auto& [u, v] : edge_list) {
    int iu = g.index_of(u.first, u.second);
    int iv = g.index_of(v.first, v.second);
    if (km.k[iu][iv] == 0)
      throw std::invalid_argument("local_stat_prob: not an edge");
    prod *= km.k[iu][iv];
    verts.push_back(iu);
    verts.push_back(iv);
  }
  for (size_t a = 0; a < verts.size(); ++a)
    for (size_t b = a + 1; b < verts.size(); ++b)
      if (verts[a] == verts[b])
        throw std::invalid_argument("local_stat_prob: repeated vertex");
  const int m = static_cast<int>(verts.size());
  Matrix<Rat> blk(m, std::vector<Rat>(m, Rat(0)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) blk[a][b] = kinv[verts[b]][verts[a]];
  return prod * pfaffian(std::move(blk));
}

inline Rat local_stat_prob(int n,
                           const std::vector<std::pair<Vtx, Vtx>>& edge_list) {
  KasteleynMatrix km = build_kasteleyn(n);
  return local_stat_prob(km, kinverse_matrix(km), edge_list);
}

}  // namespace asmtw
