#pragma once
// Exact discrete Pfaffian point-process kernel on L_n = {0,...,n-1}, gap
// probabilities, and the resulting finite-n law of the path maximum. All
// contour integrals are evaluated as finite residue sums over the integer
// poles, so every production value is an exact rational.

#include <asmtw/pfaffian.hpp>
#include <asmtw/rational.hpp>

#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace asmtw {

// p(n,k,l): the signed factorial-ratio coefficient driving every residue
// sum. Zero when k < l; satisfies p(n,k,l) = (-1)^l p(n-l,k-l,0).
inline Rat p_coeff(int n, int k, int l) {
  if (n < 0 || k < 0 || l < 0 || k > n)
    throw std::invalid_argument("p_coeff: need 0 <= k <= n, l >= 0");
  if (k < l) return Rat(0);
  Rat v(factorial(n + k - 2 * l + 1) * factorial(2 * n - k - l + 1),
        factorial(k - l) * factorial(3 * n - k + 2 - 2 * l));
  v.canonicalize();
  v *= Rat((3 * n - 3 * k + 2) * catalan(n - k));
  if (k % 2 != 0) v = -v;
  return v;
}

namespace detail {

// Residue sum for the one-variable contour with integrand numerator
// (1+w)^{m-k} (plain G) or (1+w)^{m-k+1} (the H variant, where the extra
// linear factor in the integrand shifts the binomial's upper index).
inline Rat g_residue(int m, int z, bool h_variant) {
  if (z < 0) return Rat(0);
  Rat s(0);
  for (int k = 0; 2 * k <= z; ++k)
    s += p_coeff(m, k, 0) * Rat(binomial(m - k + (h_variant ? 1 : 0), z - 2 * k));
  if (m % 2 != 0) s = -s;
  return s;
}

}  // namespace detail

// G-bar(n,l,x): zero when l > floor(x/2) (no poles inside the contour);
// obeys the shift law G-bar(n,l,x) = G-bar(n-l,0,x-2l).
inline Rat g_bar(int n, int l, int x) {
  if (l < 0) throw std::invalid_argument("g_bar: l >= 0 required");
  return detail::g_residue(n - l, x - 2 * l, false);
}

// H-bar(n,l,x): same structure with the extra (n-w+1)-type factor; the pole
// outside the contour contributes nothing, leaving shifted binomials.
inline Rat h_bar(int n, int l, int x) {
  if (l < 0) throw std::invalid_argument("h_bar: l >= 0 required");
  return detail::g_residue(n - l, x - 2 * l, true);
}

// Prefix sums sum_{m=0}^{x} H-bar(n,l,x-m), making f22/f12 separable.
inline Rat h_bar_cumsum(int n, int l, int x) {
  Rat s(0);
  for (int z = 0; z <= x; ++z) s += h_bar(n, l, z);
  return s;
}

struct KernelBlock {
  int x = 0, y = 0;
  Rat f11, f12, f21, f22;
};

// Shared per-n tables of G-bar(l,x) and cumulative H-bar(l,x) for
// x in [0, n-1], l in [0, floor(n/2)+1]. Built once, then read-only.
class KernelTable {
 public:
  // xmax < 0 covers all of L_n; a smaller xmax restricts the table to the
  // coordinates actually needed (gap windows, rescaled-kernel patches).
  explicit KernelTable(int n, int xmax = -1) : n_(n) {
    if (n < 1) throw std::invalid_argument("KernelTable: n >= 1 required");
    if (xmax < 0 || xmax > n - 1) xmax = n - 1;
    xmax_ = xmax;
    const int lmax = xmax / 2 + 1;
    gb_.assign(lmax + 1, std::vector<Rat>(xmax + 1, Rat(0)));
    hc_.assign(lmax + 1, std::vector<Rat>(xmax + 1, Rat(0)));
    for (int l = 0; l <= lmax; ++l) {
      Rat run(0);
      for (int x = 0; x <= xmax; ++x) {
        gb_[l][x] = g_bar(n, l, x);
        run += h_bar(n, l, x);
        hc_[l][x] = run;
      }
    }
  }

  int n() const { return n_; }
  const Rat& gb(int l, int x) const { return gb_[l][x]; }
  const Rat& hc(int l, int x) const { return hc_[l][x]; }

  // kappa < 0 selects the minimal admissible cutoff min(x/2, y/2); any
  // larger kappa only appends vanishing terms, so the value is unchanged.
  KernelBlock block(int x, int y, int kappa = -1) const {
    if (x < 0 || x > xmax_ || y < 0 || y > xmax_)
      throw std::invalid_argument("kernel_block: coordinates outside table");
    const int kmin = std::min(x / 2, y / 2);
    int kap = kappa < 0 ? kmin : kappa;
    if (kap < kmin) throw std::invalid_argument("kernel_block: kappa too small");
    kap = std::min(kap, static_cast<int>(gb_.size()) - 2);
    const Rat sign(n_ % 2 == 0 ? 1 : -1);
    KernelBlock b;
    b.x = x;
    b.y = y;
    for (int l = 0; l <= kap; ++l) {
      b.f11 += gb_[l + 1][x] * gb_[l][y] - gb_[l][x] * gb_[l + 1][y];
      b.f22 += hc_[l + 1][x] * hc_[l][y] - hc_[l][x] * hc_[l + 1][y];
      b.f12 -= gb_[l + 1][x] * hc_[l][y] - gb_[l][x] * hc_[l + 1][y];
    }
    b.f22 += Rat((x > y) - (x < y)) - sign * hc_[0][x] + sign * hc_[0][y];
    b.f12 += sign * gb_[0][x];
    // f21 from the companion block at swapped arguments
    Rat f12yx(0);
    for (int l = 0; l <= kap; ++l)
      f12yx -= gb_[l + 1][y] * hc_[l][x] - gb_[l][y] * hc_[l + 1][x];
    f12yx += sign * gb_[0][y];
    b.f21 = -f12yx;
    return b;
  }

 private:
  int n_;
  int xmax_ = 0;
  std::vector<std::vector<Rat>> gb_, hc_;
};

inline std::shared_ptr<const KernelTable> build_kernel_table(int n) {
  static std::mutex mu;
  static std::vector<std::weak_ptr<const KernelTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<int>(cache.size()) <= n) cache.resize(n + 1);
  if (auto p = cache[n].lock()) return p;
  auto p = std::make_shared<const KernelTable>(n);
  cache[n] = p;
  return p;
}

inline KernelBlock kernel_block(int n, int x, int y, int kappa = -1) {
  return build_kernel_table(n)->block(x, y, kappa);
}

// 2s x 2s matrix J - f on {0..s-1}, basis interleaved as
// (x=0,row1),(x=0,row2),(x=1,row1),...; J is block-diag([[0,1],[-1,0]]).
inline Matrix<Rat> gap_matrix(int n, int s) {
  if (s < 0 || s > n) throw std::invalid_argument("gap_matrix: 0 <= s <= n");
  auto tab = build_kernel_table(n);
  Matrix<Rat> m(2 * s, std::vector<Rat>(2 * s, Rat(0)));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      KernelBlock b = tab->block(i, j);
      m[2 * i][2 * j] = -b.f11;
      m[2 * i][2 * j + 1] = -b.f12;
      m[2 * i + 1][2 * j] = -b.f21;
      m[2 * i + 1][2 * j + 1] = -b.f22;
      if (i == j) {
        m[2 * i][2 * j + 1] += 1;
        m[2 * i + 1][2 * j] -= 1;
      }
    }
  return m;
}

// P[no particle in {0..s-1}] = P[X >= s+1], exact.
inline Rat gap_probability(int n, int s) {
  if (s == 0) return Rat(1);
  return pfaffian(gap_matrix(n, s));
}

// Same Pfaffian evaluated in floating point with the given mantissa width.
inline mpf_class gap_probability_f(int n, int s, int bits = 256) {
  if (s == 0) return mpf_class(1, bits);
  Matrix<Rat> gm = gap_matrix(n, s);
  Matrix<mpf_class> m(gm.size(), std::vector<mpf_class>(gm.size(), mpf_class(0, bits)));
  for (size_t i = 0; i < gm.size(); ++i)
    for (size_t j = 0; j < gm.size(); ++j) m[i][j] = mpf_class(gm[i][j], bits);
  return pfaffian(std::move(m));
}

// Exact law of the path maximum: pairs (value, probability) for values in
// {-1, 0, ..., n-1}; P[max = n-m] = gap(m-1) - gap(m), P[max = -1] = gap(n).
inline std::vector<std::pair<int, Rat>> law_of_max_T(int n) {
  std::vector<Rat> gp(n + 1);
  gp[0] = Rat(1);
  for (int s = 1; s <= n; ++s) gp[s] = gap_probability(n, s);
  std::vector<std::pair<int, Rat>> law;
  law.emplace_back(-1, gp[n]);
  for (int m = n; m >= 1; --m) law.emplace_back(n - m, gp[m - 1] - gp[m]);
  return law;
}

}  // namespace asmtw
