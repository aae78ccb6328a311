#pragma once
// Dense skew-symmetric linear algebra over an arbitrary field type:
// Pfaffian by skew elimination with pivoting, and Gaussian inversion
// (the latter is used as an exact test oracle).

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

namespace asmtw {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

template <typename T>
double approx_abs(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::fabs(static_cast<double>(v));
  } else if constexpr (std::is_same_v<T, mpf_class>) {
    return std::fabs(v.get_d());
  } else {  // exact types: only zero/nonzero matters for pivoting
    return v == 0 ? 0.0 : 1.0;
  }
}

}  // namespace detail

template <typename T>
void check_skew(const Matrix<T>& a) {
  const size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("matrix not square");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      if (!(a[i][j] == -a[j][i]))
        throw std::invalid_argument("matrix not skew-symmetric");
}

// Pfaffian of an even-dimensional skew-symmetric matrix. Exact for exact
// types; for floating types the pivot with largest magnitude is chosen.
template <typename T>
T pfaffian(Matrix<T> a) {
  const int n = static_cast<int>(a.size());
  if (n % 2 != 0) throw std::invalid_argument("pfaffian: odd dimension");
  if (n == 0) return T(1);
  T pf(1);
  for (int k = 0; k < n; k += 2) {
    int piv = -1;
    double best = 0.0;
    for (int j = k + 1; j < n; ++j) {
      double m = detail::approx_abs(a[k][j]);
      if (m > best) {
        best = m;
        piv = j;
      }
    }
    if (piv < 0) return T(0);
    if (piv != k + 1) {
      std::swap(a[k + 1], a[piv]);
      for (int r = 0; r < n; ++r) std::swap(a[r][k + 1], a[r][piv]);
      pf = -pf;
    }
    pf *= a[k][k + 1];
    for (int i = k + 2; i < n; ++i)
      if (!(a[k][i] == 0)) {
        T c = a[k][i] / a[k][k + 1];
        for (int j = 0; j < n; ++j) a[i][j] -= c * a[k + 1][j];
        for (int j = 0; j < n; ++j) a[j][i] -= c * a[j][k + 1];
      }
    for (int i = k + 2; i < n; ++i)
      if (!(a[k + 1][i] == 0)) {
        T c = a[k + 1][i] / a[k + 1][k];
        for (int j = 0; j < n; ++j) a[i][j] -= c * a[k][j];
        for (int j = 0; j < n; ++j) a[j][i] -= c * a[j][k];
      }
  }
  return pf;
}

// Dense inverse by Gauss-Jordan elimination with partial pivoting.
template <typename T>
Matrix<T> invert(Matrix<T> a) {
  const int n = static_cast<int>(a.size());
  Matrix<T> inv(n, std::vector<T>(n, T(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = T(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = 0.0;
    for (int r = col; r < n; ++r) {
      double m = detail::approx_abs(a[r][col]);
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (piv < 0) throw std::invalid_argument("invert: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    T d = a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      T f = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace asmtw
