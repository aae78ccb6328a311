#pragma once
// The topmost level line of the corner-sum height function, traced as the
// unique walk separating height-n faces from lower ones, plus the
// first-defect observable on corner-sum matrices.

#include <asmtw/asm_matrix.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace asmtw {

// Values T(t) for t in {-n..n}. Values lie in [-1, n] and consecutive
// values differ by at most 1. Endpoints are 0 unless the level line
// detaches from the boundary there, in which case end segments sit at -1;
// the fully frozen configuration is the constant -1 path.
struct TopPath {
  int n = 0;
  std::vector<int> values;  // index t+n

  TopPath() = default;
  TopPath(int n_, std::vector<int> v) : n(n_), values(std::move(v)) { validate(); }

  int at(int t) const { return values[t + n]; }
  int max_value() const {
    int m = values[0];
    for (int v : values) m = std::max(m, v);
    return m;
  }

  void validate() const {
    if (n < 1 || static_cast<int>(values.size()) != 2 * n + 1)
      throw std::invalid_argument("TopPath: wrong length");
    if (at(-n) > 0 || at(n) > 0)
      throw std::invalid_argument("TopPath: endpoints must be 0 or -1");
    for (int t = -n; t <= n; ++t) {
      if (at(t) < -1 || at(t) > n)
        throw std::invalid_argument("TopPath: value out of [-1,n]");
      if (t < n && std::abs(at(t + 1) - at(t)) > 1)
        throw std::invalid_argument("TopPath: step larger than 1");
    }
  }
};

// Smallest m >= 1 such that some entry on the m-th antidiagonal from the
// top-right corner differs from n; n+1 for the fully frozen matrix.
inline int x_gog(const PcsmMatrix& c) {
  c.validate();
  const int n = c.n;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= m; ++k)
      if (c.at(k, n - m + k) != n) return m;
  return n + 1;
}

namespace detail {

// All geometry below is in doubled coordinates so face centers (which live
// on the half-integer grid) stay integral.
struct PathGeometry {
  const PcsmMatrix& c;
  int n;

  // Height at the face whose center is (A/2, B/2).
  int height(int A, int B) const {
    // Interior face center (2j - 3/2, 2n - 2i + 3/2).
    if ((A + 3) % 4 == 0 && (4 * n + 3 - B) % 4 == 0) {
      int j = (A + 3) / 4, i = (4 * n + 3 - B) / 4;
      if (i >= 1 && i <= n && j >= 1 && j <= n) return c.at(i, j);
    }
    if (B == -1 && (A + 3) % 4 == 0) {  // bottom boundary faces
      int i = (A + 3) / 4;
      if (i >= 1 && i <= n + 1) return i - 1;
    }
    if (A == -3 && (B + 1) % 4 == 0) {  // left boundary faces
      int j = (B + 1) / 4;
      if (j >= 1 && j <= n + 1) return j - 1;
    }
    return n;
  }

  // Center of the hexagonal face containing the diamond centered at (m1,m2).
  std::pair<int, int> face_center(int m1, int m2) const {
    if (m1 % 2 != 0) return {2 * m1 - 1, 2 * m2 + 1};
    return {2 * m1 + 1, 2 * m2 - 1};
  }

  bool in_v1(int x, int y) const {
    return (((x % 2) + 2) % 2 == 1) && (y % 2 == 0) && x >= -1 &&
           x <= 2 * n - 1 && y >= 0 && y <= 2 * n && !(x == -1 && y == 0);
  }
  bool in_v2(int x, int y) const {
    return (x % 2 == 0) && (y % 2 == 1) && x >= 0 && x <= 2 * n && y >= 1 &&
           y <= 2 * n + 1 && !(x == 2 * n && y == 2 * n + 1);
  }

  // Whether the edge from V1 vertex (x,y) in direction d separates faces of
  // different heights (i.e. lies on the top level line).
  bool is_path_edge(int x, int y, int dx, int dy) const {
    int a1, a2, b1, b2;  // adjacent diamond centers
    if (dx == 1 && dy == 1) {
      a1 = x + 1; a2 = y; b1 = x; b2 = y + 1;
    } else if (dx == -1 && dy == 1) {
      a1 = x; a2 = y + 1; b1 = x - 1; b2 = y;
    } else {
      a1 = x + 1; a2 = y; b1 = x; b2 = y - 1;
    }
    auto [fa, fb] = std::pair(face_center(a1, a2), face_center(b1, b2));
    return height(fa.first, fa.second) != height(fb.first, fb.second);
  }

  bool edge_allowed(int x, int y, int dx, int dy) const {
    if (!in_v1(x, y)) return false;
    if (dx == 1 && dy == 1 && x == 2 * n - 1 && y == 2 * n) return false;
    if (dx == -1 && dy == 1 && x == -1) return false;
    if (dx == 1 && dy == -1 && y == 0) return false;
    return in_v2(x + dx, y + dy);
  }
};

}  // namespace detail

inline TopPath top_path(const PcsmMatrix& c) {
  c.validate();
  const int n = c.n;
  detail::PathGeometry geo{c, n};
  constexpr int dirs[3][2] = {{1, 1}, {-1, 1}, {1, -1}};

  // Walk from (-1, 2n) to (2n-1, 0); at each vertex exactly one incident
  // level-line edge other than the incoming one continues the path.
  int cx = -1, cy = 2 * n;
  const int ex = 2 * n - 1, ey = 0;
  std::vector<std::pair<int, int>> path = {{cx, cy}};
  // Edge identified by its V1 endpoint and direction.
  int px = 0, py = 0, pdx = 0, pdy = 0;
  bool have_prev = false;
  while (!(cx == ex && cy == ey)) {
    int found = 0, nx = 0, ny = 0, fx = 0, fy = 0, fdx = 0, fdy = 0;
    for (auto [dx, dy] : dirs) {
      int ux, uy, wx, wy;  // edge = (V1 vertex u, u + d); w = other endpoint
      if (geo.in_v1(cx, cy)) {
        ux = cx; uy = cy; wx = cx + dx; wy = cy + dy;
      } else {
        ux = cx - dx; uy = cy - dy; wx = ux; wy = uy;
      }
      if (!geo.edge_allowed(ux, uy, dx, dy)) continue;
      if (have_prev && ux == px && uy == py && dx == pdx && dy == pdy) continue;
      if (!geo.is_path_edge(ux, uy, dx, dy)) continue;
      ++found;
      nx = wx; ny = wy; fx = ux; fy = uy; fdx = dx; fdy = dy;
    }
    if (found != 1)
      throw std::logic_error("top_path: walk is not uniquely determined (" +
                             std::to_string(found) + " continuations at (" +
                             std::to_string(cx) + "," + std::to_string(cy) + "))");
    cx = nx; cy = ny;
    px = fx; py = fy; pdx = fdx; pdy = fdy;
    have_prev = true;
    path.push_back({cx, cy});
  }

  // Convert to (t,h); where two path vertices share t, keep the one with
  // larger x (the upper one on the level line).
  std::vector<std::optional<std::pair<int, int>>> th(2 * n + 1);  // (h, x)
  for (auto [x, y] : path) {
    int t = (x - y + 1) / 2;
    int num = (y - 2 * n) + (x + 1);
    if (num % 2 != 0) throw std::logic_error("top_path: non-integer height");
    int h = num / 2 - 1;
    auto& slot = th[t + n];
    if (!slot || x > slot->second) slot = std::make_pair(h, x);
  }
  std::vector<int> values(2 * n + 1);
  for (int i = 0; i <= 2 * n; ++i) {
    if (!th[i]) throw std::logic_error("top_path: missing abscissa");
    values[i] = th[i]->first;
  }
  return TopPath(n, std::move(values));
}

}  // namespace asmtw
