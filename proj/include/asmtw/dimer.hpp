#pragma once
// The TSSCPP dimer graph: vertices on a staircase region, horizontal /
// vertical / diagonal edges, hexagonal and triangular faces. Perfect
// matchings, their enumeration, the first-uncovered-edge observable, and
// the bijection with magog triangles.

#include <asmtw/gog_magog.hpp>
#include <asmtw/rational.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace asmtw {

using Vtx = std::pair<int, int>;  // (x1, x2)

struct DimerGraph {
  int n = 0;
  std::vector<Vtx> vertices;                 // lexicographic order
  std::vector<std::vector<int>> adjacency;   // neighbor vertex indices
  std::vector<std::pair<int, int>> edges;    // (u,v), u < v
  std::vector<std::vector<int>> faces;       // internal faces, CCW vertex cycles
  std::vector<std::vector<int>> index_grid;  // (x1,x2) -> vertex index or -1

  bool has_vertex(int x1, int x2) const {
    return x1 >= 0 && x1 <= 2 * n && x2 >= 0 && x2 <= 2 * n + 1 &&
           index_grid[x1][x2] >= 0;
  }
  int index_of(int x1, int x2) const {
    if (!has_vertex(x1, x2))
      throw std::out_of_range("DimerGraph: vertex not in graph");
    return index_grid[x1][x2];
  }
  bool has_edge(int u, int v) const {
    for (int w : adjacency[u])
      if (w == v) return true;
    return false;
  }
};

// Builds the size-n graph: vertices {(x1,x2): 0 <= x1 <= 2n, x1 <= x2 <= 2n+1}
// minus (2n,2n+1) for odd n; horizontal edges where x1+x2 is odd, vertical
// edges up to x2 = 2n, and diagonal edges along x1 = x2.
inline std::shared_ptr<const DimerGraph> build_dimer_graph(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const DimerGraph>> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  if (n < 1) throw std::invalid_argument("build_dimer_graph: n must be >= 1");
  auto g = std::make_shared<DimerGraph>();
  g->n = n;
  const bool odd = (n % 2 == 1);
  g->index_grid.assign(2 * n + 1, std::vector<int>(2 * n + 2, -1));
  for (int x1 = 0; x1 <= 2 * n; ++x1)
    for (int x2 = x1; x2 <= 2 * n + 1; ++x2) {
      if (odd && x1 == 2 * n && x2 == 2 * n + 1) continue;
      g->index_grid[x1][x2] = static_cast<int>(g->vertices.size());
      g->vertices.emplace_back(x1, x2);
    }
  g->adjacency.assign(g->vertices.size(), {});
  auto add_edge = [&](int ax1, int ax2, int bx1, int bx2) {
    if (!g->has_vertex(ax1, ax2) || !g->has_vertex(bx1, bx2)) return;
    int u = g->index_of(ax1, ax2), v = g->index_of(bx1, bx2);
    if (u > v) std::swap(u, v);
    g->edges.emplace_back(u, v);
    g->adjacency[u].push_back(v);
    g->adjacency[v].push_back(u);
  };
  for (int x1 = 0; x1 <= 2 * n - 1; ++x1)
    for (int x2 = x1; x2 <= 2 * n + 1; ++x2)
      if ((x1 + x2) % 2 == 1) add_edge(x1, x2, x1 + 1, x2);
  for (int x1 = 0; x1 <= 2 * n - (odd ? 1 : 0); ++x1)
    for (int x2 = x1; x2 <= 2 * n; ++x2) add_edge(x1, x2, x1, x2 + 1);
  for (int x1 = 0; x1 <= 2 * n - 1; ++x1) add_edge(x1, x1, x1 + 1, x1 + 1);
  std::sort(g->edges.begin(), g->edges.end());
  for (auto& nb : g->adjacency) std::sort(nb.begin(), nb.end());

  // Internal faces, counter-clockwise. Hexagonal faces are 1x2 rectangles
  // with midpoints on both vertical sides; triangles sit along the diagonal.
  auto try_face = [&](const std::vector<Vtx>& cyc) {
    std::vector<int> idx;
    for (const auto& [a, b] : cyc) {
      if (!g->has_vertex(a, b)) return;
      idx.push_back(g->index_of(a, b));
    }
    for (size_t t = 0; t < idx.size(); ++t)
      if (!g->has_edge(idx[t], idx[(t + 1) % idx.size()])) return;
    g->faces.push_back(std::move(idx));
  };
  for (int x = 0; x <= 2 * n - 1; ++x)
    for (int y = x + 1; y <= 2 * n - 1; ++y)
      if ((x + y) % 2 == 1)
        try_face({{x, y}, {x + 1, y}, {x + 1, y + 1}, {x + 1, y + 2},
                  {x, y + 2}, {x, y + 1}});
  for (int x = 0; x <= 2 * n - 1; ++x)
    try_face({{x, x}, {x + 1, x + 1}, {x, x + 1}});

  std::lock_guard<std::mutex> lk(mu);
  auto [it, _] = cache.emplace(n, std::move(g));
  return it->second;
}

// Perfect matching of the size-n graph, stored as sorted (u,v) index pairs.
struct DimerMatching {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted

  DimerMatching() = default;
  DimerMatching(int n_, std::vector<std::pair<int, int>> e)
      : n(n_), edges(std::move(e)) {
    normalize();
    validate();
  }

  void normalize() {
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
  }

  void validate() const {
    auto g = build_dimer_graph(n);
    std::vector<int> cover(g->vertices.size(), 0);
    for (const auto& [u, v] : edges) {
      if (u < 0 || v >= static_cast<int>(g->vertices.size()) || !g->has_edge(u, v))
        throw std::invalid_argument("DimerMatching: non-edge present");
      ++cover[u];
      ++cover[v];
    }
    for (int c : cover)
      if (c != 1)
        throw std::invalid_argument("DimerMatching: not a perfect matching");
  }

  bool covers(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  }

  bool operator==(const DimerMatching& o) const {
    return n == o.n && edges == o.edges;
  }
  bool operator<(const DimerMatching& o) const { return edges < o.edges; }
};

inline void for_each_matching(int n,
                              const std::function<void(const DimerMatching&)>& f,
                              int cap = kEnumerationCap) {
  if (n > cap)
    throw std::invalid_argument("for_each_matching: enumeration cap exceeded");
  auto g = build_dimer_graph(n);
  const int nv = static_cast<int>(g->vertices.size());
  std::vector<int> mate(nv, -1);
  std::vector<std::pair<int, int>> chosen;
  std::function<void(int)> rec = [&](int v0) {
    while (v0 < nv && mate[v0] >= 0) ++v0;
    if (v0 == nv) {
      f(DimerMatching(n, chosen));
      return;
    }
    for (int w : g->adjacency[v0]) {
      if (w < v0 || mate[w] >= 0) continue;
      mate[v0] = w;
      mate[w] = v0;
      chosen.emplace_back(v0, w);
      rec(v0 + 1);
      chosen.pop_back();
      mate[v0] = -1;
      mate[w] = -1;
    }
  };
  rec(0);
}

inline std::vector<DimerMatching> enumerate_matchings(int n,
                                                      int cap = kEnumerationCap) {
  std::vector<DimerMatching> out;
  for_each_matching(n, [&](const DimerMatching& m) { out.push_back(m); }, cap);
  return out;
}

// Smallest m >= 1 such that the vertical edge ((m-1,m),(m-1,m+1)) is not in
// the matching; n+1 if all of them are (the frozen diagonal band).
inline int x_magog(const DimerMatching& m) {
  auto g = build_dimer_graph(m.n);
  for (int mm = 1; mm <= m.n; ++mm) {
    int u = g->index_of(mm - 1, mm);
    int v = g->index_of(mm - 1, mm + 1);
    if (!m.covers(u, v)) return mm;
  }
  return m.n + 1;
}

// Row k of the triangle lists the x-coordinates of matched vertical edges on
// the diagonal x2 - x1 = 2(n-k)+1; subtracting the staircase (j-2) per
// position makes it a magog triangle.
inline MagogTrapezoid matching_to_magog(const DimerMatching& m) {
  m.validate();
  const int n = m.n;
  auto g = build_dimer_graph(n);
  std::vector<std::vector<int>> rows(n);
  for (int k = 1; k <= n; ++k) {
    const int off = 2 * (n - k) + 1;
    std::vector<int> xs;
    for (int i = 0; i <= 2 * k - 1; ++i) {
      if (!g->has_vertex(i, i + off) || !g->has_vertex(i, i + off + 1)) continue;
      if (m.covers(g->index_of(i, i + off), g->index_of(i, i + off + 1)))
        xs.push_back(i);
    }
    if (static_cast<int>(xs.size()) != k)
      throw std::logic_error("matching_to_magog: wrong vertical-edge count");
    for (int j = 1; j <= k; ++j) rows[k - 1].push_back(xs[j - 1] - (j - 2));
  }
  return MagogTrapezoid(n, n, std::move(rows));
}

// The vertical edges prescribed by the triangle determine the matching;
// the rest is completed by forced-move propagation with a search fallback.
inline DimerMatching magog_to_matching(const MagogTrapezoid& mg) {
  mg.validate();
  if (mg.k != mg.n)
    throw std::invalid_argument("magog_to_matching: need a full triangle (k = n)");
  const int n = mg.n;
  auto g = build_dimer_graph(n);
  const int nv = static_cast<int>(g->vertices.size());
  std::vector<int> mate(nv, -1);
  std::vector<std::pair<int, int>> chosen;
  auto place = [&](int u, int v) {
    if (mate[u] >= 0 || mate[v] >= 0)
      throw std::invalid_argument("magog_to_matching: inconsistent triangle");
    mate[u] = v;
    mate[v] = u;
    if (u > v) std::swap(u, v);
    chosen.emplace_back(u, v);
  };
  for (int k = 1; k <= n; ++k) {
    const int off = 2 * (n - k) + 1;
    for (int j = 1; j <= k; ++j) {
      const int i = mg.at(k, j) + (j - 2);
      place(g->index_of(i, i + off), g->index_of(i, i + off + 1));
    }
  }
  // The triangle prescribes exactly the vertical dimers on the odd
  // diagonals x2 - x1 = 2(n-k)+1; the completion (horizontal, diagonal and
  // even-diagonal vertical dimers) is unique, so a first-branch DFS suffices.
  bool done = false;
  std::vector<std::pair<int, int>> result;
  std::function<void(int)> rec = [&](int v0) {
    if (done) return;
    while (v0 < nv && mate[v0] >= 0) ++v0;
    if (v0 == nv) {
      result = chosen;
      done = true;
      return;
    }
    for (int w : g->adjacency[v0]) {
      if (mate[w] >= 0) continue;
      auto [a, b] = g->vertices[v0];
      auto [c, d] = g->vertices[w];
      if (a == c && std::abs(b - d) == 1 && (std::min(b, d) - a) % 2 == 1)
        continue;  // odd-diagonal vertical dimers are fixed by the triangle
      mate[v0] = w;
      mate[w] = v0;
      chosen.emplace_back(std::min(v0, w), std::max(v0, w));
      rec(v0 + 1);
      if (done) return;
      chosen.pop_back();
      mate[v0] = -1;
      mate[w] = -1;
    }
  };
  rec(0);
  if (!done)
    throw std::invalid_argument("magog_to_matching: no completion exists");
  return DimerMatching(n, std::move(result));
}

}  // namespace asmtw
