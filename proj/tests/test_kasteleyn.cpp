#include <asmtw/asm_matrix.hpp>
#include <asmtw/kasteleyn.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace asmtw;

namespace {

using cd = std::complex<double>;

// (1/2pi i) closed contour integral of f over |z| = radius by the
// trapezoid rule, which extracts Laurent coefficients to aliasing error.
template <typename F>
cd contour(F f, double radius, int nodes) {
  cd acc(0.0, 0.0);
  for (int k = 0; k < nodes; ++k) {
    double th = 2.0 * M_PI * k / nodes;
    cd z = radius * cd(std::cos(th), std::sin(th));
    acc += f(z) * z;
  }
  return acc / static_cast<double>(nodes);
}

// Numerical value of the double contour integral from the collapse lemma.
double s_pair_integral(int l1, int l2, int nodes = 128) {
  cd acc = contour(
      [&](cd s1) {
        return contour(
            [&](cd s2) {
              return (s1 - s2) /
                     ((s1 * s2 - 1.0) * std::pow(s1, l1 + 1) *
                      std::pow(s2, l2 + 1));
            },
            0.5, nodes);
      },
      0.5, nodes);
  REQUIRE(std::abs(acc.imag()) < 1e-10);
  return acc.real();
}

// Single r-integrals behind the boundary formulas and t-matrices.
double r_integral(int n, int k, int i, bool with_geom, int nodes = 256) {
  cd acc = contour(
      [&](cd r) {
        cd v = std::pow(1.0 + r, n - k) / std::pow(r, i - 2 * k + (with_geom ? 0 : 1));
        if (with_geom) v /= (1.0 - r);
        return v;
      },
      0.5, nodes);
  REQUIRE(std::abs(acc.imag()) < 1e-10);
  return acc.real();
}

double pd(int n, int k, int l) { return Rat(p_coeff(n, k, l)).get_d(); }

// Direct numerical evaluation of the quadruple-contour t-matrix entries
// (the r- and s-integrals factor, so each term is a product of quadratures).
double t_quadrature(int n, TVariant variant, int i, int j) {
  bool gi = (variant == TVariant::t00 || variant == TVariant::t01);
  bool gj = (variant == TVariant::t00 || variant == TVariant::t10);
  double s = 0.0;
  for (int k1 = 0; k1 <= n; ++k1)
    for (int l1 = 0; l1 <= k1; ++l1)
      for (int k2 = 0; k2 <= n; ++k2)
        for (int l2 = 0; l2 <= k2; ++l2)
          s += pd(n, k1, l1) * pd(n, k2, l2) * r_integral(n, k1, i, gi) *
               r_integral(n, k2, j, gj) * s_pair_integral(l1, l2);
  switch (variant) {
    case TVariant::t00:
      s += (i < j ? 1 : 0) * ((i + 1) % 2) * (j % 2) -
           (i > j ? 1 : 0) * (i % 2) * ((j + 1) % 2);
      s += ((j + 1) % 2) * Rat(h0b(n, i)).get_d() -
           ((i + 1) % 2) * Rat(h0b(n, j)).get_d();
      break;
    case TVariant::t10:
      s += ((j + 1) % 2) * Rat(h1b(n, i)).get_d();
      break;
    case TVariant::t01:
      s -= ((i + 1) % 2) * Rat(h1b(n, j)).get_d();
      break;
    case TVariant::t11:
      break;
  }
  return s;
}

Rat edge_frequency(int n, int u, int v) {
  long hits = 0, total = 0;
  for_each_matching(n, [&](const DimerMatching& m) {
    ++total;
    if (m.covers(std::min(u, v), std::max(u, v))) ++hits;
  });
  Rat r(hits, total);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("signed adjacency matrix is skew and counts matchings") {
  for (int n = 1; n <= 6; ++n) {
    KasteleynMatrix km = build_kasteleyn(n);
    REQUIRE_NOTHROW(check_skew(km.k));
    Rat pf = pfaffian_exact(km.k);
    REQUIRE(abs(pf) == Rat(count_asm(n + 1)));
  }
  // frozen signed values under the lexicographic vertex order
  REQUIRE(pfaffian_exact(build_kasteleyn(2).k) == Rat(-7));
  REQUIRE(pfaffian_exact(build_kasteleyn(3).k) == Rat(-42));
}

TEST_CASE("exact pfaffian basics") {
  Matrix<Rat> two = {{Rat(0), Rat(5)}, {Rat(-5), Rat(0)}};
  REQUIRE(pfaffian_exact(two) == Rat(5));

  Matrix<Rat> four(4, std::vector<Rat>(4, Rat(0)));
  four[0][1] = Rat(3);
  four[1][0] = Rat(-3);
  four[2][3] = Rat(-2, 7);
  four[3][2] = Rat(2, 7);
  REQUIRE(pfaffian_exact(four) == Rat(-6, 7));

  Matrix<Rat> odd(3, std::vector<Rat>(3, Rat(0)));
  REQUIRE_THROWS_AS(pfaffian_exact(odd), std::invalid_argument);
  Matrix<Rat> notskew = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  REQUIRE_THROWS_AS(pfaffian_exact(notskew), std::invalid_argument);

  // Pf^2 = det for the size-2 Kasteleyn matrix: det of a direct product
  // check via the matching count instead of a separate determinant routine
  Rat pf2 = pfaffian_exact(build_kasteleyn(2).k);
  REQUIRE(pf2 * pf2 == Rat(49));
}

TEST_CASE("boundary formulas match contour quadrature") {
  for (int n = 2; n <= 3; ++n) {
    for (int i = 0; i <= 2 * n - 1; ++i) {
      double want1 = 0.0, want0 = 0.0;
      for (int k = 0; k <= n; ++k) {
        want1 += pd(n, k, 0) * r_integral(n, k, i, false);
        want0 += pd(n, k, 0) * r_integral(n, k, i, true);
      }
      want0 -= (i + 1) % 2;
      REQUIRE(std::abs(Rat(h1b(n, i)).get_d() - want1) < 1e-10);
      REQUIRE(std::abs(Rat(h0b(n, i)).get_d() - want0) < 1e-10);
    }
  }
  REQUIRE_THROWS_AS(h0b(2, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(h1b(2, -1), std::invalid_argument);
}

TEST_CASE("double contour collapses to the index shift indicator") {
  for (int l1 = 0; l1 <= 10; ++l1)
    for (int l2 = 0; l2 <= 10; ++l2) {
      double want = (l2 == l1 + 1 ? 1.0 : 0.0) - (l2 == l1 - 1 ? 1.0 : 0.0);
      REQUIRE(std::abs(s_pair_integral(l1, l2) - want) < 1e-10);
    }
}

TEST_CASE("t-matrix entries match quadruple quadrature at n=2") {
  const int n = 2;
  for (TVariant v :
       {TVariant::t00, TVariant::t10, TVariant::t01, TVariant::t11})
    for (int i = 0; i <= 2 * n - 1; ++i)
      for (int j = 0; j <= 2 * n - 1; ++j) {
        double got = Rat(t_matrix(n, v, i, j)).get_d();
        REQUIRE(std::abs(got - t_quadrature(n, v, i, j)) < 1e-8);
      }
  for (int i = 0; i <= 2 * n - 1; ++i)
    REQUIRE(t_matrix(n, TVariant::t11, i, i) == Rat(0));
  REQUIRE_THROWS_AS(t_matrix(2, TVariant::t00, 4, 0), std::invalid_argument);
}

TEST_CASE("closed-form inverse entries equal the dense inverse") {
  for (int n = 1; n <= 3; ++n) {
    KasteleynMatrix km = build_kasteleyn(n);
    Matrix<Rat> dense = invert(km.k);
    const auto& g = *km.graph;
    const int N = static_cast<int>(g.vertices.size());
    int covered = 0;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        const Vtx& x = g.vertices[a];
        const Vtx& y = g.vertices[b];
        if (x.first > 2 * n - 1 || y.first > 2 * n - 1) continue;
        auto req = InverseEntryRequest::from_vertices(n, x, y);
        REQUIRE(kinverse_entry(n, req) == dense[a][b]);
        ++covered;
      }
    REQUIRE(covered > 0);
  }
}

TEST_CASE("assembled inverse multiplies back to the identity") {
  for (int n = 1; n <= 4; ++n) {
    KasteleynMatrix km = build_kasteleyn(n);
    Matrix<Rat> inv = kinverse_matrix(km);
    const int N = static_cast<int>(inv.size());
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        REQUIRE(inv[a][b] == -inv[b][a]);
        Rat dot(0);
        for (int c = 0; c < N; ++c) dot += km.k[a][c] * inv[c][b];
        REQUIRE(dot == Rat(a == b ? 1 : 0));
      }
  }
}

TEST_CASE("local statistics agree with enumeration") {
  REQUIRE(local_stat_prob(2, {}) == Rat(1));
  REQUIRE(local_stat_prob(2, {{{0, 1}, {0, 2}}}) == Rat(5, 7));

  for (int n = 2; n <= 4; ++n) {
    KasteleynMatrix km = build_kasteleyn(n);
    Matrix<Rat> inv = kinverse_matrix(km);
    const auto& g = *km.graph;
    for (const auto& [u, v] : g.edges) {
      Rat p = local_stat_prob(km, inv, {{g.vertices[u], g.vertices[v]}});
      REQUIRE(p >= Rat(0));
      REQUIRE(p <= Rat(1));
      REQUIRE(p == edge_frequency(n, u, v));
    }
  }

  // pairs of disjoint edges at n=2
  {
    const int n = 2;
    KasteleynMatrix km = build_kasteleyn(n);
    Matrix<Rat> inv = kinverse_matrix(km);
    const auto& g = *km.graph;
    long total = 0;
    std::vector<DimerMatching> all = enumerate_matchings(n);
    total = static_cast<long>(all.size());
    for (size_t e1 = 0; e1 < g.edges.size(); ++e1)
      for (size_t e2 = e1 + 1; e2 < g.edges.size(); ++e2) {
        auto [a, b] = g.edges[e1];
        auto [c, d] = g.edges[e2];
        if (a == c || a == d || b == c || b == d) continue;
        Rat p = local_stat_prob(
            km, inv, {{g.vertices[a], g.vertices[b]},
                      {g.vertices[c], g.vertices[d]}});
        long hits = 0;
        for (const auto& m : all)
          if (m.covers(a, b) && m.covers(c, d)) ++hits;
        Rat want(hits, total);
        want.canonicalize();
        REQUIRE(p == want);
      }
  }

  // shared vertex and non-edge requests are rejected
  KasteleynMatrix km = build_kasteleyn(2);
  Matrix<Rat> inv = kinverse_matrix(km);
  REQUIRE_THROWS_AS(
      local_stat_prob(km, inv, {{{0, 1}, {0, 2}}, {{0, 2}, {0, 3}}}),
      std::invalid_argument);
  REQUIRE_THROWS_AS(local_stat_prob(km, inv, {{{0, 1}, {3, 4}}}),
                    std::invalid_argument);
}
