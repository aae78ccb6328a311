#include <asmtw/glauber.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

using namespace asmtw;

TEST_CASE("rng: deterministic and seed-sensitive") {
  Xoshiro256pp a(42), b(42), c(43);
  bool differ = false;
  for (int k = 0; k < 64; ++k) {
    auto va = a.next();
    REQUIRE(va == b.next());
    if (va != c.next()) differ = true;
  }
  REQUIRE(differ);
  Xoshiro256pp d(7);
  for (int k = 0; k < 1000; ++k) REQUIRE(d.below(6) < 6);
}

TEST_CASE("chain: every step preserves triangle validity") {
  for (int n : {1, 2, 4, 7}) {
    GlauberChain c = GlauberChain::minimal(n, 123);
    REQUIRE_NOTHROW(c.triangle().validate());
    for (int s = 0; s < 2000; ++s) {
      glauber_step(c);
      REQUIRE_NOTHROW(c.triangle().validate());
    }
    REQUIRE(c.steps == 2000);
  }
}

TEST_CASE("chain: heat-bath transition matrix is doubly stochastic (n=2)") {
  // Exact single-step transition probabilities over the 7 monotone
  // triangles of order 2; double stochasticity proves the uniform law is
  // stationary, and symmetry of each site's conditional support gives
  // detailed balance.
  auto states = enumerate_gog(2, 2);
  REQUIRE(states.size() == 7);
  std::map<std::vector<std::vector<int>>, int> index;
  for (size_t k = 0; k < states.size(); ++k) index[states[k].rows] = (int)k;

  std::vector<std::vector<double>> P(7, std::vector<double>(7, 0.0));
  for (size_t k = 0; k < states.size(); ++k) {
    GlauberChain c = GlauberChain::minimal(2, 0);
    c.rows = states[k].rows;
    for (auto [i, j] : c.sites) {
      auto [lo, hi] = c.local_range(i, j);
      REQUIRE(lo <= c.rows[i - 1][j - 1]);
      REQUIRE(c.rows[i - 1][j - 1] <= hi);
      for (int v = lo; v <= hi; ++v) {
        auto next = states[k].rows;
        next[i - 1][j - 1] = v;
        P[k][index.at(next)] += 1.0 / (c.sites.size() * (hi - lo + 1));
      }
    }
  }
  for (int k = 0; k < 7; ++k) {
    double row = 0.0, col = 0.0;
    for (int l = 0; l < 7; ++l) {
      row += P[k][l];
      col += P[l][k];
      // heat-bath moves are reversible one site at a time
      REQUIRE(std::fabs(P[k][l] - P[l][k]) < 1e-14);
    }
    REQUIRE(row == Catch::Approx(1.0).epsilon(1e-13));
    REQUIRE(col == Catch::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("chain: occupation uniform over the 42 triangles of order 3") {
  GlauberChain c = GlauberChain::minimal(3, 2024);
  std::map<std::vector<std::vector<int>>, long> counts;
  const long total_steps = 1000000;
  const int spacing = 25;  // decorrelate tallies; the chain mixes in a few sweeps
  long tallies = 0;
  for (long s = 0; s < total_steps; ++s) {
    glauber_step(c);
    if (s % spacing == spacing - 1) {
      ++counts[c.rows];
      ++tallies;
    }
  }
  REQUIRE(counts.size() == 42);  // every state reached
  const double expect = static_cast<double>(tallies) / 42.0;
  double chi2 = 0.0;
  for (auto& [state, cnt] : counts) {
    double d = cnt - expect;
    chi2 += d * d / expect;
  }
  REQUIRE(chi2 < 64.95);  // chi-square 99% quantile, 41 dof
}

TEST_CASE("sample_uniform: seeded determinism and validity") {
  PcsmMatrix a = sample_uniform(5, 60, 99);
  PcsmMatrix b = sample_uniform(5, 60, 99);
  REQUIRE(a == b);
  REQUIRE_NOTHROW(a.validate());
  PcsmMatrix d = sample_uniform(5, 60, 100);
  REQUIRE_NOTHROW(d.validate());
  REQUIRE_THROWS_AS(sample_uniform(3, 0, 1), std::invalid_argument);
}

TEST_CASE("sample_uniform: law of x_gog at n=2 matches the exact histogram") {
  const int trials = 3000;
  std::map<int, int> hist;
  for (int k = 0; k < trials; ++k) ++hist[x_gog(sample_uniform(2, 20, 1000 + k))];
  const std::map<int, double> p = {{1, 2.0 / 7}, {2, 4.0 / 7}, {3, 1.0 / 7}};
  for (auto [x, prob] : p) {
    double mean = trials * prob;
    double sigma = std::sqrt(trials * prob * (1.0 - prob));
    REQUIRE(std::fabs(hist[x] - mean) < 3.0 * sigma);
  }
}

TEST_CASE("empirical_max_law: matches the exact law at n=3") {
  // Exact law of max T_3: P(-1)=1/42, P(0)=13/42, P(1)=21/42, P(2)=7/42.
  std::vector<double> t0;
  EmpiricalCdf e = empirical_max_law(3, 2000, 5, 7, &t0);
  REQUIRE(e.count == 2000);
  REQUIRE(static_cast<int>(t0.size()) == 2000);
  REQUIRE(std::is_sorted(e.values.begin(), e.values.end()));
  REQUIRE(e.ks_to_f1 >= 0.0);
  REQUIRE(e.ks_to_f1 <= 1.0);
  const std::map<int, double> law = {
      {-1, 1.0 / 42}, {0, 13.0 / 42}, {1, 21.0 / 42}, {2, 7.0 / 42}};
  double cum = 0.0;
  for (auto [t, prob] : law) {
    cum += prob;
    double at = (t - e.center) / e.scale;
    double sigma = std::sqrt(cum * (1.0 - cum) / e.count);
    REQUIRE(std::fabs(e.cdf(at) - cum) <= 3.5 * sigma + 1e-12);
  }
}

TEST_CASE("empirical_max_law: seeded determinism") {
  EmpiricalCdf a = empirical_max_law(4, 50, 3, 11);
  EmpiricalCdf b = empirical_max_law(4, 50, 3, 11);
  REQUIRE(a.values == b.values);
  REQUIRE(a.ks_to_f1 == b.ks_to_f1);
  REQUIRE(a.cdf(-100.0) == 0.0);
  REQUIRE(a.cdf(100.0) == 1.0);
}

TEST_CASE("sampled top path hugs the limit shape at n=100") {
  PcsmMatrix p = sample_uniform(100, 1000, 5);
  TopPath t = top_path(p);
  const int n = t.n;
  double msd = 0.0;
  for (int tt = -n; tt <= n; ++tt) {
    double d = static_cast<double>(t.at(tt)) / n -
               limit_profile(static_cast<double>(tt) / n);
    msd += d * d;
  }
  msd /= (2 * n + 1);
  REQUIRE(msd < 0.02);
}
