#pragma once
// Gauss-Legendre rules (cached per node count) and composite helpers.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace asmtw {

struct GaussLegendre {
  std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

// Nodes by Newton iteration on P_m from the Chebyshev initial guess.
inline std::shared_ptr<const GaussLegendre> gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: m >= 1 required");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GaussLegendre>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& entry = cache[m];
  if (entry) return entry;
  auto rule = std::make_shared<GaussLegendre>();
  rule->x.resize(m);
  rule->w.resize(m);
  for (int k = 0; k < m; ++k) {
    long double t = std::cos(M_PI * (k + 0.75L) / (m + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = t;
      for (int j = 2; j <= m; ++j) {
        long double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (t * p1 - p0) / (t * t - 1);
      long double dt = p1 / dp;
      t -= dt;
      if (std::fabs(static_cast<double>(dt)) < 1e-17) break;
    }
    rule->x[m - 1 - k] = static_cast<double>(t);
    rule->w[m - 1 - k] = static_cast<double>(2.0L / ((1 - t * t) * dp * dp));
  }
  entry = std::move(rule);
  return entry;
}

// Nodes/weights mapped to [a, b].
inline std::pair<std::vector<double>, std::vector<double>> gl_on(double a, double b,
                                                                 int m) {
  auto rule = gauss_legendre(m);
  std::vector<double> x(m), w(m);
  for (int k = 0; k < m; ++k) {
    x[k] = 0.5 * (a + b) + 0.5 * (b - a) * rule->x[k];
    w[k] = 0.5 * (b - a) * rule->w[k];
  }
  return {std::move(x), std::move(w)};
}

// Composite Gauss-Legendre integral of f over [a, b].
template <typename F>
double gl_integrate(F f, double a, double b, int panels, int nodes_per_panel) {
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + (b - a) * p / panels, hi = a + (b - a) * (p + 1) / panels;
    auto [x, w] = gl_on(lo, hi, nodes_per_panel);
    for (int k = 0; k < nodes_per_panel; ++k) acc += w[k] * f(x[k]);
  }
  return acc;
}

}  // namespace asmtw
