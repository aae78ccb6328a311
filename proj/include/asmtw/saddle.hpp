#pragma once
// Saddle-point machinery for the steep-descent analysis: the phase
// functions, their critical points and derivatives, level-line traces,
// exponential decay exponents, the limit-shape curve, and the rescaled
// discrete kernel used in the convergence study.

#include <asmtw/kernel.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace asmtw {

using Cplx = std::complex<double>;

struct Scalings {
  static double alpha() { return 2.0 - std::sqrt(3.0); }
  static double c1() { return 2.0 / std::pow(3.0, 4.0 / 3.0); }
  static double c0() { return 1.0 / (2.0 * std::pow(3.0, 1.0 / 6.0)); }
};

namespace detail {

// The leading phase function is a signed sum of terms (A + B w) log(A + B w);
// the coefficient triples (sigma, A, B) below encode it. The B's cancel in
// pairs, so the derivative is a pure log-sum.
struct PhaseTerm {
  double sg, A, B;
};

inline std::vector<PhaseTerm> s1_terms(double a) {
  return {{+1, 1, 1},     {+1, 2, -1}, {+1, 2, -2}, {+1, 0, -1},
          {-1, 1, -1},    {-1, 1 - a, 1}, {-1, 3, -1}, {-1, a, -2}};
}

// Distance from z to the principal-branch cut (the nonpositive real axis).
inline double cut_distance(const Cplx& z) {
  if (z.real() >= 0.0) return std::abs(z);
  return std::abs(z.imag());
}

inline void guard_cut(const Cplx& z, double eps) {
  if (eps > 0.0 && cut_distance(z) < eps)
    throw std::domain_error("phase function: argument too close to a branch cut");
}

}  // namespace detail

inline Cplx s1(Cplx w, double a, double cut_eps = 0.0) {
  Cplx s(0.0, 0.0);
  for (const auto& t : detail::s1_terms(a)) {
    Cplx z = t.A + t.B * w;
    detail::guard_cut(z, cut_eps);
    if (z != Cplx(0.0, 0.0)) s += t.sg * z * std::log(z);
  }
  return s;
}

inline Cplx s1_prime(Cplx w, double a, double cut_eps = 0.0) {
  Cplx s(0.0, 0.0);
  for (const auto& t : detail::s1_terms(a)) {
    Cplx z = t.A + t.B * w;
    detail::guard_cut(z, cut_eps);
    s += t.sg * t.B * std::log(z);
  }
  return s;
}

inline Cplx s1_second(Cplx w, double a) {
  Cplx s(0.0, 0.0);
  for (const auto& t : detail::s1_terms(a)) s += t.sg * t.B * t.B / (t.A + t.B * w);
  return s;
}

inline Cplx s1_third(Cplx w, double a) {
  Cplx s(0.0, 0.0);
  for (const auto& t : detail::s1_terms(a)) {
    Cplx z = t.A + t.B * w;
    s -= t.sg * t.B * t.B * t.B / (z * z);
  }
  return s;
}

inline Cplx s2(Cplx w, double a, double lambda, double X, double cut_eps = 0.0) {
  struct Term {
    double c, A, B;
  };
  const Term terms[] = {{-X, 1 - a, 1}, {X, a, -2},      {-2 * lambda, 1, 1},
                        {2 * lambda, 3, -1}, {-lambda, 2, -1}, {lambda, 0, -1}};
  Cplx s(0.0, 0.0);
  for (const auto& t : terms) {
    Cplx z = t.A + t.B * w;
    detail::guard_cut(z, cut_eps);
    s += t.c * std::log(z);
  }
  return s;
}

inline Cplx s3(Cplx w, double a, double r, double cut_eps = 0.0) {
  struct Term {
    double c, A, B;
  };
  const Term terms[] = {{2, 1, 1},      {2, 2, -1},  {1, 2, -2},  {-1, 1 - a, 1},
                        {-3, 3, -1},    {-1, a, -2}, {-1, 1, -1}, {-2 * r, 1, 1},
                        {2 * r, 3, -1}, {-r, 2, -1}, {r, 0, -1}};
  Cplx s(-1.0, 0.0);
  for (const auto& t : terms) {
    Cplx z = t.A + t.B * w;
    detail::guard_cut(z, cut_eps);
    s += t.c * std::log(z);
  }
  return s;
}

// Critical points of the leading phase; both real for a <= alpha,
// coalescing at a = alpha.
inline std::pair<Cplx, Cplx> saddle_points(double a) {
  if (a <= 0.0 || a >= 2.0 + std::sqrt(3.0))
    throw std::invalid_argument("saddle_points: a out of range");
  Cplx d = std::sqrt(Cplx(1.0 - 4.0 * a + a * a, 0.0));
  double den = -8.0 - 4.0 * a + a * a;
  Cplx base(4.0 - 10.0 * a + a * a, 0.0);
  Cplx wp = (base + 2.0 * (a - 2.0) * d) / den;
  Cplx wm = (base - 2.0 * (a - 2.0) * d) / den;
  return {wp, wm};
}

// Closed-form second derivative at the chosen critical point,
// branch = +1 for w+, -1 for w-.
inline double s1_second_derivative_at_saddle(double a, int branch) {
  if (a <= 0.0 || a >= Scalings::alpha())
    throw std::invalid_argument("s1_second_derivative_at_saddle: a outside (0,alpha)");
  if (branch != 1 && branch != -1)
    throw std::invalid_argument("s1_second_derivative_at_saddle: branch must be +-1");
  double d = std::sqrt(1.0 - 4.0 * a + a * a);
  double poly_even = -256 + 1296 * a - 1428 * a * a + 616 * std::pow(a, 3) -
                     117 * std::pow(a, 4) + 12 * std::pow(a, 5) - std::pow(a, 6);
  double poly_odd =
      -256 + 752 * a - 396 * a * a + 104 * std::pow(a, 3) - 13 * std::pow(a, 4);
  double pref = -1.0 / (6.0 * std::pow(4.0 - a, 2) * (2.0 - a) * a * a);
  return pref * (poly_even + branch * poly_odd * d);
}

inline double s1_third_derivative_at_alpha() { return 81.0 / 4.0; }

struct SaddleReport {
  double a = 0.0;
  Cplx w_plus, w_minus;
  double s1_dd_plus = 0.0, s1_dd_minus = 0.0;
  double exponent = 0.0;  // g(a) = S1(w+(a), a)
};

inline SaddleReport make_saddle_report(double a) {
  SaddleReport r;
  r.a = a;
  std::tie(r.w_plus, r.w_minus) = saddle_points(a);
  if (a < Scalings::alpha()) {
    r.s1_dd_plus = s1_second_derivative_at_saddle(a, +1);
    r.s1_dd_minus = s1_second_derivative_at_saddle(a, -1);
  }
  r.exponent = s1(r.w_plus, a).real();
  return r;
}

// g(a) = S1(w+(a), a) and its closed-form derivative.
inline std::pair<double, double> decay_exponent(double a) {
  if (a <= 0.0 || a >= Scalings::alpha())
    throw std::invalid_argument("decay_exponent: a outside (0,alpha)");
  double g = s1(saddle_points(a).first, a).real();
  double d = std::sqrt(1.0 - 4.0 * a + a * a);
  double gp = std::log(-1.0 - 2.0 / (d - 1.0));
  return {g, gp};
}

struct ContourTrace {
  double a = 0.0;
  double launch_angle = 0.0;
  std::vector<Cplx> points;  // from w+(a) to the real-axis endpoint
};

// Level line Im S1 = 0 leaving w+(a) into the upper half plane, followed by
// unit steepest-descent predictor steps with Newton correction on Im S1;
// ends on the real axis (at the point a). Steps shrink near the axis.
inline ContourTrace steepest_descent_trace(double a, double step = 1e-3,
                                           double tol = 1e-9) {
  if (a <= 0.0 || a > Scalings::alpha() + 1e-15)
    throw std::invalid_argument("steepest_descent_trace: need 0 < a <= alpha");
  ContourTrace tr;
  tr.a = a;
  const bool critical = a > Scalings::alpha() - 1e-12;
  tr.launch_angle = critical ? M_PI / 3.0 : M_PI / 2.0;
  double w0 = saddle_points(a).first.real();
  auto correct = [&](Cplx w, bool& ok) {
    for (int it = 0; it < 30; ++it) {
      Cplx s = s1(w, a);
      if (std::abs(s.imag()) < tol) {
        ok = true;
        return w;
      }
      Cplx sp = s1_prime(w, a);
      w -= Cplx(0.0, 1.0) * std::conj(sp) * s.imag() / std::norm(sp);
    }
    ok = std::abs(s1(w, a).imag()) < tol;
    return w;
  };
  bool ok = false;
  Cplx w = Cplx(w0, 0.0) + step * std::exp(Cplx(0.0, tr.launch_angle));
  w = correct(w, ok);
  if (!ok) throw std::runtime_error("steepest_descent_trace: launch correction failed");
  tr.points = {Cplx(w0, 0.0), w};
  double h = step;
  while (true) {
    Cplx sp = s1_prime(w, a);
    Cplx dir = -std::conj(sp) / std::abs(sp);
    Cplx w2 = w + h * dir;
    bool accepted = false;
    if (w2.imag() > 0.0) {
      w2 = correct(w2, accepted);
      if (w2.imag() <= 0.0) accepted = false;
    }
    if (!accepted) {
      h /= 2.0;
      if (h < 1e-12) break;
      continue;
    }
    tr.points.push_back(w2);
    w = w2;
    if (h < step) h = std::min(step, 2.0 * h);
    if (tr.points.size() > 2000000)
      throw std::runtime_error("steepest_descent_trace: did not terminate");
  }
  return tr;
}

// Curve x^2 + y^2 - xy = 3 sampled over [1,2]^2, equivalently
// x(2-x) + y(2-y) + (2-x)(2-y) = 1.
inline std::vector<std::pair<double, double>> limit_shape(int points) {
  if (points < 2) throw std::invalid_argument("limit_shape: need >= 2 points");
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  for (int k = 0; k < points; ++k) {
    double x = 1.0 + static_cast<double>(k) / (points - 1);
    double y = (x + std::sqrt(std::max(0.0, 12.0 - 3.0 * x * x))) / 2.0;
    out.emplace_back(x, y);
  }
  return out;
}

// Limiting profile of the rescaled top path: T(tau n)/n for tau in [-1,1].
inline double limit_profile(double tau) {
  double v = std::sqrt(std::max(0.0, 3.0 * (1.0 - tau * tau))) - 1.0;
  return std::max(v, 0.0);
}

namespace detail {

inline std::shared_ptr<const KernelTable> patch_table(int n, int xmax) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const KernelTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& p = cache[{n, xmax}];
  if (!p) p = std::make_shared<const KernelTable>(n, xmax);
  return p;
}

inline int rescaled_coordinate(int n, double xi) {
  return static_cast<int>(
      std::floor(Scalings::alpha() * n - Scalings::c0() * std::cbrt(n) * xi));
}

}  // namespace detail

// (c0 n^{1/3})^{4-i-j} f^{ij} at the lattice points nearest the rescaled
// coordinates; the exact kernel value is converted to double at the end.
inline double rescaled_kernel(int n, int i, int j, double xi, double eta) {
  if ((i != 1 && i != 2) || (j != 1 && j != 2))
    throw std::invalid_argument("rescaled_kernel: block index");
  int x = detail::rescaled_coordinate(n, xi);
  int y = detail::rescaled_coordinate(n, eta);
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw std::invalid_argument("rescaled_kernel: mapped coordinate outside L_n");
  auto tab = detail::patch_table(n, std::max(x, y));
  KernelBlock b = tab->block(x, y);
  const Rat* f = nullptr;
  if (i == 1 && j == 1) f = &b.f11;
  else if (i == 1 && j == 2) f = &b.f12;
  else if (i == 2 && j == 1) f = &b.f21;
  else f = &b.f22;
  double scale = std::pow(Scalings::c0() * std::cbrt(n), 4 - i - j);
  return scale * mpf_class(*f, 256).get_d();
}

struct TailReport {
  // fitted c in |f11| <= C exp(-c (xi + eta)) over the probe grid
  double rate11 = 0.0;
  // fitted c in |f12| <= C exp(-c xi), and the eta dependence (should be ~0)
  double rate12_xi = 0.0;
  double rate12_eta = 0.0;
  double max22 = 0.0;  // sup |f22| over the probe grid
  int points11 = 0, points12 = 0;
};

namespace detail {

// Least squares slope of y against x.
inline double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  const int m = static_cast<int>(xs.size());
  for (int k = 0; k < m; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= m;
  my /= m;
  double num = 0, den = 0;
  for (int k = 0; k < m; ++k) {
    num += (xs[k] - mx) * (ys[k] - my);
    den += (xs[k] - mx) * (xs[k] - mx);
  }
  return num / den;
}

}  // namespace detail

// Probes the exponential bounds on the grid xi, eta in [-M-2, -M]
// (step 0.5): log|f11| should be linear in -(xi + eta) with positive
// coefficient, log|f12| in -xi only, |f22| stay bounded.
inline TailReport tail_bound_probe(int n, double M) {
  if (M <= 0.0) throw std::invalid_argument("tail_bound_probe: M > 0 required");
  std::vector<double> grid;
  for (double v = -M - 2.0; v <= -M + 1e-9; v += 0.5) grid.push_back(v);
  if (grid.size() < 3) throw std::invalid_argument("tail_bound_probe: grid too small");
  std::vector<double> s11, l11, sxi, seta, l12;
  TailReport rep;
  for (double xi : grid)
    for (double eta : grid) {
      double f11 = rescaled_kernel(n, 1, 1, xi, eta);
      if (std::fabs(f11) > 0.0 && xi != eta) {
        s11.push_back(xi + eta);
        l11.push_back(std::log(std::fabs(f11)));
      }
      double f12 = rescaled_kernel(n, 1, 2, xi, eta);
      if (std::fabs(f12) > 0.0) {
        sxi.push_back(xi);
        seta.push_back(eta);
        l12.push_back(std::log(std::fabs(f12)));
      }
      rep.max22 = std::max(rep.max22, std::fabs(rescaled_kernel(n, 2, 2, xi, eta)));
    }
  if (s11.size() < 3 || sxi.size() < 3)
    throw std::runtime_error("tail_bound_probe: insufficient nonzero samples");
  rep.rate11 = -detail::ls_slope(s11, l11);
  rep.rate12_xi = -detail::ls_slope(sxi, l12);
  rep.rate12_eta = -detail::ls_slope(seta, l12);
  rep.points11 = static_cast<int>(s11.size());
  rep.points12 = static_cast<int>(sxi.size());
  return rep;
}

}  // namespace asmtw
