#include <asmtw/saddle.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace asmtw;

namespace {

// Central finite difference in the real direction.
template <typename F>
Cplx fd1(F f, Cplx w, double h = 1e-6) {
  return (f(w + h) - f(w - h)) / (2.0 * h);
}

template <typename F>
Cplx fd2(F f, Cplx w, double h = 1e-4) {
  return (f(w + h) - 2.0 * f(w) + f(w - h)) / (h * h);
}

// Richardson-extrapolated second difference, O(h^4) truncation.
template <typename F>
Cplx fd2r(F f, Cplx w, double h) {
  return (4.0 * fd2(f, w, h / 2) - fd2(f, w, h)) / 3.0;
}

// Sixth-order-accurate central stencil; the plain 4-point one is too coarse
// near the double critical point, where the fifth derivative is large.
template <typename F>
Cplx fd3(F f, Cplx w, double h = 2e-3) {
  return (f(w - 3.0 * h) - 8.0 * f(w - 2.0 * h) + 13.0 * f(w - h) -
          13.0 * f(w + h) + 8.0 * f(w + 2.0 * h) - f(w + 3.0 * h)) /
         (8.0 * h * h * h);
}

}  // namespace

TEST_CASE("scaling constants") {
  const double alpha = Scalings::alpha();
  REQUIRE(alpha == Catch::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-15));
  REQUIRE(std::fabs(Scalings::c0() * Scalings::c1() - 1.0 / (3.0 * std::sqrt(3.0))) <
          1e-15);
  REQUIRE(std::fabs(Scalings::c0() - 1.0 / (3.0 * std::sqrt(3.0) * Scalings::c1())) <
          1e-15);
}

TEST_CASE("phase function derivatives match finite differences") {
  const Cplx pts[] = {{0.3, 0.7}, {-0.2, 1.1}, {0.05, 0.4}, {-0.5, 2.0}};
  for (double a : {0.1, 0.2, Scalings::alpha(), 0.5}) {
    auto f = [&](Cplx w) { return s1(w, a); };
    for (Cplx w : pts) {
      REQUIRE(std::abs(s1_prime(w, a) - fd1(f, w)) / std::abs(s1_prime(w, a)) < 1e-6);
      REQUIRE(std::abs(s1_second(w, a) - fd2(f, w)) <
              1e-6 * std::max(1.0, std::abs(s1_second(w, a))));
      REQUIRE(std::abs(s1_third(w, a) - fd3(f, w)) <
              1e-4 * std::max(1.0, std::abs(s1_third(w, a))));
    }
  }
  // secondary phases: differentiate numerically, compare against an
  // independent log-derivative assembled by hand
  const double a = 0.2, lam = 0.7, X = 1.3, r = 0.4;
  Cplx w(0.25, 0.9);
  auto f2 = [&](Cplx z) { return s2(z, a, lam, X); };
  Cplx d2 = -X / (1.0 + w - a) - 2.0 * X / (a - 2.0 * w) - 2.0 * lam / (1.0 + w) -
            2.0 * lam / (3.0 - w) + lam / (2.0 - w) - lam / (-w);
  REQUIRE(std::abs(fd1(f2, w) - d2) < 1e-6);
  auto f3 = [&](Cplx z) { return s3(z, a, r); };
  Cplx d3 = 2.0 / (1.0 + w) - 2.0 / (2.0 - w) - 2.0 / (2.0 - 2.0 * w) -
            1.0 / (1.0 + w - a) + 3.0 / (3.0 - w) + 2.0 / (a - 2.0 * w) +
            1.0 / (1.0 - w) - 2.0 * r / (1.0 + w) - 2.0 * r / (3.0 - w) +
            r / (2.0 - w) + r / w;
  REQUIRE(std::abs(fd1(f3, w) - d3) < 1e-6);
}

TEST_CASE("conjugation symmetry and branch guard") {
  for (double a : {0.1, 0.2, Scalings::alpha()})
    for (Cplx w : {Cplx(0.3, 0.7), Cplx(-0.4, 1.2), Cplx(0.1, 0.05)}) {
      REQUIRE(std::abs(s1(std::conj(w), a) - std::conj(s1(w, a))) < 1e-12);
    }
  // on-axis evaluation inside a cut segment trips the proximity guard
  REQUIRE_THROWS_AS(s1(Cplx(-2.0, 0.0), 0.2, 1e-8), std::domain_error);
  REQUIRE_NOTHROW(s1(Cplx(-2.0, 0.0), 0.2));  // guard disabled by default
  REQUIRE_NOTHROW(s1(Cplx(0.3, 0.7), 0.2, 1e-8));
}

TEST_CASE("imaginary part of the phase on real segments") {
  // just above the axis; segment boundaries at -1, -1+a, 0, a/2, 1, 2, 3
  const double a = 0.2;
  const Cplx ieps(0.0, 1e-9);
  // the tabulated values on t <= 0 are the limits from above the axis; on
  // t > 0 they are the limits from below (branch choice of the table)
  auto im = [&](double t) { return s1(Cplx(t, 0.0) + ieps, a).imag(); };
  auto imb = [&](double t) { return s1(Cplx(t, 0.0) - ieps, a).imag(); };
  REQUIRE(std::fabs(im(-2.0) - a * M_PI) < 1e-7);
  REQUIRE(std::fabs(im(-0.9) - -(1.0 - 0.9 - a) * M_PI) < 1e-7);
  REQUIRE(std::fabs(im(-0.4)) < 1e-7);
  REQUIRE(std::fabs(imb(0.05) - -0.05 * M_PI) < 1e-7);
  REQUIRE(std::fabs(imb(0.55) - (0.55 - a) * M_PI) < 1e-7);
  REQUIRE(std::fabs(imb(1.5) - (1.0 - a) * M_PI) < 1e-7);
  REQUIRE(std::fabs(imb(2.5) - (3.0 - a - 2.5) * M_PI) < 1e-7);
  REQUIRE(std::fabs(imb(4.0) - -a * M_PI) < 1e-7);
  // conjugation: the two limits are negatives of each other
  REQUIRE(std::fabs(im(0.55) + imb(0.55)) < 1e-7);
}

TEST_CASE("critical points") {
  const double alpha = Scalings::alpha();
  auto [wpa, wma] = saddle_points(alpha);
  REQUIRE(std::abs(wpa - wma) < 1e-7);
  REQUIRE(std::fabs(wpa.imag()) < 1e-7);
  REQUIRE(std::abs(s1(wpa, alpha)) < 1e-10);
  for (double a = 0.02; a < alpha - 1e-6; a += 0.02) {
    auto [wp, wm] = saddle_points(a);
    REQUIRE(std::fabs(wp.imag()) < 1e-12);
    REQUIRE(std::fabs(wm.imag()) < 1e-12);
    REQUIRE(std::abs(s1_prime(wp, a)) < 1e-10);
    REQUIRE(std::abs(s1_prime(wm, a)) < 1e-10);
    // ordering chain
    REQUIRE(wm.real() <= wpa.real() + 1e-12);
    REQUIRE(wpa.real() <= wp.real() + 1e-12);
    REQUIRE(wp.real() <= 1e-12);
  }
  REQUIRE_THROWS_AS(saddle_points(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(saddle_points(4.0), std::invalid_argument);
}

TEST_CASE("second derivative at the critical points") {
  const double alpha = Scalings::alpha();
  double prev_plus = -1.0;
  for (double a = 0.02; a < alpha - 1e-4; a += 0.01) {
    auto [wp, wm] = saddle_points(a);
    double dp = s1_second_derivative_at_saddle(a, +1);
    double dm = s1_second_derivative_at_saddle(a, -1);
    REQUIRE(dp > 0.0);
    REQUIRE(dm < 0.0);
    REQUIRE(std::fabs(dp - s1_second(wp, a).real()) < 1e-9 * std::max(1.0, dp));
    REQUIRE(std::fabs(dm - s1_second(wm, a).real()) <
            1e-9 * std::max(1.0, std::fabs(dm)));
    auto f = [&](Cplx w) { return s1(w, a); };
    // w+ approaches the log singularity at 0 as a -> 0, so the step must
    // shrink with it to keep the difference quotient inside the smooth zone
    double h = std::fabs(wp.real()) * 5e-3;
    REQUIRE(std::fabs(dp - fd2r(f, wp, h).real()) < 1e-6 * std::max(1.0, dp));
    REQUIRE(std::fabs(dm - fd2r(f, wm, 1e-3).real()) <
            1e-6 * std::max(1.0, std::fabs(dm)));
    if (prev_plus >= 0.0) REQUIRE(dp < prev_plus);  // shrinks toward the merge
    prev_plus = dp;
  }
  // vanishes in the coalescence limit
  REQUIRE(s1_second_derivative_at_saddle(alpha - 1e-7, +1) < 1e-2);
  REQUIRE_THROWS_AS(s1_second_derivative_at_saddle(alpha + 1e-6, +1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(s1_second_derivative_at_saddle(0.1, 2), std::invalid_argument);
}

TEST_CASE("third derivative at the double critical point") {
  const double alpha = Scalings::alpha();
  REQUIRE(s1_third_derivative_at_alpha() == 81.0 / 4.0);
  // exact coalescence point 1 - 2/sqrt(3); the closed form for w+ carries
  // ~1e-8 of sqrt roundoff, which the large fourth derivative would amplify
  const Cplx wc(1.0 - 2.0 / std::sqrt(3.0), 0.0);
  REQUIRE(std::abs(wc - saddle_points(alpha).first) < 1e-7);
  auto f = [&](Cplx w) { return s1(w, alpha); };
  REQUIRE(std::fabs(fd3(f, wc).real() - 81.0 / 4.0) < 1e-5 * (81.0 / 4.0));
  REQUIRE(std::abs(s1_third(wc, alpha) - Cplx(81.0 / 4.0, 0.0)) < 1e-10);
  // local cubic model S1 ~ (81/24)(w - wc)^3 near the double point
  for (double h : {1e-3, 2e-3}) {
    Cplx dw(h, h / 3.0);
    Cplx model = (81.0 / 24.0) * dw * dw * dw;
    REQUIRE(std::abs(s1(wc + dw, alpha) - model) < 1e-2 * std::abs(model));
  }
}

TEST_CASE("steepest descent traces") {
  const double alpha = Scalings::alpha();
  for (double a : {0.1, 0.2, alpha}) {
    // small launch step so the first segment reflects the true departure
    // angle before the level line starts bending
    ContourTrace tr = steepest_descent_trace(a, 1e-4);
    REQUIRE(tr.points.size() >= 3);
    // the closed form goes through a complex sqrt, leaving ~1e-8 of
    // imaginary dust near the coalescence point
    REQUIRE(std::abs(tr.points.front() - saddle_points(a).first) < 1e-7);
    // ends on the real axis at the point a
    REQUIRE(std::abs(tr.points.back() - Cplx(a, 0.0)) < 1e-6);
    // level line: Im S1 vanishes along the trace (saddle point excluded,
    // where it vanishes identically)
    double re_prev = s1(tr.points[0], a).real();
    for (size_t k = 1; k < tr.points.size(); ++k) {
      REQUIRE(std::fabs(s1(tr.points[k], a).imag()) < 1e-8);
      double re = s1(tr.points[k], a).real();
      REQUIRE(re <= re_prev + 1e-12);
      re_prev = re;
    }
    // measured launch angle against the nominal one
    Cplx d = tr.points[1] - tr.points[0];
    double ang = std::atan2(d.imag(), d.real());
    double nominal = (a > alpha - 1e-12) ? M_PI / 3.0 : M_PI / 2.0;
    REQUIRE(tr.launch_angle == nominal);
    REQUIRE(std::fabs(ang - nominal) < 0.02);
  }
  REQUIRE_THROWS_AS(steepest_descent_trace(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(steepest_descent_trace(0.5), std::invalid_argument);
}

TEST_CASE("decay exponent") {
  const double alpha = Scalings::alpha();
  // g(alpha) = 0 through the continuous extension
  REQUIRE(std::fabs(s1(saddle_points(alpha).first, alpha).real()) < 1e-12);
  double prev_g = -1e9;
  for (double a = 0.02; a < alpha - 1e-4; a += 0.02) {
    auto [g, gp] = decay_exponent(a);
    REQUIRE(g < 0.0);
    REQUIRE(gp > 0.0);
    REQUIRE(g > prev_g);
    prev_g = g;
    // derivative consistency with finite differences of g itself
    double h = 1e-6;
    double gd = (decay_exponent(a + h).first - decay_exponent(a - h).first) / (2 * h);
    REQUIRE(std::fabs(gd - gp) < 1e-5 * std::max(1.0, std::fabs(gp)));
  }
  // g recovered by integrating g' from a0 (Simpson on a fine grid)
  const double a0 = 0.05, a1 = 0.25;
  const int m = 2000;
  double h = (a1 - a0) / m, acc = 0.0;
  for (int k = 0; k < m; ++k) {
    double l = a0 + k * h;
    acc += h / 6.0 *
           (decay_exponent(l).second + 4.0 * decay_exponent(l + h / 2).second +
            decay_exponent(l + h).second);
  }
  REQUIRE(std::fabs((decay_exponent(a1).first - decay_exponent(a0).first) - acc) <
          1e-8);
  REQUIRE_THROWS_AS(decay_exponent(alpha + 0.01), std::invalid_argument);
}

TEST_CASE("limit shape curve and profile") {
  auto curve = limit_shape(101);
  REQUIRE(curve.size() == 101);
  REQUIRE(curve.front().first == Catch::Approx(1.0));
  REQUIRE(curve.front().second == Catch::Approx(2.0));
  REQUIRE(curve.back().first == Catch::Approx(2.0));
  REQUIRE(curve.back().second == Catch::Approx(1.0));
  for (auto [x, y] : curve) {
    double lhs = x * (2 - x) + y * (2 - y) + (2 - x) * (2 - y);
    REQUIRE(std::fabs(lhs - 1.0) < 1e-12);
    REQUIRE(std::fabs(x * x + y * y - x * y - 3.0) < 1e-11);
  }
  REQUIRE_THROWS_AS(limit_shape(1), std::invalid_argument);
  // profile: even, peaks at sqrt(3)-1 in the middle, hits 0 where the
  // circle-like arc does, clamped outside
  REQUIRE(std::fabs(limit_profile(0.0) - (std::sqrt(3.0) - 1.0)) < 1e-15);
  REQUIRE(limit_profile(1.0) == 0.0);
  REQUIRE(limit_profile(-1.0) == 0.0);
  for (double t = 0.0; t <= 1.0; t += 0.05)
    REQUIRE(limit_profile(t) == limit_profile(-t));
  double tau0 = std::sqrt(2.0 / 3.0);  // where 3(1 - tau^2) = 1
  REQUIRE(std::fabs(limit_profile(tau0)) < 1e-12);
  REQUIRE(limit_profile(tau0 + 0.05) == 0.0);
  REQUIRE(limit_profile(tau0 - 0.05) > 0.0);
}

TEST_CASE("rescaled kernel") {
  // antisymmetry survives rescaling: (1,1) diagonal vanishes
  for (double xi : {-2.0, 0.0, 1.5})
    REQUIRE(rescaled_kernel(100, 1, 1, xi, xi) == 0.0);
  // the (2,1) entry is minus the transposed (1,2) entry
  double f12 = rescaled_kernel(100, 1, 2, 0.5, -0.5);
  double f21 = rescaled_kernel(100, 2, 1, -0.5, 0.5);
  REQUIRE(std::fabs(f12 + f21) < 1e-14 * std::max(1.0, std::fabs(f12)));
  REQUIRE_THROWS_AS(rescaled_kernel(100, 0, 1, 0.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rescaled_kernel(20, 1, 1, -50.0, 0.0), std::invalid_argument);
}

TEST_CASE("tail bound probe") {
  TailReport rep = tail_bound_probe(100, 2.0);
  REQUIRE(rep.points11 > 10);
  REQUIRE(rep.points12 > 10);
  REQUIRE(rep.rate11 > 0.0);     // log|f11| grows with xi + eta => decay in tail
  REQUIRE(rep.rate12_xi > 0.0);  // log|f12| grows with xi
  // eta-dependence of the f12 rate is small next to the xi rate
  REQUIRE(std::fabs(rep.rate12_eta) < 0.5 * rep.rate12_xi);
  REQUIRE(rep.max22 < 10.0);
  REQUIRE_THROWS_AS(tail_bound_probe(100, -1.0), std::invalid_argument);
}
