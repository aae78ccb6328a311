#pragma once
// Airy function Ai, its derivative, and the upper tail integral
// B(z) = int_z^inf Ai. Maclaurin series in long double on the central
// range, standard asymptotic expansions outside it.

#include <asmtw/quadrature.hpp>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace asmtw {

namespace detail {

// Ai(0) and -Ai'(0)
constexpr long double kAiryC1 = 0.35502805388781723926006318600418317640L;
constexpr long double kAiryC2 = 0.25881940379280679840518356018920396348L;

// Maclaurin evaluation of (Ai, Ai'); accurate in long double for
// roughly |x| <= 11 (cancellation on the negative side is mild).
inline std::pair<long double, long double> airy_series(long double x) {
  const long double x3 = x * x * x;
  // f, g: the two independent power-series solutions; fd, gd: derivatives
  long double f = 1, g = x, fd = 0, gd = 1;
  long double af = 1, ag = x, afd = 0.5L * x * x, agd = 1;
  fd = afd;
  for (int k = 0; k < 400; ++k) {
    af *= x3 / ((3 * k + 2) * (3 * k + 3));
    ag *= x3 / ((3 * k + 3) * (3 * k + 4));
    agd *= x3 / ((3 * k + 1) * (3 * k + 3));
    f += af;
    g += ag;
    gd += agd;
    if (k >= 1) {
      afd *= x3 / ((3 * k) * (3 * k + 2));
      fd += afd;
    }
    if (std::fabs(static_cast<double>(af)) < 1e-24 &&
        std::fabs(static_cast<double>(ag)) < 1e-24)
      break;
  }
  return {kAiryC1 * f - kAiryC2 * g, kAiryC1 * fd - kAiryC2 * gd};
}

// u_k / v_k coefficient pair of the large-argument expansions.
inline void airy_uv(int k, long double& u, long double& v) {
  u *= static_cast<long double>((6 * k - 5)) * (6 * k - 3) * (6 * k - 1) /
       ((2 * k - 1) * 216.0L * k);
  v = u * (6 * k + 1) / (1 - 6 * k);
}

// Exponentially decaying expansion for large positive x.
inline std::pair<long double, long double> airy_asym_pos(long double x) {
  const long double xi = (2.0L / 3.0L) * x * std::sqrt(x);
  long double u = 1, v = 1, su = 1, sv = 1, pw = 1;
  double prev = 1.0;
  for (int k = 1; k <= 25; ++k) {
    airy_uv(k, u, v);
    pw /= -xi;
    double mag = std::fabs(static_cast<double>(u * pw));
    if (mag > prev) break;  // past the minimal term
    prev = mag;
    su += u * pw;
    sv += v * pw;
  }
  const long double pref = std::exp(-xi) / (2 * std::sqrt(M_PI) * std::pow(x, 0.25L));
  return {pref * su, -std::pow(x, 0.25L) * std::exp(-xi) / (2 * std::sqrt(M_PI)) * sv};
}

// Oscillatory expansion for large negative x (x = -z, z > 0).
inline std::pair<long double, long double> airy_asym_neg(long double z) {
  const long double xi = (2.0L / 3.0L) * z * std::sqrt(z);
  long double u = 1, v = 1;
  long double pe = 1, po = 0, qe = 1, qo = 0;  // even/odd partial sums
  long double pw = 1;
  double prev = 1.0;
  for (int k = 1; k <= 25; ++k) {
    airy_uv(k, u, v);
    pw /= xi;
    double mag = std::fabs(static_cast<double>(u * pw));
    if (mag > prev) break;  // past the minimal term
    prev = mag;
    long double tu = u * pw, tv = v * pw;
    int r = k % 4;  // sign pattern of (-1)^{k/2} interleaved by parity
    if (k % 2 == 1) {
      po += (r == 1 ? tu : -tu);
      qo += (r == 1 ? tv : -tv);
    } else {
      pe += (r == 2 ? -tu : tu);
      qe += (r == 2 ? -tv : tv);
    }
  }
  const long double ph = xi - M_PI / 4;
  const long double c = std::cos(ph), s = std::sin(ph);
  const long double rt = std::sqrt(M_PI) * std::pow(z, 0.25L);
  return {(c * pe + s * po) / rt,
          std::pow(z, 0.25L) / std::sqrt(M_PI) * (s * qe - c * qo)};
}

}  // namespace detail

// Evaluator with explicit switch points between the series and the
// asymptotic regimes; the defaults keep every regime at >= 1e-13 accuracy.
struct AiryEvaluator {
  double series_hi = 6.5;    // series for x <= series_hi
  double series_lo = -10.0;  // series for x >= series_lo

  std::pair<double, double> both(double x) const {
    std::pair<long double, long double> r;
    if (x > series_hi) r = detail::airy_asym_pos(x);
    else if (x < series_lo) r = detail::airy_asym_neg(-static_cast<long double>(x));
    else r = detail::airy_series(x);
    return {static_cast<double>(r.first), static_cast<double>(r.second)};
  }
  double ai(double x) const { return both(x).first; }
  double ai_prime(double x) const { return both(x).second; }
};

inline double airy(double x) { return AiryEvaluator{}.ai(x); }
inline double airy_prime(double x) { return AiryEvaluator{}.ai_prime(x); }

// B(z) = int_z^inf Ai(t) dt; B(0) = 1/3, B -> 1 as z -> -inf.
inline double airy_tail_integral(double z) {
  const double hi = 18.0;  // Ai(18) ~ 1e-23: the remainder is negligible
  if (z >= hi) {
    // one-panel integral of the tiny tail, enough at this magnitude
    auto [x, w] = gl_on(z, z + 6.0, 24);
    double acc = 0.0;
    for (size_t k = 0; k < x.size(); ++k) acc += w[k] * airy(x[k]);
    return acc;
  }
  int panels = static_cast<int>(std::ceil((hi - z) / 0.5));
  return gl_integrate([](double t) { return airy(t); }, z, hi, panels, 12);
}

}  // namespace asmtw
