#pragma once
// Exact big-integer / rational helpers shared by every module: factorials,
// (generalized) binomials, Catalan numbers, partial binomial sums, and the
// "p/q" string form used by the JSON interfaces.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace asmtw {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// C(n,k) for nonnegative n; zero outside 0 <= k <= n.
inline Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

// Generalized binomial coefficient: falling factorial a(a-1)...(a-k+1)/k!
// for any integer a (negative included); zero for k < 0, one for k = 0.
inline Int gen_binomial(long a, long k) {
  if (k < 0) return 0;
  Int num = 1;
  for (long t = 0; t < k; ++t) num *= Int(a - t);
  Int r;
  mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), factorial(k).get_mpz_t());
  return r;
}

inline Int catalan(long n) {
  if (n < 0) throw std::invalid_argument("catalan: negative argument");
  return binomial(2 * n, n) / Int(n + 1);
}

// Partial binomial sum  sum_{j=0}^{t} C(m,j); equals 2^m once t >= m.
inline Int binomial_prefix(long m, long t) {
  if (m < 0 || t < 0) return 0;
  if (t >= m) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(m));
    return r;
  }
  Int acc = 0, term = 1;  // term = C(m,j)
  for (long j = 0; j <= t; ++j) {
    acc += term;
    term = term * Int(m - j) / Int(j + 1);
  }
  return acc;
}

// Canonical "p/q" form (denominator always present, q > 0).
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace asmtw
