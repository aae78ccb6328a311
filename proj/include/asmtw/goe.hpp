#pragma once
// GOE Tracy-Widom machinery: the 2x2 block kernel built from Airy
// integrals, and F1(s) as the Pfaffian of the discretized operator J - K
// on (s, inf), plus the truncated Fredholm-Pfaffian series used as an
// independent cross-check at large s.

#include <asmtw/airy.hpp>
#include <asmtw/pfaffian.hpp>
#include <asmtw/quadrature.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace asmtw {

// Nodes on (s, s+truncation) after x = s + log(1/(1-u)); the weights carry
// the Jacobian 1/(1-u), so sums approximate integrals over (s, inf).
struct QuadratureRule {
  int m = 0;
  std::vector<double> x, w;
  double truncation = 0.0;

  static QuadratureRule log_transformed(double s, int m, double depth = 16.0) {
    if (m < 2) throw std::invalid_argument("QuadratureRule: m >= 2 required");
    QuadratureRule r;
    r.m = m;
    r.truncation = s + depth;
    const double umax = 1.0 - std::exp(-depth);
    auto [u, wu] = gl_on(0.0, umax, m);
    r.x.resize(m);
    r.w.resize(m);
    for (int k = 0; k < m; ++k) {
      r.x[k] = s + std::log(1.0 / (1.0 - u[k]));
      r.w[k] = wu[k] / (1.0 - u[k]);
    }
    r.validate();
    return r;
  }

  void validate() const {
    for (int k = 0; k < m; ++k) {
      if (w[k] <= 0.0) throw std::logic_error("QuadratureRule: weights not positive");
      if (k > 0 && x[k] <= x[k - 1])
        throw std::logic_error("QuadratureRule: nodes not increasing");
    }
  }
};

// Kernel evaluations over a fixed point set. The semi-infinite lambda
// integrals share one composite rule; B values along the shifted lambda
// grid are accumulated backwards from the far tail so each point costs a
// short sub-integral instead of a full one.
class GoeKernel {
 public:
  explicit GoeKernel(std::vector<double> xs) : xs_(std::move(xs)) {
    const int q = static_cast<int>(xs_.size());
    const int panels = 30, per = 12;
    lam_.reserve(panels * per);
    lw_.reserve(panels * per);
    for (int p = 0; p < panels; ++p) {
      auto [lx, lww] = gl_on(p, p + 1.0, per);
      lam_.insert(lam_.end(), lx.begin(), lx.end());
      lw_.insert(lw_.end(), lww.begin(), lww.end());
    }
    const int L = static_cast<int>(lam_.size());
    const AiryEvaluator ev;
    a_.assign(q, std::vector<double>(L));
    ap_.assign(q, std::vector<double>(L));
    b_.assign(q, std::vector<double>(L));
    a0_.resize(q);
    b0_.resize(q);
    for (int i = 0; i < q; ++i) {
      for (int k = 0; k < L; ++k) {
        auto [ai, aip] = ev.both(xs_[i] + lam_[k]);
        a_[i][k] = ai;
        ap_[i][k] = aip;
      }
      a0_[i] = ev.ai(xs_[i]);
      double run = airy_tail_integral(xs_[i] + lam_.back());
      b_[i][L - 1] = run;
      for (int k = L - 2; k >= 0; --k) {
        run += segment(xs_[i] + lam_[k], xs_[i] + lam_[k + 1]);
        b_[i][k] = run;
      }
      b0_[i] = run + segment(xs_[i], xs_[i] + lam_.front());
    }
  }

  int size() const { return static_cast<int>(xs_.size()); }
  double x(int i) const { return xs_[i]; }

  double k11(int i, int j) const {
    double s = 0.0;
    for (size_t k = 0; k < lam_.size(); ++k)
      s += lw_[k] * (a_[i][k] * ap_[j][k] - ap_[i][k] * a_[j][k]);
    return 0.25 * s;
  }
  double k12(int i, int j) const {
    double s = 0.0;
    for (size_t k = 0; k < lam_.size(); ++k) s += lw_[k] * a_[i][k] * a_[j][k];
    return s + 0.5 * a0_[i] * (1.0 - b0_[j]);
  }
  double k21(int i, int j) const { return -k12(j, i); }
  double k22(int i, int j) const {
    if (i == j) return 0.0;
    double s = 0.0;
    for (size_t k = 0; k < lam_.size(); ++k)
      s += lw_[k] * (a_[i][k] * b_[j][k] - b_[i][k] * a_[j][k]);
    double sg = xs_[i] > xs_[j] ? 1.0 : (xs_[i] < xs_[j] ? -1.0 : 0.0);
    return s - b0_[i] + b0_[j] - sg;
  }
  double block(int a, int b, int i, int j) const {
    if (a == 1 && b == 1) return k11(i, j);
    if (a == 1 && b == 2) return k12(i, j);
    if (a == 2 && b == 1) return k21(i, j);
    return k22(i, j);
  }

  // interleaved 2q x 2q matrix of kernel blocks over points sel
  Matrix<double> pf_block(const std::vector<int>& sel) const {
    const int m = static_cast<int>(sel.size());
    Matrix<double> M(2 * m, std::vector<double>(2 * m, 0.0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        M[2 * i][2 * j] = k11(sel[i], sel[j]);
        M[2 * i][2 * j + 1] = k12(sel[i], sel[j]);
        M[2 * i + 1][2 * j + 1] = k22(sel[i], sel[j]);
      }
    // fill the 21 entries from skew symmetry so the matrix is exactly skew
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) M[2 * i + 1][2 * j] = -M[2 * j][2 * i + 1];
    return M;
  }

 private:
  static double segment(double lo, double hi) {
    auto [x, w] = gl_on(lo, hi, 8);
    double s = 0.0;
    for (size_t k = 0; k < x.size(); ++k) s += w[k] * airy(x[k]);
    return s;
  }

  std::vector<double> xs_, lam_, lw_, a0_, b0_;
  std::vector<std::vector<double>> a_, ap_, b_;
};

inline double kgoe(int i, int j, double xi, double eta) {
  if ((i != 1 && i != 2) || (j != 1 && j != 2))
    throw std::invalid_argument("kgoe: block index must be 1 or 2");
  GoeKernel k({xi, eta});
  return k.block(i, j, 0, 1);
}

struct F1Result {
  double s = 0.0;
  double value = 0.0;
  double error = 0.0;  // |value at m nodes - value at 2m nodes|
};

namespace detail {

inline double f1_discretized(const QuadratureRule& rule) {
  GoeKernel ker(rule.x);
  const int m = rule.m;
  Matrix<double> M(2 * m, std::vector<double>(2 * m, 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double wgt = std::sqrt(rule.w[i] * rule.w[j]);
      M[2 * i][2 * j] = -wgt * ker.k11(i, j);
      M[2 * i][2 * j + 1] = -wgt * ker.k12(i, j);
      M[2 * i + 1][2 * j + 1] = -wgt * ker.k22(i, j);
    }
  for (int i = 0; i < m; ++i) M[2 * i][2 * i + 1] += 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M[2 * i + 1][2 * j] = -M[2 * j][2 * i + 1];
  return pfaffian(std::move(M));
}

}  // namespace detail

inline F1Result f1(double s, int m = 40) {
  F1Result r;
  r.s = s;
  r.value = detail::f1_discretized(QuadratureRule::log_transformed(s, m));
  double fine = detail::f1_discretized(QuadratureRule::log_transformed(s, 2 * m));
  r.error = std::fabs(fine - r.value);
  return r;
}

// Partial sum of the Fredholm-Pfaffian series by direct cubature; usable
// as an oracle for f1 when s is large enough that the tail is negligible.
inline double f1_series(double s, int kmax, int m = 24) {
  if (kmax < 0 || kmax > 3)
    throw std::invalid_argument("f1_series: kmax must be in [0, 3]");
  double total = 1.0;
  if (kmax == 0) return total;
  QuadratureRule rule = QuadratureRule::log_transformed(s, m);
  GoeKernel ker(rule.x);
  for (int i = 0; i < m; ++i) total -= rule.w[i] * ker.k12(i, i);
  if (kmax >= 2) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        acc += rule.w[i] * rule.w[j] * pfaffian(ker.pf_block({i, j}));
    total += acc / 2.0;
  }
  if (kmax >= 3) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          acc += rule.w[i] * rule.w[j] * rule.w[k] *
                 pfaffian(ker.pf_block({i, j, k}));
    total -= acc / 6.0;
  }
  return total;
}

}  // namespace asmtw
