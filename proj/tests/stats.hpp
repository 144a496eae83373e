#pragma once
// small statistics toolbox for the test suite: KS uniformity check and
// Student-t machinery for comparing experiment means.
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace testsupport {

// two-sided Kolmogorov-Smirnov statistic against U(0,1)
inline double ks_uniform_statistic(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, std::fabs(xs[i] - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - xs[i]));
  }
  return d;
}

// Stephens' finite-sample transform; 1.628 is the alpha=0.01 critical point
inline bool ks_uniform_ok_1pct(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double stat = ks_uniform_statistic(xs) *
                      (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n));
  return stat < 1.628;
}

struct SampleStats {
  double mean = 0.0;
  double var = 0.0;  // unbiased
  std::size_t n = 0;
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
  SampleStats s;
  s.n = xs.size();
  if (s.n == 0) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(s.n);
  if (s.n > 1) {
    for (double x : xs) s.var += (x - s.mean) * (x - s.mean);
    s.var /= static_cast<double>(s.n - 1);
  }
  return s;
}

// regularized incomplete beta by Lentz continued fractions
inline double betacf(double a, double b, double x) {
  const int maxit = 300;
  const double eps = 3e-12, fpmin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= maxit; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

inline double betai(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log(1.0 - x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

// P(T_df <= t)
inline double student_t_cdf(double t, double df) {
  double p = 0.5 * betai(0.5 * df, 0.5, df / (df + t * t));
  return t >= 0.0 ? 1.0 - p : p;
}

// one-sided Welch test: returns true when mean(a) > mean(b) at the given
// confidence (default 95%)
inline bool mean_greater_welch(const std::vector<double>& a,
                               const std::vector<double>& b,
                               double confidence = 0.95) {
  SampleStats sa = sample_stats(a), sb = sample_stats(b);
  if (sa.n < 2 || sb.n < 2) throw std::invalid_argument("welch: n < 2");
  double va = sa.var / sa.n, vb = sb.var / sb.n;
  double se = std::sqrt(va + vb);
  if (se == 0.0) return sa.mean > sb.mean;
  double t = (sa.mean - sb.mean) / se;
  double df = (va + vb) * (va + vb) /
              (va * va / (sa.n - 1) + vb * vb / (sb.n - 1));
  return student_t_cdf(t, df) > confidence;
}

}  // namespace testsupport
