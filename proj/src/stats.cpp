#include "elsmark/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elsmark::stats {

namespace {

constexpr std::uint64_t kExactSummationLimit = 10000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

long double log_binom_pmf_l(std::uint64_t k, std::uint64_t n, long double p) {
  return lgammal(static_cast<long double>(n) + 1) -
         lgammal(static_cast<long double>(k) + 1) -
         lgammal(static_cast<long double>(n - k) + 1) +
         static_cast<long double>(k) * logl(p) +
         static_cast<long double>(n - k) * log1pl(-p);
}

// Lentz continued fraction for the incomplete beta.
double beta_cf(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// Series for the regularized lower incomplete gamma, valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for the regularized upper incomplete gamma,
// valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double log_binom_pmf(std::uint64_t k, std::uint64_t n, double p) {
  if (k > n || p < 0.0 || p > 1.0) {
    throw std::invalid_argument("log_binom_pmf: domain");
  }
  if (p == 0.0) return k == 0 ? 0.0 : -HUGE_VAL;
  if (p == 1.0) return k == n ? 0.0 : -HUGE_VAL;
  return static_cast<double>(log_binom_pmf_l(k, n, p));
}

double binomial_sf(std::uint64_t k, std::uint64_t n, double p) {
  if (k > n || p < 0.0 || p > 1.0 || !std::isfinite(p)) {
    throw std::invalid_argument("binomial_sf: domain");
  }
  if (k == 0) return 1.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  if (n <= kExactSummationLimit) {
    const long double pl = p;
    long double term = expl(log_binom_pmf_l(k, n, pl));
    long double sum = term;
    const long double odds = pl / (1.0L - pl);
    for (std::uint64_t i = k; i < n; ++i) {
      term *= odds * static_cast<long double>(n - i) /
              static_cast<long double>(i + 1);
      sum += term;
      // Terms decay geometrically past the mean; the remainder is negligible.
      if (term < sum * 1e-22L && static_cast<long double>(i + 1) > pl * n) {
        break;
      }
    }
    return static_cast<double>(std::min(sum, 1.0L));
  }
  // P[X >= k] = I_p(k, n - k + 1)
  return inc_beta(static_cast<double>(k), static_cast<double>(n - k + 1), p);
}

double binomial_cdf(std::uint64_t k, std::uint64_t n, double p) {
  if (k > n || p < 0.0 || p > 1.0 || !std::isfinite(p)) {
    throw std::invalid_argument("binomial_cdf: domain");
  }
  if (k == n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;  // k < n
  if (n <= kExactSummationLimit) {
    // Descend from k toward 0; terms below the mean shrink geometrically.
    const long double pl = p;
    long double term = expl(log_binom_pmf_l(k, n, pl));
    long double sum = term;
    const long double inv_odds = (1.0L - pl) / pl;
    for (std::uint64_t i = k; i > 0; --i) {
      term *= inv_odds * static_cast<long double>(i) /
              static_cast<long double>(n - i + 1);
      sum += term;
      if (term < sum * 1e-22L && static_cast<long double>(i - 1) < pl * n) {
        break;
      }
    }
    return static_cast<double>(std::min(sum, 1.0L));
  }
  // P[X <= k] = I_{1-p}(n - k, k + 1)
  return inc_beta(static_cast<double>(n - k), static_cast<double>(k + 1),
                  1.0 - p);
}

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0 || !std::isfinite(a) || !std::isfinite(x)) {
    throw std::invalid_argument("gamma_p: domain");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0 || !std::isfinite(a) || !std::isfinite(x)) {
    throw std::invalid_argument("gamma_q: domain");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double inc_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0 || x < 0.0 || x > 1.0) {
    throw std::invalid_argument("inc_beta: domain");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                             std::lgamma(b) + a * std::log(x) +
                             b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double chisq_sf(double x, double dof) {
  if (dof <= 0.0 || x < 0.0) throw std::invalid_argument("chisq_sf: domain");
  return gamma_q(dof / 2.0, x / 2.0);
}

double poisson_sf(std::uint64_t c, double mean) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson_sf: domain");
  }
  if (c == 0) return 1.0;
  if (mean == 0.0) return 0.0;
  // P[N >= c] = P(c, mean)
  return gamma_p(static_cast<double>(c), mean);
}

double bonferroni(double p, std::uint64_t m) {
  if (p < 0.0 || p > 1.0 || m < 1) {
    throw std::invalid_argument("bonferroni: domain");
  }
  return std::min(1.0, p * static_cast<double>(m));
}

double fisher_combine(std::span<const double> pvalues) {
  if (pvalues.empty()) throw std::invalid_argument("fisher_combine: empty");
  double x = 0.0;
  for (const double p : pvalues) {
    if (p > 1.0 || !std::isfinite(p)) {
      throw std::invalid_argument("fisher_combine: p out of range");
    }
    x += -2.0 * std::log(std::max(p, 1e-300));
  }
  return chisq_sf(x, 2.0 * static_cast<double>(pvalues.size()));
}

}  // namespace elsmark::stats
