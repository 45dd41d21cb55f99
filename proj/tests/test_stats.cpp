#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "elsmark/stats.hpp"

using namespace elsmark;

namespace {

// Independent exact-summation oracle: per-term log pmf through lgammal,
// accumulated in long double.
long double sf_oracle(std::uint64_t k, std::uint64_t n, long double p) {
  if (k == 0) return 1.0L;
  long double sum = 0.0L;
  for (std::uint64_t i = k; i <= n; ++i) {
    const long double lg =
        lgammal(static_cast<long double>(n) + 1) -
        lgammal(static_cast<long double>(i) + 1) -
        lgammal(static_cast<long double>(n - i) + 1) +
        static_cast<long double>(i) * logl(p) +
        static_cast<long double>(n - i) * log1pl(-p);
    sum += expl(lg);
  }
  return std::min(sum, 1.0L);
}

// Adaptive Simpson quadrature for the chi-square upper tail.
double chisq_pdf(double x, double dof) {
  return std::exp((dof / 2.0 - 1.0) * std::log(x) - x / 2.0 -
                  std::lgamma(dof / 2.0) - (dof / 2.0) * std::log(2.0));
}

double simpson(double a, double b, double fa, double fm, double fb,
               double dof, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = chisq_pdf(lm, dof);
  const double frm = chisq_pdf(rm, dof);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 1e-15) {
    return left + right;
  }
  return simpson(a, m, fa, flm, fm, dof, depth - 1) +
         simpson(m, b, fm, frm, fb, dof, depth - 1);
}

double chisq_sf_quadrature(double x, double dof) {
  // Integrate to a far upper limit; the tail past it is negligible.
  const double hi = x + 60.0 * dof;
  const double m = 0.5 * (x + hi);
  return simpson(x, hi, chisq_pdf(x, dof), chisq_pdf(m, dof),
                 chisq_pdf(hi, dof), dof, 40);
}

}  // namespace

TEST_CASE("binomial_sf trivial values") {
  CHECK(stats::binomial_sf(0, 10, 0.3) == 1.0);
  CHECK(stats::binomial_sf(0, 0, 0.0) == 1.0);
  CHECK(stats::binomial_sf(5, 5, 0.5) == doctest::Approx(0.03125).epsilon(1e-14));
  // 56/1024
  CHECK(stats::binomial_sf(8, 10, 0.5) ==
        doctest::Approx(0.0546875).epsilon(1e-14));
  CHECK(stats::binomial_sf(3, 7, 0.0) == 0.0);
  CHECK(stats::binomial_sf(3, 7, 1.0) == 1.0);
}

TEST_CASE("binomial_sf domain errors") {
  CHECK_THROWS_AS(stats::binomial_sf(11, 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(stats::binomial_sf(1, 10, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(stats::binomial_sf(1, 10, 1.1), std::invalid_argument);
}

TEST_CASE("binomial_sf matches exact summation to 1e-12 on a spot grid") {
  const std::uint64_t ns[] = {1, 2, 3, 10, 57, 100, 501, 999, 1000};
  const double ps[] = {0.009, 0.075, 0.1, 0.5, 0.8, 0.999};
  for (const auto n : ns) {
    for (const auto p : ps) {
      const std::uint64_t ks[] = {0,     1,     n / 4,     n / 2,
                                  3 * n / 4, n - 1, n};
      for (const auto k : ks) {
        if (k > n) continue;
        const double expect = static_cast<double>(sf_oracle(k, n, p));
        CHECK(std::fabs(stats::binomial_sf(k, n, p) - expect) <= 1e-12);
      }
    }
  }
}

TEST_CASE("binomial_sf is monotone non-increasing in k") {
  const std::uint64_t n = 200;
  for (const double p : {0.05, 0.4, 0.9}) {
    double prev = 1.0;
    for (std::uint64_t k = 0; k <= n; ++k) {
      const double cur = stats::binomial_sf(k, n, p);
      CHECK(cur <= prev + 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("binomial_sf large-n branch agrees with summation") {
  // Just past the exact-summation limit the incomplete-beta path takes over.
  const std::uint64_t n = 10001;
  for (const double p : {0.05, 0.5}) {
    for (const std::uint64_t k :
         {std::uint64_t(400), std::uint64_t(n / 2), std::uint64_t(5200)}) {
      const double expect = static_cast<double>(sf_oracle(k, n, p));
      const double got = stats::binomial_sf(k, n, p);
      CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("binomial_sf and binomial_cdf are complementary") {
  for (const std::uint64_t n : {std::uint64_t(10), std::uint64_t(137),
                                std::uint64_t(1000)}) {
    for (const double p : {0.02, 0.33, 0.5, 0.91}) {
      for (std::uint64_t k = 1; k <= n; k += n / 7 + 1) {
        const double total =
            stats::binomial_sf(k, n, p) + stats::binomial_cdf(k - 1, n, p);
        CHECK(std::fabs(total - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("poisson_sf basics") {
  CHECK(stats::poisson_sf(0, 3.7) == 1.0);
  CHECK(stats::poisson_sf(0, 0.0) == 1.0);
  CHECK(stats::poisson_sf(2, 0.0) == 0.0);
  CHECK(stats::poisson_sf(1, 2.0) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
  // P[N >= 2] = 1 - e^-m (1 + m)
  CHECK(stats::poisson_sf(2, 0.5) ==
        doctest::Approx(1.0 - std::exp(-0.5) * 1.5).epsilon(1e-12));
}

TEST_CASE("bonferroni") {
  CHECK(stats::bonferroni(0.001, 50) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(stats::bonferroni(0.5, 10) == 1.0);
  CHECK(stats::bonferroni(0.123, 1) == 0.123);
  CHECK_THROWS_AS(stats::bonferroni(-0.1, 3), std::invalid_argument);
}

TEST_CASE("fisher_combine trivial and identity cases") {
  const double ones[] = {1.0, 1.0, 1.0};
  CHECK(stats::fisher_combine(ones) == doctest::Approx(1.0).epsilon(1e-12));

  // A single p-value comes back unchanged: exp(-X/2) with X = -2 ln p.
  for (const double p : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.93, 1.0}) {
    const double single[] = {p};
    CHECK(std::fabs(stats::fisher_combine(single) - p) <= 1e-12);
  }
}

TEST_CASE("fisher_combine against quadrature oracle") {
  std::vector<double> ps(10, 0.01);
  double x = 0.0;
  for (const double p : ps) x += -2.0 * std::log(p);
  const double expect = chisq_sf_quadrature(x, 20.0);
  const double got = stats::fisher_combine(ps);
  CHECK(got == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("fisher_combine is permutation invariant") {
  std::vector<double> a = {0.9, 0.003, 0.44, 0.08, 1.0};
  std::vector<double> b = {1.0, 0.44, 0.9, 0.08, 0.003};
  CHECK(stats::fisher_combine(a) == stats::fisher_combine(b));
}

TEST_CASE("fisher_combine floors zero p-values and rejects empty input") {
  const std::vector<double> with_zero = {0.0, 0.5};
  CHECK(std::isfinite(stats::fisher_combine(with_zero)));
  CHECK(stats::fisher_combine(with_zero) > 0.0);
  CHECK_THROWS_AS(stats::fisher_combine(std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("chisq_sf basic identities") {
  // 2 dof: tail is exp(-x/2)
  CHECK(stats::chisq_sf(3.0, 2.0) ==
        doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  CHECK(stats::chisq_sf(0.0, 4.0) == 1.0);
}
