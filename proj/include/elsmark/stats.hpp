#pragma once

#include <cstdint>
#include <span>

namespace elsmark::stats {

// Upper tail P[X >= k] for X ~ Binomial(n, p). Exact term summation up to
// n = 10000, regularized incomplete beta beyond.
double binomial_sf(std::uint64_t k, std::uint64_t n, double p);

// Lower tail P[X <= k].
double binomial_cdf(std::uint64_t k, std::uint64_t n, double p);

double log_binom_pmf(std::uint64_t k, std::uint64_t n, double p);

// Regularized incomplete gamma P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x);

// Chi-square upper tail at x with dof degrees of freedom.
double chisq_sf(double x, double dof);

// Poisson upper tail P[N >= c] at the given mean.
double poisson_sf(std::uint64_t c, double mean);

double bonferroni(double p, std::uint64_t m);

// Fisher's method: -2 sum ln p against a chi-square tail with 2k dof.
// p-values at or below zero are floored at 1e-300.
double fisher_combine(std::span<const double> pvalues);

}  // namespace elsmark::stats
