#pragma once

#include <cstddef>
#include <span>

namespace qpc::stats {

double binomial_sigma(std::size_t n, double p);

// |successes - n*p| <= k_sigma * sqrt(n*p*(1-p)).
bool within_sigmas(std::size_t successes, std::size_t n, double p, double k_sigma);

double chi_square_statistic(std::span<const std::size_t> observed,
                            std::span<const double> expected);

// Upper-tail p-value of the chi-square distribution with dof degrees of freedom.
double chi_square_pvalue(double statistic, int dof);

// ones out of n against Bernoulli(1/2); chi-square with 1 dof.
double uniform_bit_pvalue(std::size_t ones, std::size_t n);

// Pooled two-proportion z statistic.
double two_proportion_z(std::size_t hits1, std::size_t n1, std::size_t hits2,
                        std::size_t n2);

double normal_two_sided_pvalue(double z);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

}  // namespace qpc::stats
