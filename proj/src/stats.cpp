#include "qpc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace qpc::stats {

double binomial_sigma(std::size_t n, double p) {
  return std::sqrt(static_cast<double>(n) * p * (1.0 - p));
}

bool within_sigmas(std::size_t successes, std::size_t n, double p, double k_sigma) {
  const double mean = static_cast<double>(n) * p;
  return std::abs(static_cast<double>(successes) - mean) <= k_sigma * binomial_sigma(n, p);
}

double chi_square_statistic(std::span<const std::size_t> observed,
                            std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi-square: category count mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi-square: nonpositive expectation");
    const double diff = static_cast<double>(observed[i]) - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

double chi_square_pvalue(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("chi-square: dof must be positive");
  if (statistic <= 0.0) return 1.0;
  return gamma_q(dof / 2.0, statistic / 2.0);
}

double uniform_bit_pvalue(std::size_t ones, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform bit test needs samples");
  const double expected = static_cast<double>(n) / 2.0;
  const std::size_t observed[2] = {n - ones, ones};
  const double exp_arr[2] = {expected, expected};
  return chi_square_pvalue(chi_square_statistic(observed, exp_arr), 1);
}

double two_proportion_z(std::size_t hits1, std::size_t n1, std::size_t hits2,
                        std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("z-test needs samples on both sides");
  const double p1 = static_cast<double>(hits1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(hits2) / static_cast<double>(n2);
  const double pooled =
      static_cast<double>(hits1 + hits2) / static_cast<double>(n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  if (se == 0.0) return 0.0;
  return (p1 - p2) / se;
}

double normal_two_sided_pvalue(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: domain error");
  if (x == 0.0) return 1.0;

  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);

  if (x < a + 1.0) {
    // Series for the lower function P; Q = 1 - P.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }

  // Continued fraction for Q (modified Lentz).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefix) * h;
}

}  // namespace qpc::stats
