#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aoi {

/// Two-sided normal quantile for a 99% interval.
inline constexpr double kZ99 = 2.5758293035489004;
/// Asymptotic two-sample KS coefficient c(alpha) at alpha = 0.01.
inline constexpr double kKsC01 = 1.628;

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;   ///< mean - z * std_error
  double ci_high = 0.0;  ///< mean + z * std_error
};

Summary summarize(std::span<const double> xs, double z = kZ99);

/// sup_x |F_a(x) - F_b(x)| over the two empirical CDFs. Ties are handled
/// by stepping past every copy of a value before comparing.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// c(alpha) * sqrt((n + m) / (n m)).
double ks_critical(std::size_t n, std::size_t m, double c_alpha = kKsC01);

/// Dvoretzky-Kiefer-Wolfowitz band half-width sqrt(log(2/alpha) / (2n)).
double dkw_epsilon(std::size_t n, double alpha = 0.01);

/// Fraction of `sorted` strictly greater than a.
double empirical_survival(std::span<const double> sorted, double a);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double r_squared = 0.0;
  double residual_sd = 0.0;
  std::vector<double> residuals;
};

/// Ordinary least squares y = intercept + slope x; needs >= 3 points for a
/// slope standard error.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace aoi
