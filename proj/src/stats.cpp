#include "aoi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoi {

Summary summarize(std::span<const double> xs, double z) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  // Welford keeps the variance accurate for large sample counts.
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double x : xs) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  s.mean = mean;
  if (xs.size() > 1) {
    s.stddev = std::sqrt(m2 / static_cast<double>(xs.size() - 1));
    s.std_error = s.stddev / std::sqrt(static_cast<double>(xs.size()));
  }
  s.ci_low = mean - z * s.std_error;
  s.ci_high = mean + z * s.std_error;
  return s;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto nx = static_cast<double>(x.size());
  const auto ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m, double c_alpha) {
  const auto a = static_cast<double>(n), b = static_cast<double>(m);
  return c_alpha * std::sqrt((a + b) / (a * b));
}

double dkw_epsilon(std::size_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double empirical_survival(std::span<const double> sorted, double a) {
  if (sorted.empty()) return 0.0;
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), a);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line needs >= 2 paired points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    f.residuals.push_back(r);
    sse += r * r;
  }
  f.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  if (x.size() > 2) {
    f.residual_sd = std::sqrt(sse / (n - 2.0));
    f.slope_se = f.residual_sd / std::sqrt(sxx);
  }
  return f;
}

}  // namespace aoi
