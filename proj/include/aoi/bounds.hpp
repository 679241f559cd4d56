#pragma once

#include <cstddef>
#include <string_view>

#include <json.hpp>

#include "aoi/graph.hpp"

namespace aoi {

/// Which term attains the minimum in the lower bound.
enum class ActiveTerm { degree_ratio, inverse_phi, horizon };

std::string_view term_name(ActiveTerm t);

/// Sandwich for E X_v(t) on a Yates network:
///   (lambda m*/20) min{delta/Delta, 1/Phi_{m*}, t/m*} <= E X_v(t) <= 3 Delta lambda m*.
/// The lambda factor multiplies both sides as written; with lambda = 1 the
/// values are ages in time units.
struct BoundReport {
  double lower = 0.0;
  double upper = 0.0;
  ActiveTerm active = ActiveTerm::degree_ratio;
  std::size_t m_star = 0;
  double phi_m_star = 0.0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  double t = 0.0;
  double lambda = 1.0;
};

/// t may be kNoHorizon, which removes the horizon term. Throws for
/// non-Yates profiles and for t <= 0.
BoundReport theorem_bounds(const BallProfile& profile, double t, double lambda);

nlohmann::json to_json(const BoundReport& r);

/// P(Y_1 + ... + Y_N <= t) <= (e t mu / N)^N for i.i.d. Exp(mu); capped at 1.
double small_ball_bound(std::size_t N, double mu, double t);

/// P(Y_1 + ... + Y_N >= t N) <= (1/t) exp(-N (t - 1 - log t)) for i.i.d.
/// Exp(1) and t >= 1; capped at 1. Callers with other rates rescale.
double upper_tail_bound(std::size_t N, double t);

}  // namespace aoi
