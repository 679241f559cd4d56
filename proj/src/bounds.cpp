#include "aoi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aoi {

std::string_view term_name(ActiveTerm t) {
  switch (t) {
    case ActiveTerm::degree_ratio: return "degree_ratio";
    case ActiveTerm::inverse_phi: return "inverse_phi";
    case ActiveTerm::horizon: return "horizon";
  }
  return "unknown";
}

BoundReport theorem_bounds(const BallProfile& p, double t, double lambda) {
  if (!p.yates)
    throw std::invalid_argument("bounds hold for Yates-weighted networks only");
  if (!(t > 0.0)) throw std::invalid_argument("bounds need t > 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("bounds need lambda > 0");
  if (p.m_star == 0) throw MStarUndefined("profile has no m*");

  BoundReport r;
  r.m_star = p.m_star;
  r.phi_m_star = p.phi(p.m_star);
  r.min_degree = p.min_degree;
  r.max_degree = p.max_degree;
  r.t = t;
  r.lambda = lambda;

  const auto m = static_cast<double>(p.m_star);
  const double terms[] = {
      static_cast<double>(p.min_degree) / static_cast<double>(p.max_degree),
      1.0 / r.phi_m_star,
      t / m,  // +inf when there is no horizon
  };
  const auto* best = std::min_element(std::begin(terms), std::end(terms));
  r.active = static_cast<ActiveTerm>(best - std::begin(terms));
  r.lower = lambda * m / 20.0 * *best;
  r.upper = 3.0 * static_cast<double>(p.max_degree) * lambda * m;
  return r;
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["active_term"] = term_name(r.active);
  j["m_star"] = r.m_star;
  j["phi_m_star"] = r.phi_m_star;
  j["min_degree"] = r.min_degree;
  j["max_degree"] = r.max_degree;
  if (std::isfinite(r.t))
    j["t"] = r.t;
  else
    j["t"] = "inf";
  j["lambda"] = r.lambda;
  return j;
}

double small_ball_bound(std::size_t N, double mu, double t) {
  if (N == 0) throw std::invalid_argument("N must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  const auto n = static_cast<double>(N);
  const double base = std::numbers::e * t * mu / n;
  if (base >= 1.0) return 1.0;
  return std::pow(base, n);
}

double upper_tail_bound(std::size_t N, double t) {
  if (N == 0) throw std::invalid_argument("N must be positive");
  if (!(t >= 1.0)) throw std::invalid_argument("upper tail bound needs t >= 1");
  const auto n = static_cast<double>(N);
  return std::min(1.0, std::exp(-n * (t - 1.0 - std::log(t))) / t);
}

}  // namespace aoi
