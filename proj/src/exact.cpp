#include "aoi/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace aoi {

namespace {

using Mask = std::uint32_t;

struct NodeArcs {
  std::vector<std::pair<NodeId, double>> to_nodes;
  double to_sources = 0.0;
};

// Per-node outgoing rates split into ordinary targets and sources.
class SubsetChain {
 public:
  SubsetChain(const AuxiliaryGraph& aux, NodeId v, std::size_t cap)
      : n_(aux.size()), start_(v), arcs_(aux.size()) {
    if (n_ > cap || n_ > 24) {
      throw OracleError("subset-chain oracle limited to " + std::to_string(cap) +
                        " nodes, got " + std::to_string(n_));
    }
    if (v >= n_) throw OracleError("start node must be an ordinary node");
    const Digraph& g = aux.graph();
    for (const Arc& a : g.arcs()) {
      if (g.is_source(a.tail)) continue;
      if (g.is_source(a.head))
        arcs_[a.tail].to_sources += a.rate;
      else
        arcs_[a.tail].to_nodes.emplace_back(a.head, a.rate);
    }
  }

  std::size_t size() const { return n_; }
  Mask start_mask() const { return Mask{1} << start_; }

  double exit_rate(Mask s) const {
    double r = 0.0;
    for (Mask rest = s; rest; rest &= rest - 1) {
      const auto u = static_cast<NodeId>(std::countr_zero(rest));
      r += arcs_[u].to_sources;
      for (const auto& [w, rate] : arcs_[u].to_nodes) {
        if (!(s >> w & 1u)) r += rate;
      }
    }
    return r;
  }

  // Calls fn(next_mask, rate) for each arc leaving S into an ordinary node.
  template <typename Fn>
  void for_each_growth(Mask s, Fn&& fn) const {
    for (Mask rest = s; rest; rest &= rest - 1) {
      const auto u = static_cast<NodeId>(std::countr_zero(rest));
      for (const auto& [w, rate] : arcs_[u].to_nodes) {
        if (!(s >> w & 1u)) fn(s | (Mask{1} << w), rate);
      }
    }
  }

  [[noreturn]] void stuck(Mask s) const {
    throw OracleError("transient state with zero exit rate (mask " +
                      std::to_string(s) + "): sources unreachable");
  }

 private:
  std::size_t n_;
  NodeId start_;
  std::vector<NodeArcs> arcs_;
};

double expected_from(const SubsetChain& chain, Mask s, std::vector<double>& memo) {
  if (!std::isnan(memo[s])) return memo[s];
  const double exit = chain.exit_rate(s);
  if (!(exit > 0.0)) chain.stuck(s);
  double acc = 1.0;
  chain.for_each_growth(s, [&](Mask next, double rate) {
    acc += rate * expected_from(chain, next, memo);
  });
  return memo[s] = acc / exit;
}

// Poisson(mu) weights w_0..w_K with the tail beyond K below eps.
std::vector<double> poisson_weights(double mu, double eps) {
  std::vector<double> w;
  if (mu == 0.0) return {1.0};
  double cumulative = 0.0;
  const double log_mu = std::log(mu);
  for (std::size_t k = 0;; ++k) {
    const double lw = -mu + static_cast<double>(k) * log_mu -
                      std::lgamma(static_cast<double>(k) + 1.0);
    w.push_back(std::exp(lw));
    cumulative += w.back();
    if (static_cast<double>(k) > mu && 1.0 - cumulative < eps) break;
  }
  return w;
}

constexpr double kTruncation = 1e-10;

}  // namespace

double exact_expected_passage(const AuxiliaryGraph& aux, NodeId v,
                              std::size_t max_nodes) {
  const SubsetChain chain(aux, v, max_nodes);
  std::vector<double> memo(std::size_t{1} << chain.size(),
                           std::numeric_limits<double>::quiet_NaN());
  return expected_from(chain, chain.start_mask(), memo);
}

std::vector<double> exact_survival_curve(const AuxiliaryGraph& aux, NodeId v,
                                         std::span<const double> grid,
                                         std::size_t max_nodes) {
  const SubsetChain chain(aux, v, max_nodes);
  for (double a : grid) {
    if (!(a >= 0.0) || !std::isfinite(a))
      throw std::invalid_argument("survival point must be finite and >= 0");
  }

  // Enumerate reachable transient states and their transitions.
  std::vector<std::int32_t> index(std::size_t{1} << chain.size(), -1);
  std::vector<Mask> states{chain.start_mask()};
  index[chain.start_mask()] = 0;
  std::vector<double> exit;
  struct Move { std::int32_t to; double rate; };
  std::vector<std::vector<Move>> moves;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Mask s = states[i];
    exit.push_back(chain.exit_rate(s));
    if (!(exit.back() > 0.0)) chain.stuck(s);
    std::vector<Move> out;
    chain.for_each_growth(s, [&](Mask next, double rate) {
      if (index[next] < 0) {
        index[next] = static_cast<std::int32_t>(states.size());
        states.push_back(next);
      }
      out.push_back({index[next], rate});
    });
    moves.push_back(std::move(out));
  }
  const double unif = *std::max_element(exit.begin(), exit.end());

  // Transient mass after k uniformised steps, for k up to what the largest
  // grid point needs.
  const double a_max = grid.empty() ? 0.0 : *std::max_element(grid.begin(), grid.end());
  const std::size_t k_max = poisson_weights(unif * a_max, kTruncation).size();
  std::vector<double> mass(k_max, 0.0);
  std::vector<double> p(states.size(), 0.0), q(states.size(), 0.0);
  p[0] = 1.0;
  for (std::size_t k = 0; k < k_max; ++k) {
    double total = 0.0;
    for (double x : p) total += x;
    mass[k] = total;
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (p[i] == 0.0) continue;
      q[i] += p[i] * (1.0 - exit[i] / unif);
      for (const Move& m : moves[i]) q[m.to] += p[i] * m.rate / unif;
    }
    p.swap(q);
  }

  std::vector<double> out;
  out.reserve(grid.size());
  for (double a : grid) {
    const auto w = poisson_weights(unif * a, kTruncation);
    double s = 0.0;
    for (std::size_t k = 0; k < std::min(w.size(), mass.size()); ++k) s += w[k] * mass[k];
    out.push_back(std::clamp(s, 0.0, 1.0));
  }
  return out;
}

double exact_survival(const AuxiliaryGraph& aux, NodeId v, double a,
                      std::size_t max_nodes) {
  const double grid[] = {a};
  return exact_survival_curve(aux, v, grid, max_nodes).front();
}

}  // namespace aoi
