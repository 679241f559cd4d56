#include "aoi/forward_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "aoi/fpp.hpp"
#include "aoi/parallel.hpp"

namespace aoi {

namespace {

std::vector<double> arc_rates(std::span<const Arc> arcs) {
  std::vector<double> r(arcs.size());
  std::transform(arcs.begin(), arcs.end(), r.begin(),
                 [](const Arc& a) { return a.rate; });
  return r;
}

void check_finite_horizon(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("forward simulation needs a finite t >= 0");
}

}  // namespace

ForwardSimulator::ForwardSimulator(const GossipNetwork& g)
    : g_(&g), arcs_(g.graph().arcs()), from_source_(arcs_.size()) {
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    from_source_[i] = g.graph().is_source(arcs_[i].tail) ? 1 : 0;
  if (!arcs_.empty()) {
    const auto rates = arc_rates(arcs_);
    alias_ = AliasTable(rates);
    total_rate_ = alias_.total();
  }
  state_.freshest.assign(g.graph().vertex_count(), 0.0);
}

void ForwardSimulator::reset() {
  std::fill(state_.freshest.begin(), state_.freshest.end(), 0.0);
  state_.t_now = 0.0;
  state_.event_count = 0;
}

const ForwardState& ForwardSimulator::run(double t, Rng& rng) {
  check_finite_horizon(t);
  reset();
  if (total_rate_ > 0.0) {
    double time = rng.exponential(total_rate_);
    while (time <= t) {
      fire(alias_.sample(rng), time);
      ++state_.event_count;
      time += rng.exponential(total_rate_);
    }
  }
  state_.t_now = t;
  const Digraph& d = g_->graph();
  for (std::size_t j = 0; j < d.source_count(); ++j) state_.freshest[d.source(j)] = t;
  return state_;
}

const ForwardState& ForwardSimulator::replay(double t,
                                             std::span<const ArcFiring> events) {
  check_finite_horizon(t);
  reset();
  double last = 0.0;
  for (const ArcFiring& e : events) {
    if (e.arc >= arcs_.size()) throw std::out_of_range("arc index out of range");
    if (e.time < last || e.time > t || e.time < 0.0)
      throw std::invalid_argument("event times must be nondecreasing within [0, t]");
    last = e.time;
    fire(e.arc, e.time);
    ++state_.event_count;
  }
  state_.t_now = t;
  const Digraph& d = g_->graph();
  for (std::size_t j = 0; j < d.source_count(); ++j) state_.freshest[d.source(j)] = t;
  return state_;
}

std::vector<double> simulate_forward(const GossipNetwork& g, double t,
                                     std::uint64_t seed) {
  ForwardSimulator sim(g);
  Rng rng(seed);
  const ForwardState& s = sim.run(t, rng);
  std::vector<double> ages(g.size());
  for (NodeId v = 0; v < ages.size(); ++v) ages[v] = s.age(v);
  return ages;
}

std::vector<double> forward_ages(const GossipNetwork& g,
                                 std::span<const NodeId> nodes, double t,
                                 std::size_t reps, std::uint64_t seed,
                                 unsigned workers) {
  check_finite_horizon(t);
  for (NodeId v : nodes) {
    if (v >= g.size()) throw GraphError("node out of range");
  }
  if (workers == 0) workers = default_workers();
  std::vector<ForwardSimulator> sims(workers, ForwardSimulator(g));
  std::vector<double> out(reps * nodes.size());
  parallel_for(reps, workers, [&](std::size_t i, unsigned w) {
    Rng rng(derive_seed(seed, kForwardStream, i));
    const ForwardState& s = sims[w].run(t, rng);
    for (std::size_t k = 0; k < nodes.size(); ++k)
      out[i * nodes.size() + k] = s.age(nodes[k]);
  });
  return out;
}

std::uint64_t sample_version_age(const GossipNetwork& g, NodeId v, double t,
                                 double lambda_e, std::uint64_t seed) {
  if (!(lambda_e > 0.0)) throw std::invalid_argument("lambda_e must be positive");
  const double age = sample_age_multisource(g, v, t, derive_seed(seed, kFppStream));
  if (age == 0.0) return 0;
  Rng rng(derive_seed(seed, 0x76414f49));
  std::poisson_distribution<std::uint64_t> pois(lambda_e * age);
  return pois(rng);
}

}  // namespace aoi
