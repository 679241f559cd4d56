#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aoi/alias_table.hpp"
#include "aoi/graph.hpp"
#include "aoi/rng.hpp"

namespace aoi {

/// Timestamps held by every vertex at time t_now. Sources always hold
/// t_now itself; their entries in `freshest` are kept equal to t_now.
struct ForwardState {
  double t_now = 0.0;
  std::vector<double> freshest;  ///< N_v(t_now), indexed by vertex id
  std::size_t event_count = 0;

  /// X_v = t_now - N_v for ordinary node v.
  double age(NodeId v) const { return t_now - freshest[v]; }
};

/// One Poisson clock firing: arc index into g.graph().arcs().
struct ArcFiring {
  double time;
  std::size_t arc;
};

/// Event-driven simulation of the gossip dynamics. The superposed clock
/// rings at rate W = sum of arc rates and the firing arc is drawn from an
/// alias table, which is the same law as independent per-arc clocks.
class ForwardSimulator {
 public:
  explicit ForwardSimulator(const GossipNetwork& g);

  /// Runs a fresh realisation on [0, t] with N_v(0) = 0.
  const ForwardState& run(double t, Rng& rng);

  /// Applies a given firing sequence (times nondecreasing, all <= t).
  const ForwardState& replay(double t, std::span<const ArcFiring> events);

  const GossipNetwork& network() const { return *g_; }

 private:
  void reset();
  void fire(std::size_t arc, double time) {
    const Arc& a = arcs_[arc];
    const double incoming = from_source_[arc] ? time : state_.freshest[a.tail];
    if (incoming > state_.freshest[a.head]) state_.freshest[a.head] = incoming;
  }

  const GossipNetwork* g_;
  std::span<const Arc> arcs_;
  std::vector<char> from_source_;
  AliasTable alias_;
  double total_rate_ = 0.0;
  ForwardState state_;
};

/// Ages X_v(t) of every ordinary node for one realisation.
std::vector<double> simulate_forward(const GossipNetwork& g, double t,
                                     std::uint64_t seed);

/// Ages of the listed nodes over `reps` replicas, row-major
/// (reps x nodes.size()). Replica i uses derive_seed(seed, kForwardStream, i).
std::vector<double> forward_ages(const GossipNetwork& g,
                                 std::span<const NodeId> nodes, double t,
                                 std::size_t reps, std::uint64_t seed,
                                 unsigned workers = 0);

/// Version age at time t: Poisson(lambda_e * X_v(t)) with X_v(t) drawn
/// through the dual.
std::uint64_t sample_version_age(const GossipNetwork& g, NodeId v, double t,
                                 double lambda_e, std::uint64_t seed);

}  // namespace aoi
