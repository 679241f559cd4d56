#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "aoi/graph.hpp"
#include "aoi/rng.hpp"

namespace aoi {

/// Horizon sentinel: min(T, kNoHorizon) == T.
inline constexpr double kNoHorizon = std::numeric_limits<double>::infinity();

/// No target reachable from the start node in the auxiliary graph.
class UnreachableTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lazy: an arc's exponential weight is drawn when Dijkstra first relaxes
/// it. upfront: every arc weight is drawn before the search starts. The
/// two produce the same passage-time law.
enum class WeightMode { lazy, upfront };

struct PassageSample {
  double value = 0.0;                  ///< T(v, targets)
  std::optional<double> truncated_at;  ///< horizon t, when one was applied
  std::size_t explored = 0;            ///< nodes settled by Dijkstra

  /// min(value, t) when truncated, else value.
  double age() const {
    return truncated_at ? std::min(value, *truncated_at) : value;
  }
};

/// First passage percolation on an auxiliary graph with independent
/// Exp(rate) arc weights. Owns the Dijkstra scratch arrays, so one sampler
/// per thread; the graph itself is shared read-only.
class PassageSampler {
 public:
  explicit PassageSampler(const AuxiliaryGraph& aux);

  /// Passage time from v to the nearest of `targets`. With early_exit the
  /// search stops at the first settled target.
  PassageSample sample(NodeId v, std::span<const NodeId> targets, Rng& rng,
                       WeightMode mode = WeightMode::lazy,
                       bool early_exit = true);

  /// Deterministic Dijkstra from v over explicit arc weights, indexed like
  /// aux.graph().arcs(). Returns the distance to every vertex.
  std::vector<double> distances(NodeId v, std::span<const double> weights);

  const AuxiliaryGraph& aux() const { return *aux_; }

 private:
  struct HeapEntry {
    double dist;
    NodeId node;
    bool operator>(const HeapEntry& o) const { return dist > o.dist; }
  };

  void begin_search(NodeId v);
  double dist(NodeId x) const { return stamp_[x] == epoch_ ? dist_[x] : kNoHorizon; }

  const AuxiliaryGraph* aux_;
  std::vector<double> dist_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> settled_;
  std::vector<std::uint32_t> target_;
  std::vector<HeapEntry> heap_;
  std::vector<double> weights_;
  std::uint32_t epoch_ = 0;
};

/// One passage-time draw with a generator seeded from `seed`.
PassageSample sample_passage(const AuxiliaryGraph& aux, NodeId v,
                             std::span<const NodeId> targets,
                             std::uint64_t seed,
                             WeightMode mode = WeightMode::lazy);

/// Age X_v(t) drawn through the dual: min(T(v, v_s), t) with v_s the
/// first source. t may be kNoHorizon.
double sample_age(const GossipNetwork& g, NodeId v, double t, std::uint64_t seed);

/// As sample_age but the passage time is to the nearest of all sources.
double sample_age_multisource(const GossipNetwork& g, NodeId v, double t,
                              std::uint64_t seed);

struct BatchOptions {
  unsigned workers = 0;  ///< 0: hardware concurrency
  WeightMode mode = WeightMode::lazy;
  bool all_sources = true;
};

/// `reps` independent dual samples for node v. Replica i draws from the
/// stream derive_seed(seed, kFppStream, i), so output is independent of
/// the worker count.
std::vector<PassageSample> fpp_samples(const GossipNetwork& g, NodeId v, double t,
                                       std::size_t reps, std::uint64_t seed,
                                       const BatchOptions& opts = {});

std::vector<double> fpp_ages(const GossipNetwork& g, NodeId v, double t,
                             std::size_t reps, std::uint64_t seed,
                             const BatchOptions& opts = {});

inline constexpr std::uint64_t kFppStream = 0x465050;      // "FPP"
inline constexpr std::uint64_t kForwardStream = 0x465744;  // "FWD"

}  // namespace aoi
