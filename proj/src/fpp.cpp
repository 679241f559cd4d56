#include "aoi/fpp.hpp"

#include <algorithm>
#include <functional>

#include "aoi/parallel.hpp"

namespace aoi {

PassageSampler::PassageSampler(const AuxiliaryGraph& aux)
    : aux_(&aux),
      dist_(aux.graph().vertex_count(), kNoHorizon),
      stamp_(aux.graph().vertex_count(), 0),
      settled_(aux.graph().vertex_count(), 0),
      target_(aux.graph().vertex_count(), 0) {}

void PassageSampler::begin_search(NodeId v) {
  if (v >= stamp_.size()) throw GraphError("start node out of range");
  if (++epoch_ == 0) {
    // Stamp wrap-around: clear everything once every 2^32 searches.
    std::fill(stamp_.begin(), stamp_.end(), 0);
    std::fill(settled_.begin(), settled_.end(), 0);
    std::fill(target_.begin(), target_.end(), 0);
    epoch_ = 1;
  }
  heap_.clear();
  dist_[v] = 0.0;
  stamp_[v] = epoch_;
  heap_.push_back({0.0, v});
}

PassageSample PassageSampler::sample(NodeId v, std::span<const NodeId> targets,
                                     Rng& rng, WeightMode mode, bool early_exit) {
  if (targets.empty()) throw std::invalid_argument("empty target set");
  const Digraph& g = aux_->graph();
  const auto arcs = g.arcs();

  if (mode == WeightMode::upfront) {
    weights_.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i)
      weights_[i] = rng.exponential(arcs[i].rate);
  }

  begin_search(v);
  for (NodeId x : targets) {
    if (x >= target_.size()) throw GraphError("target out of range");
    target_[x] = epoch_;
  }

  PassageSample out;
  out.value = kNoHorizon;
  const Arc* base = arcs.data();
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    const HeapEntry top = heap_.back();
    heap_.pop_back();
    const NodeId u = top.node;
    if (settled_[u] == epoch_) continue;
    settled_[u] = epoch_;
    ++out.explored;
    if (target_[u] == epoch_) {
      out.value = std::min(out.value, top.dist);
      if (early_exit) break;
      continue;  // passage ends at a target; do not route through it
    }
    for (const Arc& a : g.out_arcs(u)) {
      const NodeId x = a.head;
      if (settled_[x] == epoch_) continue;
      const double w = mode == WeightMode::lazy
                           ? rng.exponential(a.rate)
                           : weights_[static_cast<std::size_t>(&a - base)];
      const double cand = top.dist + w;
      if (cand < dist(x)) {
        dist_[x] = cand;
        stamp_[x] = epoch_;
        heap_.push_back({cand, x});
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
      }
    }
  }
  if (out.value == kNoHorizon)
    throw UnreachableTarget("no target reachable from node " + std::to_string(v));
  return out;
}

std::vector<double> PassageSampler::distances(NodeId v,
                                              std::span<const double> weights) {
  const Digraph& g = aux_->graph();
  const auto arcs = g.arcs();
  if (weights.size() != arcs.size())
    throw std::invalid_argument("one weight per arc required");
  begin_search(v);
  const Arc* base = arcs.data();
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    const HeapEntry top = heap_.back();
    heap_.pop_back();
    if (settled_[top.node] == epoch_) continue;
    settled_[top.node] = epoch_;
    for (const Arc& a : g.out_arcs(top.node)) {
      const double cand = top.dist + weights[static_cast<std::size_t>(&a - base)];
      if (cand < dist(a.head)) {
        dist_[a.head] = cand;
        stamp_[a.head] = epoch_;
        heap_.push_back({cand, a.head});
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
      }
    }
  }
  std::vector<double> out(g.vertex_count());
  for (NodeId x = 0; x < out.size(); ++x) out[x] = dist(x);
  return out;
}

namespace {

std::vector<NodeId> source_ids(const Digraph& g, bool all) {
  std::vector<NodeId> ids;
  const std::size_t k = all ? g.source_count() : 1;
  for (std::size_t j = 0; j < k; ++j) ids.push_back(g.source(j));
  return ids;
}

void check_horizon(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("horizon t must be >= 0");
}

double age_draw(const GossipNetwork& g, NodeId v, double t, std::uint64_t seed,
                bool all_sources) {
  check_horizon(t);
  if (v >= g.size()) throw GraphError("node out of range");
  if (t == 0.0) return 0.0;
  const AuxiliaryGraph aux = reverse(g);
  PassageSampler sampler(aux);
  Rng rng(seed);
  const auto targets = source_ids(aux.graph(), all_sources);
  return std::min(sampler.sample(v, targets, rng).value, t);
}

}  // namespace

PassageSample sample_passage(const AuxiliaryGraph& aux, NodeId v,
                             std::span<const NodeId> targets, std::uint64_t seed,
                             WeightMode mode) {
  PassageSampler sampler(aux);
  Rng rng(seed);
  return sampler.sample(v, targets, rng, mode);
}

double sample_age(const GossipNetwork& g, NodeId v, double t, std::uint64_t seed) {
  return age_draw(g, v, t, seed, false);
}

double sample_age_multisource(const GossipNetwork& g, NodeId v, double t,
                              std::uint64_t seed) {
  return age_draw(g, v, t, seed, true);
}

std::vector<PassageSample> fpp_samples(const GossipNetwork& g, NodeId v, double t,
                                       std::size_t reps, std::uint64_t seed,
                                       const BatchOptions& opts) {
  check_horizon(t);
  if (v >= g.size()) throw GraphError("node out of range");
  const AuxiliaryGraph aux = reverse(g);
  const auto targets = source_ids(aux.graph(), opts.all_sources);
  const unsigned workers = opts.workers == 0 ? default_workers() : opts.workers;
  std::vector<PassageSampler> samplers(workers, PassageSampler(aux));
  std::vector<PassageSample> out(reps);
  parallel_for(reps, workers, [&](std::size_t i, unsigned w) {
    Rng rng(derive_seed(seed, kFppStream, i));
    PassageSample s = samplers[w].sample(v, targets, rng, opts.mode);
    if (t != kNoHorizon) s.truncated_at = t;
    out[i] = s;
  });
  return out;
}

std::vector<double> fpp_ages(const GossipNetwork& g, NodeId v, double t,
                             std::size_t reps, std::uint64_t seed,
                             const BatchOptions& opts) {
  const auto samples = fpp_samples(g, v, t, reps, seed, opts);
  std::vector<double> ages(samples.size());
  std::transform(samples.begin(), samples.end(), ages.begin(),
                 [](const PassageSample& s) { return s.age(); });
  return ages;
}

}  // namespace aoi
