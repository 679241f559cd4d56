#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace aoi {

using NodeId = std::uint32_t;

/// Malformed graph input: self-loop, duplicate, bad id, bad rate.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when no radius satisfies m * |B_m(v)| >= n (disconnected graph).
class MStarUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Edge {
  NodeId u;
  NodeId v;
  bool operator==(const Edge&) const = default;
};

/// Undirected simple graph on nodes 0..n-1, as produced by the generators.
struct UndirectedGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  bool operator==(const UndirectedGraph&) const = default;
};

struct Arc {
  NodeId tail;
  NodeId head;
  double rate;
  bool operator==(const Arc&) const = default;
};

/// Immutable weighted digraph in CSR form. Ordinary nodes are 0..n-1;
/// source vertices occupy the ids n..n+k-1, so a source id never collides
/// with an ordinary node. Arcs are kept sorted by (tail, head).
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::size_t nodes, std::size_t sources, std::vector<Arc> arcs);

  std::size_t node_count() const { return nodes_; }
  std::size_t source_count() const { return sources_; }
  std::size_t vertex_count() const { return nodes_ + sources_; }
  bool is_source(NodeId v) const { return v >= nodes_; }
  NodeId source(std::size_t j = 0) const;

  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Arc> out_arcs(NodeId u) const {
    return std::span<const Arc>(arcs_).subspan(offsets_[u],
                                               offsets_[u + 1] - offsets_[u]);
  }
  double total_rate() const;

  bool operator==(const Digraph& other) const {
    return nodes_ == other.nodes_ && sources_ == other.sources_ &&
           arcs_ == other.arcs_;
  }

 private:
  std::size_t nodes_ = 0;
  std::size_t sources_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_;
};

class AuxiliaryGraph;

/// Gossip network G = (V, E, W) with one or more sources. Sources only
/// emit; they never receive arcs.
class GossipNetwork {
 public:
  GossipNetwork() = default;

  /// Arbitrary weighted network; sources are n..n+sources-1.
  static GossipNetwork from_arcs(std::size_t n, std::vector<Arc> arcs,
                                 double lambda = 1.0, std::size_t sources = 1);

  const Digraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.node_count(); }
  NodeId source(std::size_t j = 0) const { return graph_.source(j); }
  double lambda() const { return lambda_; }
  bool is_yates() const { return yates_; }

  bool operator==(const GossipNetwork&) const = default;

 private:
  friend GossipNetwork yates_network(const UndirectedGraph&, double, bool);
  friend GossipNetwork reverse(const AuxiliaryGraph&);

  GossipNetwork(Digraph graph, double lambda, bool yates)
      : graph_(std::move(graph)), lambda_(lambda), yates_(yates) {}

  Digraph graph_;
  double lambda_ = 1.0;
  bool yates_ = false;
};

/// G' : every arc reversed, arc (j, i) carrying the exponential rate of
/// the original arc (i, j). Passage times run from a node to the sources.
class AuxiliaryGraph {
 public:
  AuxiliaryGraph() = default;

  const Digraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.node_count(); }
  NodeId source(std::size_t j = 0) const { return graph_.source(j); }
  double lambda() const { return lambda_; }
  bool is_yates() const { return yates_; }

  bool operator==(const AuxiliaryGraph&) const = default;

 private:
  friend AuxiliaryGraph reverse(const GossipNetwork&);
  friend GossipNetwork reverse(const AuxiliaryGraph&);

  AuxiliaryGraph(Digraph graph, double lambda, bool yates)
      : graph_(std::move(graph)), lambda_(lambda), yates_(yates) {}

  Digraph graph_;
  double lambda_ = 1.0;
  bool yates_ = false;
};

/// Yates weights: rate lambda/deg(u) on each direction of every edge and
/// lambda/n on each source arc. Isolated nodes are rejected unless
/// allow_isolated, in which case they keep only their source arc.
GossipNetwork yates_network(const UndirectedGraph& g, double lambda = 1.0,
                            bool allow_isolated = false);

inline GossipNetwork yates_from_undirected(std::span<const Edge> edges,
                                           std::size_t n, double lambda = 1.0,
                                           bool allow_isolated = false) {
  return yates_network(UndirectedGraph{n, {edges.begin(), edges.end()}},
                       lambda, allow_isolated);
}

AuxiliaryGraph reverse(const GossipNetwork& g);
GossipNetwork reverse(const AuxiliaryGraph& aux);

/// Copy of g with one extra source emitting at `rate` to each target.
/// The result is no longer in Yates mode.
GossipNetwork add_source(const GossipNetwork& g, std::span<const NodeId> targets,
                         double rate);

/// Undirected edges recovered from the non-source arc support (u < v).
UndirectedGraph underlying_graph(const GossipNetwork& g);

/// Connectivity profile of one node. Distances are taken on the
/// undirected support of the non-source arcs; sources are ignored.
struct BallProfile {
  NodeId center = 0;
  std::size_t n = 0;
  /// |B_0|, |B_1|, ..., |B_D| with D the eccentricity of center.
  std::vector<std::size_t> sizes;
  std::size_t m_star = 0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  bool yates = false;

  std::size_t eccentricity() const { return sizes.size() - 1; }
  /// |B_m|, saturating at n past the eccentricity.
  std::size_t ball(std::size_t m) const {
    return m < sizes.size() ? sizes[m] : sizes.back();
  }
  /// Growth ratio |B_m| / |B_{m-1}| for m >= 1.
  double phi(std::size_t m) const;
};

BallProfile ball_profile(const GossipNetwork& g, NodeId v);

/// Hop distances from v on an undirected graph (SIZE_MAX if unreachable).
std::vector<std::size_t> bfs_distances(const UndirectedGraph& g, NodeId v);

}  // namespace aoi
