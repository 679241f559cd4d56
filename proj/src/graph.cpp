#include "aoi/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

namespace aoi {

namespace {

std::string arc_str(const Arc& a) {
  std::ostringstream os;
  os << "(" << a.tail << ", " << a.head << ", " << a.rate << ")";
  return os.str();
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw GraphError("lambda must be a positive finite real");
}

// Neighbour lists of the undirected support of the non-source arcs.
std::vector<std::vector<NodeId>> support_adjacency(const Digraph& g) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (const Arc& a : g.arcs()) {
    if (g.is_source(a.tail) || g.is_source(a.head)) continue;
    adj[a.tail].push_back(a.head);
    adj[a.head].push_back(a.tail);
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return adj;
}

}  // namespace

Digraph::Digraph(std::size_t nodes, std::size_t sources, std::vector<Arc> arcs)
    : nodes_(nodes), sources_(sources), arcs_(std::move(arcs)) {
  const std::size_t total = nodes_ + sources_;
  if (total > std::numeric_limits<NodeId>::max())
    throw GraphError("too many vertices");
  for (const Arc& a : arcs_) {
    if (a.tail >= total || a.head >= total)
      throw GraphError("arc references unknown vertex: " + arc_str(a));
    if (a.tail == a.head) throw GraphError("self-loop: " + arc_str(a));
    if (!(a.rate > 0.0) || !std::isfinite(a.rate))
      throw GraphError("arc rate must be positive and finite: " + arc_str(a));
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
    return x.tail != y.tail ? x.tail < y.tail : x.head < y.head;
  });
  for (std::size_t i = 1; i < arcs_.size(); ++i) {
    if (arcs_[i].tail == arcs_[i - 1].tail && arcs_[i].head == arcs_[i - 1].head)
      throw GraphError("duplicate arc: " + arc_str(arcs_[i]));
  }
  offsets_.assign(total + 1, 0);
  for (const Arc& a : arcs_) ++offsets_[a.tail + 1];
  for (std::size_t i = 0; i < total; ++i) offsets_[i + 1] += offsets_[i];
}

NodeId Digraph::source(std::size_t j) const {
  if (j >= sources_) throw std::out_of_range("no such source");
  return static_cast<NodeId>(nodes_ + j);
}

double Digraph::total_rate() const {
  double w = 0.0;
  for (const Arc& a : arcs_) w += a.rate;
  return w;
}

GossipNetwork GossipNetwork::from_arcs(std::size_t n, std::vector<Arc> arcs,
                                       double lambda, std::size_t sources) {
  check_lambda(lambda);
  if (n == 0) throw GraphError("network needs at least one node");
  if (sources == 0) throw GraphError("network needs at least one source");
  Digraph graph(n, sources, std::move(arcs));
  for (const Arc& a : graph.arcs()) {
    if (graph.is_source(a.head))
      throw GraphError("arc into a source: " + arc_str(a));
  }
  return GossipNetwork(std::move(graph), lambda, false);
}

GossipNetwork yates_network(const UndirectedGraph& g, double lambda,
                            bool allow_isolated) {
  check_lambda(lambda);
  const std::size_t n = g.n;
  if (n == 0) throw GraphError("network needs at least one node");
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : g.edges) {
    if (e.u >= n || e.v >= n) {
      throw GraphError("edge {" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + "} has node id out of range");
    }
    if (e.u == e.v)
      throw GraphError("self-loop at node " + std::to_string(e.u));
    ++degree[e.u];
    ++degree[e.v];
  }
  if (!allow_isolated) {
    for (std::size_t u = 0; u < n; ++u) {
      if (degree[u] == 0)
        throw GraphError("isolated node " + std::to_string(u));
    }
  }
  std::vector<Arc> arcs;
  arcs.reserve(2 * g.edges.size() + n);
  for (const Edge& e : g.edges) {
    arcs.push_back({e.u, e.v, lambda / static_cast<double>(degree[e.u])});
    arcs.push_back({e.v, e.u, lambda / static_cast<double>(degree[e.v])});
  }
  const auto src = static_cast<NodeId>(n);
  for (std::size_t u = 0; u < n; ++u)
    arcs.push_back({src, static_cast<NodeId>(u), lambda / static_cast<double>(n)});
  // Duplicate undirected edges surface here as duplicate arcs.
  Digraph graph;
  try {
    graph = Digraph(n, 1, std::move(arcs));
  } catch (const GraphError& err) {
    throw GraphError(std::string("duplicate edge: ") + err.what());
  }
  return GossipNetwork(std::move(graph), lambda, true);
}

AuxiliaryGraph reverse(const GossipNetwork& g) {
  const Digraph& d = g.graph();
  std::vector<Arc> arcs;
  arcs.reserve(d.arcs().size());
  for (const Arc& a : d.arcs()) arcs.push_back({a.head, a.tail, a.rate});
  return AuxiliaryGraph(Digraph(d.node_count(), d.source_count(), std::move(arcs)),
                        g.lambda(), g.is_yates());
}

GossipNetwork reverse(const AuxiliaryGraph& aux) {
  const Digraph& d = aux.graph();
  std::vector<Arc> arcs;
  arcs.reserve(d.arcs().size());
  for (const Arc& a : d.arcs()) arcs.push_back({a.head, a.tail, a.rate});
  return GossipNetwork(Digraph(d.node_count(), d.source_count(), std::move(arcs)),
                       aux.lambda(), aux.is_yates());
}

GossipNetwork add_source(const GossipNetwork& g, std::span<const NodeId> targets,
                         double rate) {
  const Digraph& d = g.graph();
  const auto new_source = static_cast<NodeId>(d.vertex_count());
  std::vector<Arc> arcs(d.arcs().begin(), d.arcs().end());
  for (NodeId v : targets) {
    if (v >= d.node_count())
      throw GraphError("source target must be an ordinary node");
    arcs.push_back({new_source, v, rate});
  }
  return GossipNetwork::from_arcs(d.node_count(), std::move(arcs), g.lambda(),
                                  d.source_count() + 1);
}

UndirectedGraph underlying_graph(const GossipNetwork& g) {
  const auto adj = support_adjacency(g.graph());
  UndirectedGraph out{g.size(), {}};
  for (NodeId u = 0; u < adj.size(); ++u) {
    for (NodeId w : adj[u]) {
      if (u < w) out.edges.push_back({u, w});
    }
  }
  return out;
}

std::vector<std::size_t> bfs_distances(const UndirectedGraph& g, NodeId v) {
  std::vector<std::vector<NodeId>> adj(g.n);
  for (const Edge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.n, kInf);
  std::queue<NodeId> q;
  dist.at(v) = 0;
  q.push(v);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (NodeId w : adj[u]) {
      if (dist[w] == kInf) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

double BallProfile::phi(std::size_t m) const {
  if (m == 0) throw std::out_of_range("phi is defined for m >= 1");
  return static_cast<double>(ball(m)) / static_cast<double>(ball(m - 1));
}

BallProfile ball_profile(const GossipNetwork& g, NodeId v) {
  const std::size_t n = g.size();
  if (v >= n) throw GraphError("ball centre must be an ordinary node");
  const auto adj = support_adjacency(g.graph());

  BallProfile p;
  p.center = v;
  p.n = n;
  p.yates = g.is_yates();
  p.min_degree = std::numeric_limits<std::size_t>::max();
  for (const auto& nb : adj) {
    p.min_degree = std::min(p.min_degree, nb.size());
    p.max_degree = std::max(p.max_degree, nb.size());
  }

  // Layered BFS: sizes[m] = |B_m(v)|.
  std::vector<char> seen(n, 0);
  std::vector<NodeId> frontier{v}, next;
  seen[v] = 1;
  std::size_t reached = 1;
  p.sizes.push_back(1);
  while (!frontier.empty()) {
    next.clear();
    for (NodeId u : frontier) {
      for (NodeId w : adj[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          next.push_back(w);
        }
      }
    }
    if (next.empty()) break;
    reached += next.size();
    p.sizes.push_back(reached);
    frontier.swap(next);
  }
  if (reached < n) {
    throw MStarUndefined("m* undefined: node " + std::to_string(v) +
                         " reaches only " + std::to_string(reached) + " of " +
                         std::to_string(n) + " nodes");
  }
  std::size_t m = 1;
  while (m * p.ball(m) < n) ++m;
  p.m_star = m;
  return p;
}

}  // namespace aoi
