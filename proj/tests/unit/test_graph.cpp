#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "aoi/graph.hpp"
#include "aoi/rng.hpp"
#include "aoi/zoo.hpp"

using namespace aoi;

namespace {

double rate_of(const GossipNetwork& g, NodeId tail, NodeId head) {
  for (const Arc& a : g.graph().out_arcs(tail)) {
    if (a.head == head) return a.rate;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("yates weights on a triangle") {
  const auto g = yates_network(gen_cycle(3));
  REQUIRE(g.is_yates());
  REQUIRE(g.size() == 3);
  for (NodeId u = 0; u < 3; ++u) {
    for (NodeId v = 0; v < 3; ++v) {
      if (u != v) CHECK(rate_of(g, u, v) == doctest::Approx(0.5));
    }
    CHECK(rate_of(g, g.source(), u) == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("yates weights on P_2 and C_100") {
  const Edge p2[] = {{0, 1}};
  const auto g = yates_from_undirected(p2, 2);
  CHECK(rate_of(g, 0, 1) == 1.0);
  CHECK(rate_of(g, 1, 0) == 1.0);
  CHECK(rate_of(g, g.source(), 0) == 0.5);
  CHECK(g.graph().arcs().size() == 4);

  const auto c = yates_network(gen_cycle(100));
  std::size_t node_arcs = 0, source_arcs = 0;
  for (const Arc& a : c.graph().arcs()) {
    if (c.graph().is_source(a.tail)) {
      ++source_arcs;
      CHECK(a.rate == doctest::Approx(0.01));
    } else {
      ++node_arcs;
      CHECK(a.rate == 0.5);
    }
  }
  CHECK(node_arcs == 200);
  CHECK(source_arcs == 100);
}

TEST_CASE("yates construction rejects malformed input") {
  CHECK_THROWS_AS(yates_network({3, {{0, 1}, {1, 0}, {1, 2}}}), GraphError);
  CHECK_THROWS_AS(yates_network({3, {{0, 1}, {0, 1}, {1, 2}}}), GraphError);
  CHECK_THROWS_AS(yates_network({3, {{0, 1}, {1, 1}, {1, 2}}}), GraphError);
  CHECK_THROWS_AS(yates_network({3, {{0, 1}, {1, 3}}}), GraphError);
  CHECK_THROWS_AS(yates_network({3, {{0, 1}}}), GraphError);  // node 2 isolated
  CHECK_THROWS_AS(yates_network({2, {{0, 1}}}, 0.0), GraphError);

  try {
    yates_network({3, {{0, 1}, {1, 7}}});
    FAIL("expected rejection");
  } catch (const GraphError& e) {
    CHECK(std::string(e.what()).find("{1, 7}") != std::string::npos);
  }
}

TEST_CASE("isolated nodes are allowed behind a flag") {
  const auto g = yates_network({3, {{0, 1}}}, 1.0, true);
  CHECK(g.graph().out_arcs(2).empty());
  CHECK(rate_of(g, g.source(), 2) == doctest::Approx(1.0 / 3.0));
  // Single node: only the source arc, at rate lambda.
  const auto one = yates_network({1, {}}, 2.0, true);
  REQUIRE(one.graph().arcs().size() == 1);
  CHECK(one.graph().arcs()[0].rate == 2.0);
}

TEST_CASE("node capacity splits evenly over out-arcs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double lambda = 0.5 + static_cast<double>(seed) * 0.25;
    const auto g = yates_network(gen_cycle_plus_matching(40, seed), lambda);
    for (NodeId u = 0; u < g.size(); ++u) {
      double out = 0.0;
      for (const Arc& a : g.graph().out_arcs(u)) out += a.rate;
      CHECK(std::abs(out - lambda) <= 1e-12 * lambda);
    }
  }
}

TEST_CASE("source ids never collide with ordinary nodes") {
  const auto g = yates_network(gen_cycle(5));
  CHECK(g.source() == 5);
  CHECK(g.graph().is_source(g.source()));
  CHECK_FALSE(g.graph().is_source(4));
}

TEST_CASE("from_arcs validates explicit networks") {
  CHECK_NOTHROW(GossipNetwork::from_arcs(2, {{2, 0, 1.0}, {0, 1, 0.7}}));
  CHECK_THROWS_AS(GossipNetwork::from_arcs(2, {{2, 0, -1.0}}), GraphError);
  CHECK_THROWS_AS(GossipNetwork::from_arcs(2, {{2, 0, 1.0}, {0, 2, 1.0}}), GraphError);
  CHECK_THROWS_AS(GossipNetwork::from_arcs(2, {{0, 1, 1.0}, {0, 1, 2.0}}), GraphError);
  CHECK_THROWS_AS(GossipNetwork::from_arcs(2, {{0, 0, 1.0}}), GraphError);
  CHECK_THROWS_AS(GossipNetwork::from_arcs(2, {{0, 5, 1.0}}), GraphError);
  CHECK_FALSE(GossipNetwork::from_arcs(2, {{2, 0, 1.0}}).is_yates());
}

TEST_CASE("reverse") {
  const Edge p2[] = {{0, 1}};
  const auto g = yates_from_undirected(p2, 2);
  const auto aux = reverse(g);
  const auto arcs = aux.graph().arcs();
  REQUIRE(arcs.size() == 4);
  CHECK(arcs[0] == Arc{0, 1, 1.0});
  CHECK(arcs[1] == Arc{0, 2, 0.5});
  CHECK(arcs[2] == Arc{1, 0, 1.0});
  CHECK(arcs[3] == Arc{1, 2, 0.5});
  CHECK(reverse(aux) == g);

  const auto d = GossipNetwork::from_arcs(2, {{0, 1, 0.7}, {2, 0, 1.0}});
  const auto rd = reverse(d);
  CHECK(rd.graph().out_arcs(1).size() == 1);
  CHECK(rd.graph().out_arcs(1)[0] == Arc{1, 0, 0.7});
  CHECK(reverse(rd) == d);
}

TEST_CASE("reverse is an involution on generated networks") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = yates_network(gen_random_regular(30, 3, seed), 1.5);
    CHECK(reverse(reverse(g)) == g);
    const auto aux = reverse(g);
    CHECK(aux.graph().arcs().size() == g.graph().arcs().size());
  }
}

TEST_CASE("ball profile of C_100") {
  const auto g = yates_network(gen_cycle(100));
  const auto p = ball_profile(g, 17);
  REQUIRE(p.sizes.size() == 51);
  for (std::size_t m = 0; m < 50; ++m) CHECK(p.sizes[m] == 2 * m + 1);
  CHECK(p.sizes.back() == 100);
  CHECK(p.m_star == 7);
  CHECK(p.phi(7) == doctest::Approx(15.0 / 13.0));
  CHECK(p.min_degree == 2);
  CHECK(p.max_degree == 2);
  CHECK(p.ball(1000) == 100);
  CHECK(p.phi(80) == 1.0);
}

TEST_CASE("ball profile of K_n") {
  const auto p = ball_profile(yates_network(gen_complete(9)), 3);
  CHECK(p.sizes == std::vector<std::size_t>{1, 9});
  CHECK(p.m_star == 1);
  CHECK(p.phi(1) == 9.0);
}

TEST_CASE("ball profile ignores the source and rejects disconnected graphs") {
  const auto single = ball_profile(yates_network({1, {}}, 1.0, true), 0);
  CHECK(single.m_star == 1);
  CHECK(single.sizes == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(ball_profile(yates_network({4, {{0, 1}, {2, 3}}}), 0), MStarUndefined);
}

TEST_CASE("ball profile of a non-Yates digraph uses the undirected support") {
  // 0 -> 1 -> 2 one-way chain plus a source.
  const auto g = GossipNetwork::from_arcs(
      3, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 0, 1.0}, {3, 1, 1.0}, {3, 2, 1.0}});
  const auto p = ball_profile(g, 2);
  CHECK_FALSE(p.yates);
  CHECK(p.sizes == std::vector<std::size_t>{1, 2, 3});
  CHECK(p.min_degree == 1);
  CHECK(p.max_degree == 2);
}

TEST_CASE("m* minimality and size monotonicity hold across the zoo") {
  std::vector<UndirectedGraph> graphs = {
      gen_cycle(37), gen_torus(5, 2), gen_hypercube(6), gen_regular_tree(3, 4),
      gen_complete(12), gen_cycle_plus_matching(64, 3), gen_subdivided_cubic(12, 0.5, 1)};
  for (std::uint64_t s = 0; s < 5; ++s) graphs.push_back(gen_random_regular(50, 3, s));
  for (const auto& ug : graphs) {
    const auto g = yates_network(ug);
    for (NodeId v = 0; v < g.size(); v += 3) {
      const auto p = ball_profile(g, v);
      CHECK(p.sizes.front() == 1);
      CHECK(p.sizes.back() == g.size());
      for (std::size_t m = 1; m < p.sizes.size(); ++m) CHECK(p.sizes[m] > p.sizes[m - 1]);
      CHECK(p.m_star * p.ball(p.m_star) >= p.n);
      if (p.m_star > 1) CHECK((p.m_star - 1) * p.ball(p.m_star - 1) < p.n);
      for (std::size_t m = 1; m <= p.sizes.size() + 2; ++m) CHECK(p.phi(m) >= 1.0);
    }
  }
}
