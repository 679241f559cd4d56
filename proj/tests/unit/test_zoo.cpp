#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "aoi/graph.hpp"
#include "aoi/zoo.hpp"

using namespace aoi;

namespace {

std::vector<std::size_t> degrees(const UndirectedGraph& g) {
  std::vector<std::size_t> d(g.n, 0);
  for (const Edge& e : g.edges) ++d[e.u], ++d[e.v];
  return d;
}

bool all_equal(const std::vector<std::size_t>& d, std::size_t k) {
  return std::all_of(d.begin(), d.end(), [k](std::size_t x) { return x == k; });
}

// Validates through graph-core: simple, in range.
void check_valid(const UndirectedGraph& g) {
  CHECK_NOTHROW(yates_network(g, 1.0, true));
}

std::size_t eccentricity(const UndirectedGraph& g, NodeId v) {
  const auto d = bfs_distances(g, v);
  return *std::max_element(d.begin(), d.end());
}

std::size_t binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return static_cast<std::size_t>(std::llround(r));
}

}  // namespace

TEST_CASE("cycle") {
  const auto tri = gen_cycle(3);
  CHECK(tri.n == 3);
  CHECK(tri.edges.size() == 3);
  const auto c = gen_cycle(100);
  CHECK(c.edges.size() == 100);
  CHECK(all_equal(degrees(c), 2));
  const auto p = ball_profile(yates_network(c), 0);
  for (std::size_t m = 0; m < 60; ++m) CHECK(p.ball(m) == std::min<std::size_t>(2 * m + 1, 100));
  CHECK_THROWS(gen_cycle(2));
}

TEST_CASE("torus") {
  const auto t41 = gen_torus(4, 1);
  CHECK(t41.n == 4);
  CHECK(all_equal(degrees(t41), 2));
  CHECK(ball_profile(yates_network(t41), 0).sizes == ball_profile(yates_network(gen_cycle(4)), 0).sizes);
  const auto t = gen_torus(10, 2);
  CHECK(t.n == 100);
  CHECK(t.edges.size() == 200);
  CHECK(all_equal(degrees(t), 4));
  CHECK(ball_profile(yates_network(gen_torus(5, 3)), 0).ball(1) == 7);
  check_valid(gen_torus(3, 3));
  CHECK_THROWS(gen_torus(2, 2));
}

TEST_CASE("hypercube balls are binomial sums") {
  CHECK(gen_hypercube(1).edges.size() == 1);
  const auto q3 = gen_hypercube(3);
  CHECK(q3.n == 8);
  CHECK(q3.edges.size() == 12);
  for (std::size_t d = 1; d <= 8; ++d) {
    const auto g = gen_hypercube(d);
    CHECK(all_equal(degrees(g), d));
    const auto p = ball_profile(yates_network(g), 5 % g.n);
    std::size_t acc = 0;
    for (std::size_t m = 0; m <= d; ++m) {
      acc += binomial(d, m);
      CHECK(p.ball(m) == acc);
    }
    CHECK(p.ball(1) == d + 1);
  }
}

TEST_CASE("regular tree") {
  const auto star = gen_regular_tree(3, 1);
  CHECK(star.n == 4);
  CHECK(degrees(star)[0] == 3);
  const auto t = gen_regular_tree(3, 2);
  CHECK(t.n == 10);
  for (std::size_t delta = 3; delta <= 5; ++delta) {
    for (std::size_t depth = 1; depth <= 4; ++depth) {
      const auto g = gen_regular_tree(delta, depth);
      const std::size_t expect =
          1 + delta * (static_cast<std::size_t>(std::pow(delta - 1, depth)) - 1) / (delta - 2);
      CHECK(g.n == expect);
      CHECK(g.edges.size() == g.n - 1);
      CHECK(eccentricity(g, 0) == depth);
      const auto d = degrees(g);
      CHECK(d[0] == delta);
      for (std::size_t v = 1; v < g.n; ++v) CHECK((d[v] == delta || d[v] == 1));
    }
  }
}

TEST_CASE("complete graph") {
  CHECK(gen_complete(2).edges.size() == 1);
  CHECK(gen_complete(5).edges.size() == 10);
  CHECK(ball_profile(yates_network(gen_complete(5)), 2).m_star == 1);
}

TEST_CASE("random regular graphs") {
  CHECK(gen_random_regular(10, 3, 1).edges.size() == 15);
  CHECK_THROWS(gen_random_regular(11, 3, 1));
  CHECK_THROWS(gen_random_regular(3, 3, 1));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_random_regular(40, 3 + seed % 3, seed);
    CHECK(all_equal(degrees(g), 3 + seed % 3));
    check_valid(g);
  }
  CHECK(gen_random_regular(200, 3, 42) == gen_random_regular(200, 3, 42));
  CHECK_FALSE(gen_random_regular(200, 3, 42) == gen_random_regular(200, 3, 43));
}

TEST_CASE("random geometric graph") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
  // gamma >= 2 exceeds every distance inside the unit ball.
  const auto k = gen_rgg(30, 2, 1e6, 5);
  CHECK(k.edges.size() == 30 * 29 / 2);

  const auto pts = uniform_ball_points(500, 3, 9);
  for (std::size_t i = 0; i < 500; ++i) {
    double r2 = 0.0;
    for (std::size_t c = 0; c < 3; ++c) r2 += pts[3 * i + c] * pts[3 * i + c];
    CHECK(r2 < 1.0);
  }
  // Two points: the edge exists iff their distance is below the radius.
  int empty = 0, joined = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p2 = uniform_ball_points(2, 1, seed);
    const double dist = std::abs(p2[0] - p2[1]);
    const auto g = gen_rgg(2, 1, 1.01, seed);
    const double radius = rgg_radius(2, 1, 1.01);
    CHECK(g.edges.size() == (dist < radius ? 1u : 0u));
    (g.edges.empty() ? empty : joined)++;
  }
  CHECK(empty > 0);
  CHECK(joined > 0);
  CHECK(gen_rgg(300, 2, 2.0, 3) == gen_rgg(300, 2, 2.0, 3));
  CHECK_THROWS(gen_rgg(10, 2, 1.0, 1));
}

TEST_CASE("random geometric graph is connected above threshold") {
  // Points fill a ball of volume V_d, so the mean degree is alpha^d log n / V_d.
  // At alpha = 2, d = 2 that is only ~1.27 log n and about half of all
  // instances are disconnected; alpha = 3 is comfortably above threshold.
  int connected = 0, connected_low = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    connected += is_connected(gen_rgg(2000, 2, 3.0, seed));
    connected_low += is_connected(gen_rgg(2000, 2, 2.0, seed));
  }
  CHECK(connected >= 48);
  CHECK(connected_low < connected);
}

TEST_CASE("cycle plus matching") {
  CHECK_THROWS(gen_cycle_plus_matching(7, 1));
  CHECK(gen_cycle_plus_matching(4, 1).edges.size() == 6);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_cycle_plus_matching(64, seed);
    CHECK(g.edges.size() == 96);
    CHECK(all_equal(degrees(g), 3));
    check_valid(g);
  }
  // Logarithmic diameter: C log2 n with C = 3.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = gen_cycle_plus_matching(1024, seed);
    std::size_t diam = 0;
    for (NodeId v = 0; v < g.n; v += 97) diam = std::max(diam, eccentricity(g, v));
    CHECK(diam <= 30);
  }
}

TEST_CASE("subdivided cubic graph") {
  CHECK(subdivision_length(10, 0.5) == 3);
  CHECK(subdivision_length(9, 0.5) == 3);
  const auto g = gen_subdivided_cubic(10, 0.5, 4);
  CHECK(g.n == 40);
  const auto d = degrees(g);
  for (std::size_t v = 0; v < 10; ++v) CHECK(d[v] == 3);
  for (std::size_t v = 10; v < g.n; ++v) CHECK(d[v] == 2);
  check_valid(g);
  // floor(m^gamma) = 1: no subdivision at all.
  const auto plain = gen_subdivided_cubic(10, 0.01, 4);
  CHECK(plain == gen_random_regular(10, 3, 4));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = gen_subdivided_cubic(16, 0.6, seed);
    const std::size_t len = subdivision_length(16, 0.6);
    CHECK(s.n == 16 + 24 * (len - 1));
    const auto deg = degrees(s);
    CHECK(std::count(deg.begin(), deg.end(), 3u) == 16);
    CHECK(std::count(deg.begin(), deg.end(), 2u) == static_cast<long>(s.n - 16));
  }
}

TEST_CASE("family specs dispatch and serialise") {
  FamilySpec s;
  s.family = Family::torus;
  s.m = 4;
  s.d = 2;
  CHECK(generate(s) == gen_torus(4, 2));
  const auto back = family_spec_from_json(to_json(s));
  CHECK(generate(back) == gen_torus(4, 2));
  CHECK(parse_family("rgg") == Family::rgg);
  CHECK_FALSE(parse_family("petersen").has_value());
  for (auto f : {Family::cycle, Family::torus, Family::hypercube, Family::regular_tree,
                 Family::complete, Family::random_regular, Family::rgg,
                 Family::cycle_plus_matching, Family::subdivided_cubic})
    CHECK(parse_family(family_name(f)) == f);
}

TEST_CASE("family node counts match the generated graphs") {
  for (const char* doc : {R"({"family": "cycle", "n": 9})", R"({"family": "torus", "m": 4, "d": 3})",
                          R"({"family": "hypercube", "d": 6})",
                          R"({"family": "regular_tree", "degree": 4, "depth": 3})",
                          R"({"family": "complete", "n": 7})",
                          R"({"family": "random_regular", "n": 30, "d": 3, "seed": 2})",
                          R"({"family": "rgg", "n": 50, "d": 2, "alpha": 2.0, "seed": 2})",
                          R"({"family": "cycle_plus_matching", "n": 20, "seed": 2})",
                          R"({"family": "subdivided_cubic", "m": 20, "gamma": 0.6, "seed": 2})"}) {
    const auto spec = family_spec_from_json(nlohmann::json::parse(doc));
    CHECK(family_node_count(spec) == generate(spec).n);
  }
}
