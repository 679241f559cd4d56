#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "aoi/forward_sim.hpp"
#include "aoi/fpp.hpp"
#include "aoi/stats.hpp"
#include "aoi/zoo.hpp"

using namespace aoi;

namespace {

std::vector<ArcFiring> random_events(const GossipNetwork& g, double t, std::size_t count,
                                     Rng& rng) {
  std::vector<ArcFiring> ev(count);
  for (auto& e : ev) {
    e.time = rng.uniform() * t;
    e.arc = static_cast<std::size_t>(rng.uniform() * static_cast<double>(g.graph().arcs().size()));
  }
  std::sort(ev.begin(), ev.end(), [](const ArcFiring& a, const ArcFiring& b) { return a.time < b.time; });
  return ev;
}

}  // namespace

TEST_CASE("alias table draws match the weights") {
  const double w[] = {1.0, 0.0, 3.0, 6.0};
  const AliasTable table(w);
  Rng rng(3);
  std::vector<int> counts(4, 0);
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) ++counts[table.sample(rng)];
  CHECK(counts[1] == 0);
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = w[i] / 10.0;
    CHECK(std::abs(counts[i] / double(kDraws) - p) <= 4.0 * std::sqrt(p * (1 - p) / kDraws) + 1e-12);
  }
  CHECK_THROWS(AliasTable(std::span<const double>{}));
}

TEST_CASE("t = 0 gives zero ages") {
  const auto ages = simulate_forward(yates_network(gen_cycle(6)), 0.0, 1);
  CHECK(std::all_of(ages.begin(), ages.end(), [](double x) { return x == 0.0; }));
  CHECK_THROWS(simulate_forward(yates_network(gen_cycle(6)), kNoHorizon, 1));
}

TEST_CASE("single node: E X(5) = 1 - e^-5") {
  const auto g = yates_network({1, {}}, 1.0, true);
  const NodeId v[] = {0};
  const auto s = summarize(forward_ages(g, v, 5.0, 100000, 7));
  CHECK(std::abs(s.mean - (1.0 - std::exp(-5.0))) <= 3.0 * s.std_error);
}

TEST_CASE("P_2 stationary mean age is 4/3") {
  const auto g = yates_network({2, {{0, 1}}});
  const NodeId v[] = {1};
  const auto s = summarize(forward_ages(g, v, 50.0, 100000, 8));
  CHECK(std::abs(s.mean - 4.0 / 3.0) <= 3.0 * s.std_error);
}

TEST_CASE("event count averages W t") {
  const auto g = yates_network(gen_cycle(10));
  ForwardSimulator sim(g);
  double total = 0.0;
  constexpr int kReps = 2000;
  for (int i = 0; i < kReps; ++i) {
    Rng rng(derive_seed(1, 2, i));
    total += static_cast<double>(sim.run(20.0, rng).event_count);
  }
  const double expect = 11.0 * 20.0;  // W = n lambda + lambda
  CHECK(std::abs(total / kReps - expect) <= 4.0 * std::sqrt(expect / kReps));
}

TEST_CASE("ages stay in [0, t] and freshness never decreases") {
  const auto g = yates_network(gen_torus(3, 2));
  ForwardSimulator sim(g);
  Rng rng(9);
  for (int rep = 0; rep < 50; ++rep) {
    const auto events = random_events(g, 10.0, 200, rng);
    std::vector<double> prev(g.graph().vertex_count(), 0.0);
    for (std::size_t k = 0; k <= events.size(); k += 10) {
      const auto& s = sim.replay(10.0, std::span(events).first(k));
      for (NodeId v = 0; v < g.size(); ++v) {
        CHECK(s.freshest[v] >= prev[v]);
        CHECK(s.age(v) >= 0.0);
        CHECK(s.age(v) <= 10.0);
        prev[v] = s.freshest[v];
      }
    }
  }
}

TEST_CASE("an extra firing never makes anyone staler") {
  const auto g = yates_network(gen_cycle_plus_matching(12, 4));
  ForwardSimulator sim(g);
  Rng rng(10);
  for (int rep = 0; rep < 300; ++rep) {
    auto events = random_events(g, 5.0, 60, rng);
    std::vector<double> before(g.size());
    const auto& s = sim.replay(5.0, events);
    for (NodeId v = 0; v < g.size(); ++v) before[v] = s.age(v);
    auto extra = random_events(g, 5.0, 1, rng).front();
    events.insert(std::upper_bound(events.begin(), events.end(), extra,
                                   [](const ArcFiring& a, const ArcFiring& b) { return a.time < b.time; }),
                  extra);
    const auto& s2 = sim.replay(5.0, events);
    for (NodeId v = 0; v < g.size(); ++v) CHECK(s2.age(v) <= before[v]);
  }
}

TEST_CASE("age equals t exactly when no source chain arrives") {
  const auto g = yates_network(gen_cycle(5));
  ForwardSimulator sim(g);
  std::vector<ArcFiring> node_only;
  for (std::size_t i = 0; i < g.graph().arcs().size(); ++i) {
    if (!g.graph().is_source(g.graph().arcs()[i].tail)) node_only.push_back({0.1 * (i + 1), i});
  }
  const auto& s = sim.replay(3.0, node_only);
  for (NodeId v = 0; v < 5; ++v) CHECK(s.age(v) == 3.0);

  // Source -> 0 at 1.0, then 0 -> 1 at 2.0: node 1 has age t - 1.
  std::size_t src_to_0 = 0, zero_to_1 = 0;
  for (std::size_t i = 0; i < g.graph().arcs().size(); ++i) {
    const Arc& a = g.graph().arcs()[i];
    if (a.tail == g.source() && a.head == 0) src_to_0 = i;
    if (a.tail == 0 && a.head == 1) zero_to_1 = i;
  }
  const ArcFiring chain[] = {{1.0, src_to_0}, {2.0, zero_to_1}};
  const auto& c = sim.replay(3.0, chain);
  CHECK(c.age(0) == 2.0);
  CHECK(c.age(1) == 2.0);
  CHECK(c.age(2) == 3.0);
}

TEST_CASE("vertex-transitive graphs have exchangeable node ages") {
  for (const auto& ug : {gen_cycle(8), gen_torus(4, 2), gen_hypercube(3)}) {
    const auto g = yates_network(ug);
    std::vector<NodeId> nodes(g.size());
    for (NodeId v = 0; v < g.size(); ++v) nodes[v] = v;
    const double t = 40.0;
    constexpr std::size_t kReps = 10000;
    const auto ages = forward_ages(g, nodes, t, kReps, 13);
    std::vector<Summary> per(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      std::vector<double> col(kReps);
      for (std::size_t i = 0; i < kReps; ++i) col[i] = ages[i * nodes.size() + k];
      per[k] = summarize(col);
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < per.size(); ++a) {
      for (std::size_t b = a + 1; b < per.size(); ++b) {
        worst = std::max(worst, std::abs(per[a].mean - per[b].mean) /
                                    std::hypot(per[a].std_error, per[b].std_error));
      }
    }
    CHECK(worst < 4.0);
  }
}

TEST_CASE("forward and dual ages agree in law on a small graph") {
  const auto g = yates_network(gen_cycle(6));
  const NodeId v[] = {2};
  const auto fwd = forward_ages(g, v, 30.0, 20000, 14);
  const auto dual = fpp_ages(g, 2, 30.0, 20000, 15);
  CHECK(ks_two_sample(fwd, dual) < ks_critical(fwd.size(), dual.size()));
}

TEST_CASE("version age") {
  const auto one = yates_network({1, {}}, 1.0, true);
  CHECK(sample_version_age(one, 0, 0.0, 1.0, 3) == 0);
  // E Poisson(Exp(1)) = 1; variance 2.
  constexpr int kReps = 100000;
  std::vector<double> xs(kReps);
  for (int i = 0; i < kReps; ++i) xs[i] = static_cast<double>(sample_version_age(one, 0, 100.0, 1.0, i));
  const auto s = summarize(xs);
  CHECK(std::abs(s.mean - 1.0) <= 3.0 * s.std_error);
  // Tiny lambda_e: mostly zero.
  int zeros = 0;
  const double lambda_e = 1e-3;
  for (int i = 0; i < 2000; ++i) zeros += sample_version_age(one, 0, 100.0, lambda_e, i) == 0;
  CHECK(zeros >= static_cast<int>(2000 * (1.0 - 10 * lambda_e * 1.0)));
  CHECK_THROWS(sample_version_age(one, 0, 1.0, 0.0, 1));
}
