#include "aoi/zoo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "aoi/rng.hpp"

namespace aoi {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kNames{{
    {Family::cycle, "cycle"},
    {Family::torus, "torus"},
    {Family::hypercube, "hypercube"},
    {Family::regular_tree, "regular_tree"},
    {Family::complete, "complete"},
    {Family::random_regular, "random_regular"},
    {Family::rgg, "rgg"},
    {Family::cycle_plus_matching, "cycle_plus_matching"},
    {Family::subdivided_cubic, "subdivided_cubic"},
}};

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Edge make_edge(std::size_t a, std::size_t b) {
  const auto u = static_cast<NodeId>(std::min(a, b));
  const auto v = static_cast<NodeId>(std::max(a, b));
  return {u, v};
}

std::uint64_t edge_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [fam, name] : kNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [fam, n] : kNames) {
    if (n == name) return fam;
  }
  return std::nullopt;
}

nlohmann::json to_json(const FamilySpec& s) {
  nlohmann::json j;
  j["family"] = family_name(s.family);
  switch (s.family) {
    case Family::cycle:
    case Family::complete:
    case Family::cycle_plus_matching:
      j["n"] = s.n;
      break;
    case Family::torus:
      j["m"] = s.m;
      j["d"] = s.d;
      break;
    case Family::hypercube:
      j["d"] = s.d;
      break;
    case Family::regular_tree:
      j["degree"] = s.degree;
      j["depth"] = s.depth;
      break;
    case Family::random_regular:
      j["n"] = s.n;
      j["d"] = s.d;
      break;
    case Family::rgg:
      j["n"] = s.n;
      j["d"] = s.d;
      j["alpha"] = s.alpha;
      break;
    case Family::subdivided_cubic:
      j["m"] = s.m;
      j["gamma"] = s.gamma;
      break;
  }
  j["seed"] = s.seed;
  return j;
}

FamilySpec family_spec_from_json(const nlohmann::json& j) {
  FamilySpec s;
  const auto name = j.at("family").get<std::string>();
  const auto fam = parse_family(name);
  require(fam.has_value(), "unknown family '" + name + "'");
  s.family = *fam;
  s.n = j.value("n", std::size_t{0});
  s.m = j.value("m", std::size_t{0});
  s.d = j.value("d", std::size_t{0});
  s.depth = j.value("depth", std::size_t{0});
  s.degree = j.value("degree", std::size_t{0});
  s.gamma = j.value("gamma", 0.0);
  s.alpha = j.value("alpha", 0.0);
  s.seed = j.value("seed", std::uint64_t{0});
  return s;
}

std::size_t family_node_count(const FamilySpec& s) {
  switch (s.family) {
    case Family::torus: {
      std::size_t n = 1;
      for (std::size_t i = 0; i < s.d; ++i) n *= s.m;
      return n;
    }
    case Family::hypercube: return std::size_t{1} << s.d;
    case Family::regular_tree: return regular_tree_size(s.degree, s.depth);
    case Family::subdivided_cubic:
      return s.m + (3 * s.m / 2) * (subdivision_length(s.m, s.gamma) - 1);
    default: return s.n;
  }
}

UndirectedGraph generate(const FamilySpec& s) {
  switch (s.family) {
    case Family::cycle: return gen_cycle(s.n);
    case Family::torus: return gen_torus(s.m, s.d);
    case Family::hypercube: return gen_hypercube(s.d);
    case Family::regular_tree: return gen_regular_tree(s.degree, s.depth);
    case Family::complete: return gen_complete(s.n);
    case Family::random_regular: return gen_random_regular(s.n, s.d, s.seed);
    case Family::rgg: return gen_rgg(s.n, s.d, s.alpha, s.seed);
    case Family::cycle_plus_matching: return gen_cycle_plus_matching(s.n, s.seed);
    case Family::subdivided_cubic: return gen_subdivided_cubic(s.m, s.gamma, s.seed);
  }
  throw std::invalid_argument("unknown family");
}

UndirectedGraph gen_cycle(std::size_t n) {
  require(n >= 3, "cycle needs n >= 3");
  UndirectedGraph g{n, {}};
  g.edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.edges.push_back(make_edge(i, (i + 1) % n));
  return g;
}

UndirectedGraph gen_torus(std::size_t m, std::size_t d) {
  require(m >= 3, "torus needs m >= 3 (m = 2 would double edges)");
  require(d >= 1, "torus needs d >= 1");
  std::size_t n = 1;
  for (std::size_t k = 0; k < d; ++k) {
    require(n <= std::numeric_limits<NodeId>::max() / m, "torus too large");
    n *= m;
  }
  UndirectedGraph g{n, {}};
  g.edges.reserve(n * d);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t stride = 1;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t coord = (x / stride) % m;
      const std::size_t y = x - coord * stride + ((coord + 1) % m) * stride;
      g.edges.push_back(make_edge(x, y));
      stride *= m;
    }
  }
  return g;
}

UndirectedGraph gen_hypercube(std::size_t d) {
  require(d >= 1 && d <= 30, "hypercube needs 1 <= d <= 30");
  const std::size_t n = std::size_t{1} << d;
  UndirectedGraph g{n, {}};
  g.edges.reserve(n * d / 2);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t y = x ^ (std::size_t{1} << k);
      if (x < y) g.edges.push_back({static_cast<NodeId>(x), static_cast<NodeId>(y)});
    }
  }
  return g;
}

std::size_t regular_tree_size(std::size_t degree, std::size_t depth) {
  std::size_t n = 1, level = degree;
  for (std::size_t k = 1; k <= depth; ++k) {
    n += level;
    level *= degree - 1;
  }
  return n;
}

UndirectedGraph gen_regular_tree(std::size_t degree, std::size_t depth) {
  require(degree >= 3, "regular tree needs degree >= 3");
  require(depth >= 1, "regular tree needs depth >= 1");
  const std::size_t n = regular_tree_size(degree, depth);
  require(n <= std::numeric_limits<NodeId>::max(), "regular tree too large");
  UndirectedGraph g{n, {}};
  g.edges.reserve(n - 1);
  // Breadth-first numbering; the root is node 0.
  std::size_t next = 1, level_begin = 0, level_end = 1;
  for (std::size_t lvl = 0; lvl < depth; ++lvl) {
    for (std::size_t p = level_begin; p < level_end; ++p) {
      const std::size_t children = lvl == 0 ? degree : degree - 1;
      for (std::size_t c = 0; c < children; ++c) g.edges.push_back(make_edge(p, next++));
    }
    level_begin = level_end;
    level_end = next;
  }
  return g;
}

UndirectedGraph gen_complete(std::size_t n) {
  require(n >= 2, "complete graph needs n >= 2");
  UndirectedGraph g{n, {}};
  g.edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.edges.push_back(make_edge(i, j));
  }
  return g;
}

UndirectedGraph gen_random_regular(std::size_t n, std::size_t d,
                                   std::uint64_t seed) {
  require(d >= 3, "random regular graph needs d >= 3");
  require(n > d, "random regular graph needs n > d");
  require((n * d) % 2 == 0, "random regular graph needs n*d even");
  Rng rng(derive_seed(seed, 0x52524731));
  std::vector<NodeId> points(n * d);
  for (std::size_t i = 0; i < points.size(); ++i)
    points[i] = static_cast<NodeId>(i / d);
  std::vector<std::uint64_t> keys(points.size() / 2);
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::shuffle(points.begin(), points.end(), rng);
    bool simple = true;
    UndirectedGraph g{n, {}};
    g.edges.reserve(keys.size());
    for (std::size_t i = 0; i < points.size(); i += 2) {
      if (points[i] == points[i + 1]) {
        simple = false;
        break;
      }
      g.edges.push_back(make_edge(points[i], points[i + 1]));
    }
    if (!simple) continue;
    std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) {
      return edge_key(a) < edge_key(b);
    });
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
      continue;
    return g;
  }
  throw std::runtime_error("pairing model failed to produce a simple graph");
}

double unit_ball_volume(std::size_t d) {
  const double h = static_cast<double>(d) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

double rgg_radius(std::size_t n, std::size_t d, double alpha) {
  const auto nn = static_cast<double>(n);
  return alpha * std::pow(std::log(nn) / (unit_ball_volume(d) * nn),
                          1.0 / static_cast<double>(d));
}

std::vector<double> uniform_ball_points(std::size_t n, std::size_t d,
                                        std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x52474750));
  std::vector<double> pts(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    double r2;
    do {
      r2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double x = 2.0 * rng.uniform() - 1.0;
        pts[i * d + k] = x;
        r2 += x * x;
      }
    } while (r2 >= 1.0);
  }
  return pts;
}

UndirectedGraph geometric_graph(const std::vector<double>& pts, std::size_t d,
                                double radius) {
  const std::size_t n = pts.size() / d;
  const double r2 = radius * radius;
  UndirectedGraph g{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = pts[i * d + k] - pts[j * d + k];
        s += diff * diff;
      }
      if (s < r2) g.edges.push_back(make_edge(i, j));
    }
  }
  return g;
}

UndirectedGraph gen_rgg(std::size_t n, std::size_t d, double alpha,
                        std::uint64_t seed) {
  require(n >= 2, "rgg needs n >= 2");
  require(d >= 1, "rgg needs d >= 1");
  require(alpha > 1.0, "rgg needs alpha > 1");
  return geometric_graph(uniform_ball_points(n, d, seed), d, rgg_radius(n, d, alpha));
}

UndirectedGraph gen_cycle_plus_matching(std::size_t n, std::uint64_t seed) {
  require(n >= 4 && n % 2 == 0, "cycle plus matching needs even n >= 4");
  Rng rng(derive_seed(seed, 0x43504d31));
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  auto on_cycle = [n](std::size_t a, std::size_t b) {
    const std::size_t diff = a > b ? a - b : b - a;
    return diff == 1 || diff == n - 1;
  };
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::shuffle(perm.begin(), perm.end(), rng);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; i += 2) ok = !on_cycle(perm[i], perm[i + 1]);
    if (!ok) continue;
    UndirectedGraph g = gen_cycle(n);
    for (std::size_t i = 0; i < n; i += 2) g.edges.push_back(make_edge(perm[i], perm[i + 1]));
    return g;
  }
  throw std::runtime_error("no matching avoiding the cycle found");
}

std::size_t subdivision_length(std::size_t m, double gamma) {
  return static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(m), gamma) + 1e-9));
}

UndirectedGraph gen_subdivided_cubic(std::size_t m, double gamma,
                                     std::uint64_t seed) {
  require(gamma > 0.0 && gamma < 1.0, "subdivided cubic needs gamma in (0, 1)");
  const UndirectedGraph base = gen_random_regular(m, 3, seed);
  const std::size_t len = subdivision_length(m, gamma);
  UndirectedGraph g{m + base.edges.size() * (len - 1), {}};
  g.edges.reserve(base.edges.size() * len);
  // Original nodes keep ids 0..m-1; path interiors are numbered after them.
  std::size_t next = m;
  for (const Edge& e : base.edges) {
    std::size_t prev = e.u;
    for (std::size_t k = 1; k < len; ++k) {
      g.edges.push_back(make_edge(prev, next));
      prev = next++;
    }
    g.edges.push_back(make_edge(prev, e.v));
  }
  return g;
}

bool is_connected(const UndirectedGraph& g) {
  if (g.n == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t x) {
    return x == std::numeric_limits<std::size_t>::max();
  });
}

}  // namespace aoi
