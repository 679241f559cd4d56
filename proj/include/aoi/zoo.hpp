#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aoi/graph.hpp"

namespace aoi {

enum class Family {
  cycle,
  torus,
  hypercube,
  regular_tree,
  complete,
  random_regular,
  rgg,
  cycle_plus_matching,
  subdivided_cubic,
};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Which parameters a family reads:
///   cycle, complete, cycle_plus_matching: n
///   torus: m, d          hypercube: d          regular_tree: degree, depth
///   random_regular: n, d rgg: n, d, alpha      subdivided_cubic: m, gamma
struct FamilySpec {
  Family family = Family::cycle;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t depth = 0;
  std::size_t degree = 0;
  double gamma = 0.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const nlohmann::json& j);

UndirectedGraph generate(const FamilySpec& spec);

UndirectedGraph gen_cycle(std::size_t n);
UndirectedGraph gen_torus(std::size_t m, std::size_t d);
UndirectedGraph gen_hypercube(std::size_t d);
UndirectedGraph gen_regular_tree(std::size_t degree, std::size_t depth);
UndirectedGraph gen_complete(std::size_t n);
UndirectedGraph gen_random_regular(std::size_t n, std::size_t d,
                                   std::uint64_t seed);
UndirectedGraph gen_rgg(std::size_t n, std::size_t d, double alpha,
                        std::uint64_t seed);
UndirectedGraph gen_cycle_plus_matching(std::size_t n, std::uint64_t seed);
UndirectedGraph gen_subdivided_cubic(std::size_t m, double gamma,
                                     std::uint64_t seed);

/// Node count of the depth-`depth` tree with root degree `degree`.
std::size_t regular_tree_size(std::size_t degree, std::size_t depth);

/// Node count generate(spec) would produce, without building the graph.
std::size_t family_node_count(const FamilySpec& spec);

/// floor(m^gamma), guarded against pow() landing just under an integer.
std::size_t subdivision_length(std::size_t m, double gamma);

/// Volume of the unit ball in R^d.
double unit_ball_volume(std::size_t d);

/// Connection radius alpha * (log n / (V_d n))^(1/d).
double rgg_radius(std::size_t n, std::size_t d, double alpha);

/// n points drawn uniformly from the open unit ball, row-major (n x d).
std::vector<double> uniform_ball_points(std::size_t n, std::size_t d,
                                        std::uint64_t seed);

/// Edge {i, j} iff |x_i - x_j| < radius.
UndirectedGraph geometric_graph(const std::vector<double>& points,
                                std::size_t d, double radius);

bool is_connected(const UndirectedGraph& g);

}  // namespace aoi
