#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "aoi/bounds.hpp"
#include "aoi/graph.hpp"
#include "aoi/stats.hpp"
#include "aoi/zoo.hpp"

namespace aoi {

// ---------------------------------------------------------------------------
// Single-configuration experiments
// ---------------------------------------------------------------------------

/// Default horizon 10 * m*(v) * Delta: large enough that the horizon term
/// of the lower bound is inactive.
double default_horizon(const GossipNetwork& g, NodeId v);

/// Default target: node 0. Tree roots and the original nodes of a
/// subdivided cubic graph both start at id 0.
NodeId default_target(const FamilySpec& spec);

struct DualityResult {
  double ks = 0.0;
  double critical = 0.0;
  bool pass = false;
  Summary forward;
  Summary fpp;
  std::size_t reps = 0;
};

/// reps forward-simulated ages against reps dual ages at node v; passes
/// when the two-sample KS distance is below c(0.01) sqrt(2 / reps).
/// Throws std::invalid_argument for reps < 100.
DualityResult run_duality_test(const GossipNetwork& g, NodeId v, double t,
                               std::size_t reps, std::uint64_t seed,
                               unsigned workers = 0);

struct SandwichResult {
  Summary age;
  BoundReport bounds;
  double ratio = 0.0;  ///< mean / (lambda m*)
  bool pass = false;   ///< 99% CI inside [lower, upper]
};

SandwichResult run_sandwich(const GossipNetwork& g, NodeId v, double t,
                            std::size_t reps, std::uint64_t seed,
                            unsigned workers = 0);

struct ScalingPoint {
  std::size_t size_param = 0;
  std::size_t n = 0;
  NodeId node = 0;
  double t = 0.0;
  std::size_t m_star = 0;
  Summary age;
  double mean_over_log_n = 0.0;
};

struct ScalingResult {
  std::vector<ScalingPoint> points;
  LinearFit fit;  ///< log(mean age) against log(n)
  /// max/min - 1 of mean / log n across sizes.
  double log_ratio_spread = 0.0;
};

/// Sets the family's size parameter: n, m (torus, subdivided_cubic),
/// d (hypercube) or depth (regular_tree).
FamilySpec with_size(FamilySpec spec, std::size_t size);

/// Dual-sampled mean age at the default target for each size. Random
/// families draw an independent graph per size from the master seed.
/// t = nullopt selects default_horizon per size.
ScalingResult run_scaling(const FamilySpec& family, std::span<const std::size_t> sizes,
                          std::size_t reps, std::uint64_t seed,
                          std::optional<double> t = std::nullopt,
                          double lambda = 1.0, unsigned workers = 0);

struct OracleCompareResult {
  double exact_mean = 0.0;
  Summary empirical;
  double mean_z = 0.0;
  std::vector<double> grid;
  std::vector<double> exact_survival;
  std::vector<double> empirical_survival;
  double max_deviation = 0.0;
  double dkw = 0.0;
  bool pass = false;  ///< |z| <= 4 and max deviation within the DKW band
};

OracleCompareResult run_oracle_compare(const GossipNetwork& g, NodeId v,
                                       std::span<const double> grid,
                                       std::size_t reps, std::uint64_t seed,
                                       unsigned workers = 0);

// ---------------------------------------------------------------------------
// Declarative sweeps
// ---------------------------------------------------------------------------

enum class Analysis { duality, sandwich, scaling, oracle_compare };

std::string_view analysis_name(Analysis a);
std::optional<Analysis> parse_analysis(std::string_view name);

struct NodeRule {
  enum class Kind { family_default, fixed, random, all };
  Kind kind = Kind::family_default;
  NodeId id = 0;
};

/// A graph to run on: either a generated family or a graph file.
struct GraphSource {
  std::optional<FamilySpec> family;
  std::string file;
};

struct ExperimentSpec {
  Analysis analysis = Analysis::sandwich;
  std::vector<GraphSource> graphs;  ///< duality, sandwich, oracle_compare
  std::optional<FamilySpec> family; ///< scaling
  std::vector<std::size_t> sizes;   ///< scaling
  NodeRule node;
  std::optional<double> t;  ///< nullopt: default_horizon; may be kNoHorizon
  double lambda = 1.0;
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  std::vector<double> grid;  ///< oracle_compare survival points
  std::string output;
  std::string format = "csv";
};

ExperimentSpec experiment_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentSpec& spec);

/// FNV-1a over the canonical JSON form of the spec.
std::uint64_t spec_hash(const ExperimentSpec& spec);
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t x);

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct ExperimentResult {
  std::string analysis;
  std::uint64_t spec_hash = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json summary = nlohmann::json::object();
  bool pass = true;

  /// "# aoi-results v1 ..." comment line, header row, one line per row.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  std::string render(std::string_view format) const;
};

/// Runs every configuration sequentially; replicas inside a configuration
/// may run concurrently. Output depends only on the spec.
///
/// Duality sweeps tolerate one failing configuration: it is rerun once
/// with an independent seed and the rerun decides.
ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned workers = 0);

/// Yates network for a graph source, plus a printable label.
struct ResolvedGraph {
  GossipNetwork network;
  std::string label;
  std::optional<FamilySpec> family;
};
ResolvedGraph resolve_graph(const GraphSource& src, double lambda);

std::string family_label(const FamilySpec& spec);
std::string format_cell(const Cell& c);

}  // namespace aoi
