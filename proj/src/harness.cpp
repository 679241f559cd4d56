#include "aoi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "aoi/exact.hpp"
#include "aoi/forward_sim.hpp"
#include "aoi/fpp.hpp"
#include "aoi/graph_io.hpp"

namespace aoi {

using nlohmann::json;

double default_horizon(const GossipNetwork& g, NodeId v) {
  const BallProfile p = ball_profile(g, v);
  return 10.0 * static_cast<double>(p.m_star) * static_cast<double>(p.max_degree);
}

NodeId default_target(const FamilySpec&) { return 0; }

DualityResult run_duality_test(const GossipNetwork& g, NodeId v, double t,
                               std::size_t reps, std::uint64_t seed,
                               unsigned workers) {
  if (reps < 100) throw std::invalid_argument("duality test needs reps >= 100");
  const NodeId nodes[] = {v};
  const auto fwd = forward_ages(g, nodes, t, reps, seed, workers);
  const auto dual = fpp_ages(g, v, t, reps, seed, {.workers = workers});
  DualityResult r;
  r.reps = reps;
  r.ks = ks_two_sample(fwd, dual);
  r.critical = ks_critical(reps, reps);
  r.pass = r.ks < r.critical;
  r.forward = summarize(fwd);
  r.fpp = summarize(dual);
  return r;
}

SandwichResult run_sandwich(const GossipNetwork& g, NodeId v, double t,
                            std::size_t reps, std::uint64_t seed,
                            unsigned workers) {
  const BallProfile profile = ball_profile(g, v);
  SandwichResult r;
  r.bounds = theorem_bounds(profile, t, g.lambda());
  const auto ages = fpp_ages(g, v, t, reps, seed, {.workers = workers});
  r.age = summarize(ages);
  r.ratio = r.age.mean / (g.lambda() * static_cast<double>(profile.m_star));
  r.pass = r.age.ci_low >= r.bounds.lower && r.age.ci_high <= r.bounds.upper;
  return r;
}

FamilySpec with_size(FamilySpec spec, std::size_t size) {
  switch (spec.family) {
    case Family::torus:
    case Family::subdivided_cubic:
      spec.m = size;
      break;
    case Family::hypercube:
      spec.d = size;
      break;
    case Family::regular_tree:
      spec.depth = size;
      break;
    default:
      spec.n = size;
  }
  return spec;
}

ScalingResult run_scaling(const FamilySpec& family, std::span<const std::size_t> sizes,
                          std::size_t reps, std::uint64_t seed,
                          std::optional<double> t, double lambda, unsigned workers) {
  if (sizes.size() < 2) throw std::invalid_argument("scaling needs >= 2 sizes");
  ScalingResult out;
  std::vector<double> log_n, log_mean;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    FamilySpec spec = with_size(family, sizes[i]);
    spec.seed = derive_seed(family.seed, 0x5343414c, i);
    const GossipNetwork g = yates_network(generate(spec), lambda);
    ScalingPoint pt;
    pt.size_param = sizes[i];
    pt.n = g.size();
    pt.node = default_target(spec);
    pt.m_star = ball_profile(g, pt.node).m_star;
    pt.t = t ? *t : default_horizon(g, pt.node);
    const auto ages = fpp_ages(g, pt.node, pt.t, reps, derive_seed(seed, i),
                               {.workers = workers});
    pt.age = summarize(ages);
    pt.mean_over_log_n = pt.age.mean / std::log(static_cast<double>(pt.n));
    log_n.push_back(std::log(static_cast<double>(pt.n)));
    log_mean.push_back(std::log(pt.age.mean));
    out.points.push_back(pt);
  }
  out.fit = fit_line(log_n, log_mean);
  double lo = out.points.front().mean_over_log_n, hi = lo;
  for (const auto& p : out.points) {
    lo = std::min(lo, p.mean_over_log_n);
    hi = std::max(hi, p.mean_over_log_n);
  }
  out.log_ratio_spread = hi / lo - 1.0;
  return out;
}

OracleCompareResult run_oracle_compare(const GossipNetwork& g, NodeId v,
                                       std::span<const double> grid,
                                       std::size_t reps, std::uint64_t seed,
                                       unsigned workers) {
  const AuxiliaryGraph aux = reverse(g);
  OracleCompareResult r;
  r.exact_mean = exact_expected_passage(aux, v);
  r.grid.assign(grid.begin(), grid.end());
  r.exact_survival = exact_survival_curve(aux, v, grid);
  auto samples = fpp_ages(g, v, kNoHorizon, reps, seed, {.workers = workers});
  r.empirical = summarize(samples);
  r.mean_z = r.empirical.std_error > 0.0
                 ? (r.empirical.mean - r.exact_mean) / r.empirical.std_error
                 : 0.0;
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double emp = empirical_survival(samples, grid[i]);
    r.empirical_survival.push_back(emp);
    r.max_deviation = std::max(r.max_deviation, std::abs(emp - r.exact_survival[i]));
  }
  r.dkw = dkw_epsilon(reps, 0.01);
  r.pass = std::abs(r.mean_z) <= 4.0 && r.max_deviation <= r.dkw;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::pair<Analysis, std::string_view> kAnalyses[] = {
    {Analysis::duality, "duality"},
    {Analysis::sandwich, "sandwich"},
    {Analysis::scaling, "scaling"},
    {Analysis::oracle_compare, "oracle-compare"},
};

json horizon_to_json(const std::optional<double>& t) {
  if (!t) return nullptr;
  if (std::isinf(*t)) return "inf";
  return *t;
}

std::optional<double> horizon_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kNoHorizon;
    if (s == "default") return std::nullopt;
    throw std::invalid_argument("t must be a number, \"inf\" or \"default\"");
  }
  return j.get<double>();
}

Cell num(std::size_t x) { return static_cast<std::int64_t>(x); }

}  // namespace

std::string_view analysis_name(Analysis a) {
  for (const auto& [k, name] : kAnalyses) {
    if (k == a) return name;
  }
  return "unknown";
}

std::optional<Analysis> parse_analysis(std::string_view name) {
  for (const auto& [k, n] : kAnalyses) {
    if (n == name) return k;
  }
  return std::nullopt;
}

ExperimentSpec experiment_from_json(const json& j) {
  try {
    ExperimentSpec s;
    const auto name = j.at("analysis").get<std::string>();
    const auto kind = parse_analysis(name);
    if (!kind) throw std::invalid_argument("unknown analysis '" + name + "'");
    s.analysis = *kind;
    if (j.contains("graphs")) {
      for (const json& g : j.at("graphs")) {
        GraphSource src;
        if (g.is_string())
          src.file = g.get<std::string>();
        else
          src.family = family_spec_from_json(g);
        s.graphs.push_back(std::move(src));
      }
    }
    if (j.contains("family")) s.family = family_spec_from_json(j.at("family"));
    s.sizes = j.value("sizes", std::vector<std::size_t>{});
    if (j.contains("node")) {
      const json& n = j.at("node");
      if (n.is_number_integer()) {
        s.node = {NodeRule::Kind::fixed, n.get<NodeId>()};
      } else {
        const auto r = n.get<std::string>();
        if (r == "all") s.node.kind = NodeRule::Kind::all;
        else if (r == "random") s.node.kind = NodeRule::Kind::random;
        else if (r == "default") s.node.kind = NodeRule::Kind::family_default;
        else throw std::invalid_argument("node must be an id, \"all\", \"random\" or \"default\"");
      }
    }
    s.t = horizon_from_json(j.value("t", json(nullptr)));
    s.lambda = j.value("lambda", 1.0);
    s.reps = j.value("reps", std::size_t{1000});
    s.seed = j.value("seed", std::uint64_t{1});
    s.grid = j.value("grid", std::vector<double>{});
    s.output = j.value("output", std::string{});
    s.format = j.value("format", std::string{"csv"});
    if (s.reps < 2) throw std::invalid_argument("reps must be >= 2");
    if (s.analysis == Analysis::scaling) {
      if (!s.family) throw std::invalid_argument("scaling needs a \"family\"");
      if (s.sizes.size() < 4) throw std::invalid_argument("scaling needs >= 4 sizes");
      std::vector<std::size_t> ns;
      for (std::size_t size : s.sizes) ns.push_back(family_node_count(with_size(*s.family, size)));
      const auto [lo, hi] = std::minmax_element(ns.begin(), ns.end());
      if (*lo == 0 || *hi < 10 * *lo)
        throw std::invalid_argument("scaling sizes must span at least a decade in n");
    } else if (s.graphs.empty()) {
      throw std::invalid_argument("experiment needs \"graphs\"");
    }
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment spec: ") + e.what());
  }
}

json to_json(const ExperimentSpec& s) {
  json j;
  j["analysis"] = analysis_name(s.analysis);
  if (!s.graphs.empty()) {
    json gs = json::array();
    for (const auto& g : s.graphs) {
      if (g.family) gs.push_back(to_json(*g.family));
      else gs.push_back(g.file);
    }
    j["graphs"] = std::move(gs);
  }
  if (s.family) j["family"] = to_json(*s.family);
  if (!s.sizes.empty()) j["sizes"] = s.sizes;
  switch (s.node.kind) {
    case NodeRule::Kind::fixed: j["node"] = s.node.id; break;
    case NodeRule::Kind::random: j["node"] = "random"; break;
    case NodeRule::Kind::all: j["node"] = "all"; break;
    case NodeRule::Kind::family_default: j["node"] = "default"; break;
  }
  j["t"] = horizon_to_json(s.t);
  j["lambda"] = s.lambda;
  j["reps"] = s.reps;
  j["seed"] = s.seed;
  if (!s.grid.empty()) j["grid"] = s.grid;
  return j;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t spec_hash(const ExperimentSpec& spec) {
  return fnv1a(to_json(spec).dump());
}

std::string family_label(const FamilySpec& spec) {
  const json j = to_json(spec);
  std::string out(family_name(spec.family));
  out += "(";
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    if (k == "family" || (k == "seed" && spec.family != Family::random_regular &&
                          spec.family != Family::rgg &&
                          spec.family != Family::cycle_plus_matching &&
                          spec.family != Family::subdivided_cubic))
      continue;
    if (!first) out += " ";
    out += k + "=" + v.dump();
    first = false;
  }
  return out + ")";
}

ResolvedGraph resolve_graph(const GraphSource& src, double lambda) {
  if (src.family) {
    return {yates_network(generate(*src.family), lambda), family_label(*src.family),
            src.family};
  }
  return {read_network(src.file), src.file, std::nullopt};
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(double x) const {
      if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.10g", x);
      return buf;
    }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

std::string ExperimentResult::to_csv() const {
  std::ostringstream os;
  os << "# aoi-results v1 analysis=" << analysis << " spec=" << hex64(spec_hash)
     << " seed=" << seed << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << "\n";
  }
  if (!summary.empty()) os << "# summary " << summary.dump() << "\n";
  return os.str();
}

json ExperimentResult::to_json() const {
  json j;
  j["schema"] = "aoi-results/1";
  j["analysis"] = analysis;
  j["provenance"] = {{"seed", seed}, {"spec_hash", hex64(spec_hash)}};
  j["pass"] = pass;
  json rs = json::array();
  for (const auto& row : rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) r[columns[i]] = nullptr;
            else if constexpr (std::is_same_v<T, double>) {
              if (std::isinf(x)) r[columns[i]] = x > 0 ? "inf" : "-inf";
              else r[columns[i]] = x;
            } else r[columns[i]] = x;
          },
          row[i]);
    }
    rs.push_back(std::move(r));
  }
  j["rows"] = std::move(rs);
  j["summary"] = summary;
  return j;
}

std::string ExperimentResult::render(std::string_view format) const {
  if (format == "json") return to_json().dump(2) + "\n";
  if (format == "csv") return to_csv();
  throw std::invalid_argument("format must be csv or json");
}

namespace {

std::vector<NodeId> pick_nodes(const NodeRule& rule, const ResolvedGraph& rg,
                               std::uint64_t seed, std::size_t graph_index) {
  const std::size_t n = rg.network.size();
  switch (rule.kind) {
    case NodeRule::Kind::fixed:
      if (rule.id >= n) throw GraphError("node " + std::to_string(rule.id) + " out of range");
      return {rule.id};
    case NodeRule::Kind::all: {
      std::vector<NodeId> all(n);
      for (NodeId v = 0; v < n; ++v) all[v] = v;
      return all;
    }
    case NodeRule::Kind::random: {
      Rng rng(derive_seed(seed, 0x4e4f4445, graph_index));
      return {static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng))};
    }
    case NodeRule::Kind::family_default:
      break;
  }
  return {rg.family ? default_target(*rg.family) : NodeId{0}};
}

void run_duality_rows(const ExperimentSpec& spec, unsigned workers,
                      ExperimentResult& out) {
  out.columns = {"graph", "n", "node", "t", "reps", "ks", "ks_critical",
                 "forward_mean", "forward_se", "fpp_mean", "fpp_se", "retried", "pass"};
  struct Config { ResolvedGraph rg; NodeId v; double t; std::uint64_t seed; };
  std::vector<Config> configs;
  std::vector<DualityResult> results;
  std::size_t cfg_index = 0;
  for (std::size_t gi = 0; gi < spec.graphs.size(); ++gi) {
    ResolvedGraph rg = resolve_graph(spec.graphs[gi], spec.lambda);
    for (NodeId v : pick_nodes(spec.node, rg, spec.seed, gi)) {
      const double t = spec.t ? *spec.t : default_horizon(rg.network, v);
      const std::uint64_t s = derive_seed(spec.seed, 0x4455414c, cfg_index++);
      results.push_back(run_duality_test(rg.network, v, t, spec.reps, s, workers));
      configs.push_back({rg, v, t, s});
    }
  }
  const auto failures = std::count_if(results.begin(), results.end(),
                                      [](const DualityResult& r) { return !r.pass; });
  std::vector<bool> retried(results.size(), false);
  if (failures == 1) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].pass) continue;
      const Config& c = configs[i];
      results[i] = run_duality_test(c.rg.network, c.v, c.t, spec.reps,
                                    derive_seed(c.seed, 0x52455452), workers);
      retried[i] = true;
    }
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const auto& c = configs[i];
    out.rows.push_back({c.rg.label, num(c.rg.network.size()), num(std::size_t{c.v}), c.t,
                        num(r.reps), r.ks, r.critical, r.forward.mean, r.forward.std_error,
                        r.fpp.mean, r.fpp.std_error, bool(retried[i]), r.pass});
    out.pass = out.pass && r.pass;
  }
  out.summary["failures_before_retry"] = failures;
}

void run_sandwich_rows(const ExperimentSpec& spec, unsigned workers,
                       ExperimentResult& out) {
  out.columns = {"graph", "n", "node", "t", "lambda", "reps", "mean", "se",
                 "ci_low", "ci_high", "m_star", "phi_m_star", "min_degree",
                 "max_degree", "lower", "upper", "active_term", "ratio", "pass"};
  std::size_t cfg_index = 0;
  for (std::size_t gi = 0; gi < spec.graphs.size(); ++gi) {
    const ResolvedGraph rg = resolve_graph(spec.graphs[gi], spec.lambda);
    for (NodeId v : pick_nodes(spec.node, rg, spec.seed, gi)) {
      const double t = spec.t ? *spec.t : default_horizon(rg.network, v);
      const auto r = run_sandwich(rg.network, v, t, spec.reps,
                                  derive_seed(spec.seed, 0x53414e44, cfg_index++), workers);
      out.rows.push_back({rg.label, num(rg.network.size()), num(std::size_t{v}), t,
                          rg.network.lambda(), num(spec.reps), r.age.mean, r.age.std_error,
                          r.age.ci_low, r.age.ci_high, num(r.bounds.m_star),
                          r.bounds.phi_m_star, num(r.bounds.min_degree),
                          num(r.bounds.max_degree), r.bounds.lower, r.bounds.upper,
                          std::string(term_name(r.bounds.active)), r.ratio, r.pass});
      out.pass = out.pass && r.pass;
    }
  }
}

void run_scaling_rows(const ExperimentSpec& spec, unsigned workers,
                      ExperimentResult& out) {
  out.columns = {"family", "size", "n", "node", "t", "reps", "m_star", "mean", "se",
                 "ci_low", "ci_high", "mean_over_log_n"};
  const auto r = run_scaling(*spec.family, spec.sizes, spec.reps, spec.seed, spec.t,
                             spec.lambda, workers);
  for (const auto& p : r.points) {
    out.rows.push_back({std::string(family_name(spec.family->family)), num(p.size_param),
                        num(p.n), num(std::size_t{p.node}), p.t, num(spec.reps),
                        num(p.m_star), p.age.mean, p.age.std_error, p.age.ci_low,
                        p.age.ci_high, p.mean_over_log_n});
  }
  out.summary["slope"] = r.fit.slope;
  out.summary["slope_se"] = r.fit.slope_se;
  out.summary["intercept"] = r.fit.intercept;
  out.summary["r_squared"] = r.fit.r_squared;
  out.summary["residual_sd"] = r.fit.residual_sd;
  out.summary["residuals"] = r.fit.residuals;
  out.summary["log_ratio_spread"] = r.log_ratio_spread;
}

void run_oracle_rows(const ExperimentSpec& spec, unsigned workers,
                     ExperimentResult& out) {
  out.columns = {"graph", "n", "node", "reps", "exact_mean", "mean", "se", "z",
                 "max_survival_dev", "dkw", "pass"};
  std::vector<double> grid = spec.grid;
  if (grid.empty()) grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::size_t cfg_index = 0;
  for (std::size_t gi = 0; gi < spec.graphs.size(); ++gi) {
    const ResolvedGraph rg = resolve_graph(spec.graphs[gi], spec.lambda);
    for (NodeId v : pick_nodes(spec.node, rg, spec.seed, gi)) {
      const auto r = run_oracle_compare(rg.network, v, grid, spec.reps,
                                        derive_seed(spec.seed, 0x4f524143, cfg_index++),
                                        workers);
      out.rows.push_back({rg.label, num(rg.network.size()), num(std::size_t{v}),
                          num(spec.reps), r.exact_mean, r.empirical.mean,
                          r.empirical.std_error, r.mean_z, r.max_deviation, r.dkw, r.pass});
      out.pass = out.pass && r.pass;
    }
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned workers) {
  ExperimentResult out;
  out.analysis = std::string(analysis_name(spec.analysis));
  out.spec_hash = spec_hash(spec);
  out.seed = spec.seed;
  switch (spec.analysis) {
    case Analysis::duality: run_duality_rows(spec, workers, out); break;
    case Analysis::sandwich: run_sandwich_rows(spec, workers, out); break;
    case Analysis::scaling: run_scaling_rows(spec, workers, out); break;
    case Analysis::oracle_compare: run_oracle_rows(spec, workers, out); break;
  }
  return out;
}

}  // namespace aoi
