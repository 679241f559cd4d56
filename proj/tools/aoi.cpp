// aoi: command line front end for the gossip age-of-information toolkit.
//
// Exit codes: 0 all gates pass, 1 a statistical gate failed, 2 bad input.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aoi/bounds.hpp"
#include "aoi/exact.hpp"
#include "aoi/forward_sim.hpp"
#include "aoi/fpp.hpp"
#include "aoi/graph_io.hpp"
#include "aoi/harness.hpp"
#include "aoi/zoo.hpp"

using namespace aoi;
using nlohmann::json;

namespace {

constexpr int kGateFailed = 1;
constexpr int kBadInput = 2;

struct Options {
  std::string graph;
  std::string family;
  std::size_t n = 0, m = 0, d = 0, depth = 0, degree = 0;
  double gamma = 0.0, alpha = 0.0;
  std::optional<std::uint64_t> graph_seed;

  std::string node = "default";
  std::string t;  // empty: default horizon
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  double lambda = 1.0;
  std::string out;
  std::string format = "csv";
  std::string mode = "lazy";
  std::vector<double> grid;
  std::string spec;
  std::vector<std::size_t> sizes;
  std::optional<double> slope_min, slope_max;
  unsigned workers = 0;
};

void add_graph_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph, "graph JSON file");
  cmd->add_option("--family", o.family, "cycle|torus|hypercube|regular_tree|complete|"
                                        "random_regular|rgg|cycle_plus_matching|subdivided_cubic");
  cmd->add_option("--n", o.n, "node count");
  cmd->add_option("--m", o.m, "side length (torus) or base size (subdivided_cubic)");
  cmd->add_option("-d,--d", o.d, "dimension or degree");
  cmd->add_option("--depth", o.depth, "tree depth");
  cmd->add_option("--degree", o.degree, "tree degree");
  cmd->add_option("--gamma", o.gamma, "subdivision exponent");
  cmd->add_option("--alpha", o.alpha, "geometric graph radius factor");
  cmd->add_option("--graph-seed", o.graph_seed, "seed for random families (default: --seed)");
  cmd->add_option("--lambda", o.lambda, "total update rate lambda");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--node", o.node, "node id, 'all', 'random' or 'default'");
  cmd->add_option("--t", o.t, "horizon (number or 'inf'; default 10 m* Delta)");
  cmd->add_option("--reps", o.reps, "replicas");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--workers", o.workers, "worker threads (0: all cores)");
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

FamilySpec family_from(const Options& o) {
  const auto fam = parse_family(o.family);
  if (!fam) throw std::invalid_argument("unknown family '" + o.family + "'");
  FamilySpec s;
  s.family = *fam;
  s.n = o.n;
  s.m = o.m;
  s.d = o.d;
  s.depth = o.depth;
  s.degree = o.degree;
  s.gamma = o.gamma;
  s.alpha = o.alpha;
  s.seed = o.graph_seed.value_or(o.seed);
  return s;
}

GraphSource source_from(const Options& o) {
  if (!o.graph.empty() == !o.family.empty())
    throw std::invalid_argument("give exactly one of --graph and --family");
  GraphSource src;
  if (!o.graph.empty()) src.file = o.graph;
  else src.family = family_from(o);
  return src;
}

json source_json(const GraphSource& src) {
  return src.family ? to_json(*src.family) : json(src.file);
}

std::optional<double> horizon_from(const std::string& t) {
  if (t.empty()) return std::nullopt;
  if (t == "inf") return kNoHorizon;
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size() || !(x >= 0.0)) throw std::invalid_argument("--t must be a number >= 0 or 'inf'");
  return x;
}

json horizon_json(std::optional<double> t) {
  if (!t) return nullptr;
  return std::isinf(*t) ? json("inf") : json(*t);
}

NodeRule node_rule_from(const std::string& s) {
  NodeRule r;
  if (s == "all") r.kind = NodeRule::Kind::all;
  else if (s == "random") r.kind = NodeRule::Kind::random;
  else if (s == "default") r.kind = NodeRule::Kind::family_default;
  else {
    std::size_t used = 0;
    unsigned long id = 0;
    try {
      id = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw std::invalid_argument("bad --node '" + s + "'");
    r.kind = NodeRule::Kind::fixed;
    r.id = static_cast<NodeId>(id);
  }
  return r;
}

std::vector<NodeId> nodes_for(const Options& o, const ResolvedGraph& rg) {
  const NodeRule rule = node_rule_from(o.node);
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
      Rng rng(derive_seed(o.seed, 0x4e4f4445));
      return {static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng))};
    }
    case NodeRule::Kind::family_default:
      break;
  }
  return {rg.family ? default_target(*rg.family) : NodeId{0}};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + o.out);
  f << text;
}

// Per-sample tables: a versioned header comment, then one row per sample.
std::string samples_text(const Options& o, std::string_view method, std::uint64_t hash,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<Cell>>& rows) {
  if (o.format == "json") {
    json j;
    j["schema"] = "aoi-samples/1";
    j["method"] = method;
    j["provenance"] = {{"seed", o.seed}, {"spec_hash", hex64(hash)}};
    json rs = json::array();
    for (const auto& row : rows) {
      json r = json::array();
      for (const Cell& c : row) r.push_back(format_cell(c));
      rs.push_back(std::move(r));
    }
    j["columns"] = columns;
    j["rows"] = std::move(rs);
    return j.dump(1) + "\n";
  }
  std::ostringstream os;
  os << "# aoi-samples v1 method=" << method << " spec=" << hex64(hash) << " seed=" << o.seed
     << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

Cell count(std::size_t x) { return static_cast<std::int64_t>(x); }

std::uint64_t request_hash(std::string_view command, const Options& o, const GraphSource& src,
                           json extra = json::object()) {
  json j = extra;
  j["command"] = command;
  j["graph"] = source_json(src);
  j["lambda"] = o.lambda;
  j["node"] = o.node;
  j["t"] = horizon_json(horizon_from(o.t));
  j["reps"] = o.reps;
  j["seed"] = o.seed;
  return fnv1a(j.dump());
}

int cmd_gen(const Options& o) {
  if (o.family.empty()) throw std::invalid_argument("gen needs --family");
  const FamilySpec spec = family_from(o);
  const GossipNetwork g = yates_network(generate(spec), o.lambda);
  json prov = to_json(spec);
  prov["n"] = g.size();
  if (o.out.empty()) {
    json doc = network_to_json(g);
    doc["provenance"] = prov;
    std::cout << doc.dump(1) << "\n";
  } else {
    write_network(o.out, g, prov);
  }
  return 0;
}

int cmd_simulate(const Options& o) {
  const GraphSource src = source_from(o);
  const ResolvedGraph rg = resolve_graph(src, o.lambda);
  const auto nodes = nodes_for(o, rg);
  const auto t_opt = horizon_from(o.t);
  const double t = t_opt ? *t_opt : default_horizon(rg.network, nodes.front());
  const auto ages = forward_ages(rg.network, nodes, t, o.reps, o.seed, o.workers);
  std::vector<std::vector<Cell>> rows;
  rows.reserve(ages.size());
  for (std::size_t i = 0; i < o.reps; ++i)
    for (std::size_t k = 0; k < nodes.size(); ++k)
      rows.push_back({count(i), count(nodes[k]), t, ages[i * nodes.size() + k]});
  emit(o, samples_text(o, "forward", request_hash("simulate", o, src), {"replica", "node", "t", "age"},
                       rows));
  return 0;
}

int cmd_fpp(const Options& o) {
  const GraphSource src = source_from(o);
  const ResolvedGraph rg = resolve_graph(src, o.lambda);
  BatchOptions opts;
  opts.workers = o.workers;
  if (o.mode == "lazy") opts.mode = WeightMode::lazy;
  else if (o.mode == "upfront") opts.mode = WeightMode::upfront;
  else throw std::invalid_argument("--mode must be lazy or upfront");
  const auto t_opt = horizon_from(o.t);
  std::vector<std::vector<Cell>> rows;
  for (NodeId v : nodes_for(o, rg)) {
    const double t = t_opt ? *t_opt : default_horizon(rg.network, v);
    const auto samples = fpp_samples(rg.network, v, t, o.reps, derive_seed(o.seed, v), opts);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      rows.push_back({count(i), count(v), t, samples[i].value, samples[i].age(),
                      count(samples[i].explored)});
    }
  }
  const auto hash = request_hash("fpp", o, src, {{"mode", o.mode}});
  emit(o, samples_text(o, "fpp", hash, {"replica", "node", "t", "passage", "age", "explored"}, rows));
  return 0;
}

int cmd_oracle(const Options& o) {
  const GraphSource src = source_from(o);
  const ResolvedGraph rg = resolve_graph(src, o.lambda);
  const AuxiliaryGraph aux = reverse(rg.network);
  ExperimentResult r;
  r.analysis = "oracle";
  r.seed = o.seed;
  r.spec_hash = request_hash("oracle", o, src, {{"grid", o.grid}});
  r.columns = {"graph", "node", "quantity", "a", "value"};
  for (NodeId v : nodes_for(o, rg)) {
    r.rows.push_back({rg.label, count(v), std::string("mean"), Cell{},
                      exact_expected_passage(aux, v)});
    if (o.grid.empty()) continue;
    const auto s = exact_survival_curve(aux, v, o.grid);
    for (std::size_t i = 0; i < s.size(); ++i)
      r.rows.push_back({rg.label, count(v), std::string("survival"), o.grid[i], s[i]});
  }
  emit(o, r.render(o.format));
  return 0;
}

int cmd_bounds(const Options& o) {
  const GraphSource src = source_from(o);
  const ResolvedGraph rg = resolve_graph(src, o.lambda);
  const auto t_opt = horizon_from(o.t);
  ExperimentResult r;
  r.analysis = "bounds";
  r.seed = o.seed;
  r.spec_hash = request_hash("bounds", o, src);
  r.columns = {"graph", "n", "node", "t", "lambda", "m_star", "phi_m_star", "min_degree",
               "max_degree", "lower", "upper", "active_term"};
  for (NodeId v : nodes_for(o, rg)) {
    const BallProfile p = ball_profile(rg.network, v);
    const double t = t_opt ? *t_opt : default_horizon(rg.network, v);
    const BoundReport b = theorem_bounds(p, t, rg.network.lambda());
    r.rows.push_back({rg.label, count(rg.network.size()), count(v), t, b.lambda, count(b.m_star),
                      b.phi_m_star, count(b.min_degree), count(b.max_degree), b.lower, b.upper,
                      std::string(term_name(b.active))});
  }
  emit(o, r.render(o.format));
  return 0;
}

ExperimentSpec experiment_from_flags(Analysis a, const Options& o) {
  ExperimentSpec s;
  s.analysis = a;
  s.graphs = {source_from(o)};
  s.node = node_rule_from(o.node);
  s.t = horizon_from(o.t);
  s.lambda = o.lambda;
  s.reps = o.reps;
  s.seed = o.seed;
  s.grid = o.grid;
  s.output = o.out;
  s.format = o.format;
  return experiment_from_json(to_json(s));  // same validation as spec files
}

int finish(const Options& o, const ExperimentResult& r) {
  emit(o, r.render(o.format));
  return r.pass ? 0 : kGateFailed;
}

int cmd_scan(Options o) {
  ExperimentSpec spec;
  if (!o.spec.empty()) {
    std::ifstream f(o.spec);
    if (!f) throw std::invalid_argument("cannot read " + o.spec);
    json doc;
    try {
      doc = json::parse(f);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("spec is not valid JSON: ") + e.what());
    }
    spec = experiment_from_json(doc);
    if (o.out.empty()) o.out = spec.output;
    o.format = spec.format;
  } else {
    if (o.family.empty()) throw std::invalid_argument("scan needs --spec or --family with --sizes");
    json doc = {{"analysis", "scaling"}, {"family", to_json(family_from(o))}, {"sizes", o.sizes},
                {"t", horizon_json(horizon_from(o.t))}, {"lambda", o.lambda}, {"reps", o.reps},
                {"seed", o.seed}, {"format", o.format}};
    spec = experiment_from_json(doc);
  }
  ExperimentResult r = run_experiment(spec, o.workers);
  if (spec.analysis == Analysis::scaling && (o.slope_min || o.slope_max)) {
    const double slope = r.summary.at("slope").get<double>();
    r.pass = (!o.slope_min || slope >= *o.slope_min) && (!o.slope_max || slope <= *o.slope_max);
    r.summary["slope_gate"] = {{"min", o.slope_min ? json(*o.slope_min) : json(nullptr)},
                               {"max", o.slope_max ? json(*o.slope_max) : json(nullptr)},
                               {"pass", r.pass}};
  }
  return finish(o, r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age of information in gossip networks: simulation, duality checks and bounds"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "generate a graph family member as JSON");
  add_graph_flags(gen, o);
  gen->add_option("--seed", o.seed, "seed for random families");
  gen->add_option("--out", o.out, "output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "forward-simulated ages");
  auto* fpp = app.add_subcommand("fpp", "ages through first passage percolation");
  auto* oracle = app.add_subcommand("oracle", "exact mean passage and survival (n <= 20 / 12)");
  auto* bounds = app.add_subcommand("bounds", "sandwich bounds on the mean age");
  auto* duality = app.add_subcommand("duality", "KS test of forward against dual ages");
  auto* sandwich = app.add_subcommand("sandwich", "check the sampled mean against the bounds");
  for (auto* cmd : {simulate, fpp, oracle, bounds, duality, sandwich}) {
    add_graph_flags(cmd, o);
    add_run_flags(cmd, o);
    add_output_flags(cmd, o);
  }
  fpp->add_option("--mode", o.mode, "lazy or upfront arc weights");
  oracle->add_option("--grid", o.grid, "survival points")->delimiter(',');

  auto* scan = app.add_subcommand("scan", "run an experiment file or a scaling sweep");
  add_graph_flags(scan, o);
  add_run_flags(scan, o);
  add_output_flags(scan, o);
  scan->add_option("--spec", o.spec, "experiment JSON file");
  scan->add_option("--sizes", o.sizes, "size parameters for a scaling sweep")->delimiter(',');
  scan->add_option("--slope-min", o.slope_min, "fail unless the fitted slope is at least this");
  scan->add_option("--slope-max", o.slope_max, "fail unless the fitted slope is at most this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (*gen) code = cmd_gen(o);
    else if (*simulate) code = cmd_simulate(o);
    else if (*fpp) code = cmd_fpp(o);
    else if (*oracle) code = cmd_oracle(o);
    else if (*bounds) code = cmd_bounds(o);
    else if (*duality) code = finish(o, run_experiment(experiment_from_flags(Analysis::duality, o), o.workers));
    else if (*sandwich) code = finish(o, run_experiment(experiment_from_flags(Analysis::sandwich, o), o.workers));
    else if (*scan) code = cmd_scan(o);
  } catch (const std::exception& e) {
    std::cerr << "aoi: " << e.what() << "\n";
    return kBadInput;
  }
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
  std::cerr << "wall time " << wall.count() << " s\n";
  return code;
}
