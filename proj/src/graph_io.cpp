#include "aoi/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace aoi {

using nlohmann::json;

namespace {

NodeId as_id(const json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw GraphError("node id must be a non-negative integer, got " + j.dump());
  return j.get<NodeId>();
}

GossipNetwork from_edges(const json& doc) {
  if (!doc.contains("n")) throw GraphError("edge document needs \"n\"");
  const auto n = doc.at("n").get<std::size_t>();
  const double lambda = doc.value("lambda", 1.0);
  UndirectedGraph g{n, {}};
  for (const json& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw GraphError("edge must be [u, v], got " + e.dump());
    g.edges.push_back({as_id(e[0]), as_id(e[1])});
  }
  return yates_network(g, lambda, doc.value("allow_isolated", false));
}

GossipNetwork from_arcs(const json& doc) {
  std::vector<NodeId> file_sources;
  if (doc.contains("sources")) {
    for (const json& s : doc.at("sources")) file_sources.push_back(as_id(s));
  } else if (doc.contains("source")) {
    file_sources.push_back(as_id(doc.at("source")));
  } else {
    throw GraphError("arc document needs \"source\" or \"sources\"");
  }
  if (file_sources.empty()) throw GraphError("empty source list");

  struct RawArc { NodeId t, h; double r; };
  std::vector<RawArc> raw;
  for (const json& a : doc.at("arcs")) {
    if (!a.is_array() || a.size() != 3)
      throw GraphError("arc must be [tail, head, rate], got " + a.dump());
    raw.push_back({as_id(a[0]), as_id(a[1]), a[2].get<double>()});
  }
  auto is_src = [&](NodeId x) {
    return std::find(file_sources.begin(), file_sources.end(), x) !=
           file_sources.end();
  };
  std::size_t n = 0;
  if (doc.contains("n")) {
    n = doc.at("n").get<std::size_t>();
  } else {
    for (const RawArc& a : raw) {
      if (!is_src(a.t)) n = std::max<std::size_t>(n, a.t + 1);
      if (!is_src(a.h)) n = std::max<std::size_t>(n, a.h + 1);
    }
  }
  std::map<NodeId, NodeId> remap;
  for (std::size_t j = 0; j < file_sources.size(); ++j) {
    if (file_sources[j] < n)
      throw GraphError("source id " + std::to_string(file_sources[j]) +
                       " collides with ordinary node range 0.." +
                       std::to_string(n - 1));
    if (!remap.emplace(file_sources[j], static_cast<NodeId>(n + j)).second)
      throw GraphError("duplicate source id");
  }
  auto map_id = [&](NodeId x) -> NodeId {
    if (x < n) return x;
    auto it = remap.find(x);
    if (it == remap.end())
      throw GraphError("node id " + std::to_string(x) + " out of range");
    return it->second;
  };
  std::vector<Arc> arcs;
  arcs.reserve(raw.size());
  for (const RawArc& a : raw) arcs.push_back({map_id(a.t), map_id(a.h), a.r});
  return GossipNetwork::from_arcs(n, std::move(arcs), doc.value("lambda", 1.0),
                                  file_sources.size());
}

}  // namespace

GossipNetwork network_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw GraphError("graph document must be an object");
    if (doc.contains("edges") && doc.contains("arcs"))
      throw GraphError("graph document has both \"edges\" and \"arcs\"");
    if (doc.contains("edges")) return from_edges(doc);
    if (doc.contains("arcs")) return from_arcs(doc);
    throw GraphError("graph document needs \"edges\" or \"arcs\"");
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed graph document: ") + e.what());
  }
}

json network_to_json(const GossipNetwork& g) {
  json doc;
  doc["n"] = g.size();
  doc["lambda"] = g.lambda();
  if (g.is_yates()) {
    const UndirectedGraph u = underlying_graph(g);
    json edges = json::array();
    std::vector<char> touched(u.n, 0);
    for (const Edge& e : u.edges) {
      edges.push_back({e.u, e.v});
      touched[e.u] = touched[e.v] = 1;
    }
    if (std::find(touched.begin(), touched.end(), 0) != touched.end())
      doc["allow_isolated"] = true;
    doc["edges"] = std::move(edges);
    return doc;
  }
  const Digraph& d = g.graph();
  if (d.source_count() == 1) {
    doc["source"] = d.source();
  } else {
    json s = json::array();
    for (std::size_t j = 0; j < d.source_count(); ++j) s.push_back(d.source(j));
    doc["sources"] = std::move(s);
  }
  json arcs = json::array();
  for (const Arc& a : d.arcs()) arcs.push_back({a.tail, a.head, a.rate});
  doc["arcs"] = std::move(arcs);
  return doc;
}

GossipNetwork read_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw GraphError("cannot parse " + path.string() + ": " + e.what());
  }
  return network_from_json(doc);
}

void write_network(const std::filesystem::path& path, const GossipNetwork& g,
                   const json& provenance) {
  json doc = network_to_json(g);
  if (!provenance.is_null()) doc["provenance"] = provenance;
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file " + path.string());
  out << doc.dump(1) << '\n';
}

}  // namespace aoi
