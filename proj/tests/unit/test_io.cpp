#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "aoi/graph_io.hpp"
#include "aoi/zoo.hpp"

using namespace aoi;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("aoi_test_" + name);
}

}  // namespace

TEST_CASE("edge-list documents round trip") {
  const auto g = yates_network(gen_torus(3, 2), 0.5);
  const auto doc = network_to_json(g);
  CHECK(doc.at("n") == 9);
  CHECK(doc.contains("edges"));
  CHECK(network_from_json(doc) == g);
  CHECK(network_from_json(json::parse(doc.dump())) == g);
}

TEST_CASE("arc documents round trip") {
  const auto g = GossipNetwork::from_arcs(3, {{3, 0, 0.25}, {0, 1, 2.0}, {1, 2, 0.5}, {2, 0, 1.0}}, 2.0);
  const auto doc = network_to_json(g);
  CHECK(doc.contains("arcs"));
  CHECK(network_from_json(doc) == g);

  const auto multi = add_source(yates_network(gen_cycle(4)), std::vector<NodeId>{2}, 0.75);
  CHECK(network_from_json(network_to_json(multi)) == multi);
}

TEST_CASE("arc documents with file-local source ids") {
  const auto doc = json::parse(R"({"n": 2, "source": 7, "arcs": [[7, 0, 1.0], [0, 1, 0.5]]})");
  const auto g = network_from_json(doc);
  CHECK(g.size() == 2);
  CHECK(g.source() == 2);
  CHECK(g.graph().out_arcs(2).size() == 1);
  CHECK(g.graph().out_arcs(2)[0].head == 0);
}

TEST_CASE("files with provenance") {
  const auto path = temp_file("io.json");
  const auto g = yates_network(gen_cycle(5));
  write_network(path, g, json{{"family", "cycle"}, {"seed", 3}});
  const auto doc = json::parse(std::ifstream(path));
  CHECK(doc.at("provenance").at("seed") == 3);
  CHECK(read_network(path) == g);
  std::filesystem::remove(path);
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(network_from_json(json::parse(R"({"n": 2, "edges": [[0, 5]]})")), GraphError);
  CHECK_THROWS_AS(network_from_json(json::parse(R"({"n": 2, "edges": [[0, 0]]})")), GraphError);
  CHECK_THROWS_AS(network_from_json(json::parse(R"({"n": 3, "edges": [[0, 1]]})")), GraphError);
  CHECK_THROWS_AS(network_from_json(json::parse(R"({"edges": "nope"})")), GraphError);
  CHECK_THROWS_AS(network_from_json(json::parse(R"({"n": 1, "source": 1, "arcs": [[1, 0, -1]]})")),
                  GraphError);
  CHECK_THROWS_AS(read_network(temp_file("does_not_exist.json")), GraphError);
  const auto path = temp_file("bad.json");
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(read_network(path), GraphError);
  std::filesystem::remove(path);
}
