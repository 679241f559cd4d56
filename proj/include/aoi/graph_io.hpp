#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "aoi/graph.hpp"

namespace aoi {

// Graph documents come in two shapes:
//   {"n": 3, "lambda": 1.0, "edges": [[0,1],[1,2]]}            Yates weights
//   {"n": 2, "lambda": 1.0, "source": 2, "arcs": [[2,0,0.5],...]}  explicit arcs
// The arc form also accepts "sources": [ids] for several sources. An
// optional "provenance" object is carried through and ignored on read.

GossipNetwork network_from_json(const nlohmann::json& doc);
nlohmann::json network_to_json(const GossipNetwork& g);

GossipNetwork read_network(const std::filesystem::path& path);
void write_network(const std::filesystem::path& path, const GossipNetwork& g,
                   const nlohmann::json& provenance = nullptr);

}  // namespace aoi
