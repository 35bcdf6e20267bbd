#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

#include "lobsterctl/control.hpp"
#include "lobsterctl/csa.hpp"
#include "lobsterctl/experiments.hpp"
#include "lobsterctl/graph.hpp"
#include "lobsterctl/lobster.hpp"
#include "lobsterctl/mpcs.hpp"

namespace lobsterctl {

// {"n": 7, "edges": [[1,2], ...]} with 1-based ids, or an undirected DOT
// graph `graph [name] { 1 -- 2; 3; ... }` (n is the largest id mentioned).
// Throws Error(parse) for malformed text, Error(invalid_argument) for
// duplicate edges, self-loops and out-of-range ids.
Graph parse_graph(std::string_view text);

// Canonical compact JSON: edges sorted, i < j.
std::string serialize_graph(const Graph& g);

LobsterSpec parse_lobster_spec(std::string_view text);
std::string serialize_lobster_spec(const LobsterSpec& spec);

SweepConfig parse_sweep_config(std::string_view text);

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const CriticalRecord& record);
nlohmann::json to_json(const MpcsCatalog& catalog);
nlohmann::json to_json(const ControllabilityVerdict& verdict);
nlohmann::json to_json(const LeaderReport& report);
nlohmann::json to_json(const MinLeaderResult& result);

// Whole-file helpers; Error(io) names the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace lobsterctl
