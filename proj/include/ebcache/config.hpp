// config.hpp — the JSON experiment configuration.
//
// Schema (defaults in parentheses; unknown keys are rejected with a
// suggestion; errors carry the JSON path of the offending key):
//
//   seed       unsigned master seed (0)
//   topology   required. {"type": "generated", "nodes": N, "region_side": (100.0)}
//              | {"type": "edge_list", "path": "<file>"}
//              | {"type": "edges", "nodes": N, "edges": [[u, v], ...]}
//   catalog    required. {"contents": C, "zipf_beta": (1.0), "cache_size": (1)}
//   phy        {"model": "sinr", "tx_power_dbm": (20), "pathloss_exponent": (4),
//               "noise_dbm": (-120), "sinr_threshold_db": (3), "subcarriers": (10),
//               "rate": (2), "trials": (100000)}
//              | {"model": "fixed", "p": scalar-or-array (1.0), "rate": (2)}
//   request    {"lambda": scalar-or-array (0.1)}   contents per unit time per node
//   strategy   "eccds" | "ucs" | "brr_cvr" | "oracle" | "no_match"  ("eccds")
//   solver     {"tau0": (1), "growth": (1.5), "tau_max": (1e4), "samples": (20),
//               "tolerance": (1e-6), "max_iterations": (200), "seed_spread": (0.25),
//               "oracle_budget": (10000000)}
//   sim        {"buffer": (100), "warmup_slots": (10000), "measure_slots": (50000),
//               "find_capacity": (false), "capacity_iterations": (12), "trace_path": ("")}
//   sweep      {"parameter": "subcarriers"|"cache_size"|"zipf_beta"|"lambda",
//               "values": [...], "measure": "capacity"|"capacity_ratio"|"objective"|
//               "eb_error" ("capacity_ratio"), "analogue": "fig2"|"table1"|"fig3a"|
//               "fig3b"|"none" ("none")}
//   plans      inline plans object or a path string to a plans JSON file
//   output     {"dir": ("."), "format": "json"|"csv" ("json")}
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ebcache {

struct TopologyConfig {
    std::string type = "generated";
    int nodes = 0;
    double region_side = 100.0;
    std::string path;
    std::vector<std::pair<int, int>> edges;
};

struct CatalogConfig {
    int contents = 0;
    double zipf_beta = 1.0;
    int cache_size = 1;
};

struct PhyBlock {
    std::string model = "sinr";
    double tx_power_dbm = 20.0;
    double pathloss_exponent = 4.0;
    double noise_dbm = -120.0;
    double sinr_threshold_db = 3.0;
    int subcarriers = 10;
    int trials = 100000;
    double rate = 2.0;
    bool fixed_scalar = true;            // model == "fixed": scalar p vs per-node array
    double fixed_value = 1.0;
    std::vector<double> fixed_p;
};

struct RequestBlock {
    bool scalar = true;
    double value = 0.1;
    std::vector<double> lambda;
};

struct SolverBlock {
    double tau0 = 1.0;
    double growth = 1.5;
    double tau_max = 1e4;
    int samples = 20;
    double tolerance = 1e-6;
    int max_iterations = 200;
    double seed_spread = 0.25;
    long long oracle_budget = 10000000;
};

struct SimBlock {
    int buffer = 100;
    long warmup_slots = 10000;
    long measure_slots = 50000;
    bool find_capacity = false;
    int capacity_iterations = 12;
    std::string trace_path;
};

struct SweepBlock {
    std::string parameter;
    std::vector<double> values;
    std::string measure = "capacity_ratio";
    std::string analogue = "none";
};

struct OutputBlock {
    std::string dir = ".";
    std::string format = "json";
};

struct ExperimentConfig {
    std::uint64_t seed = 0;
    TopologyConfig topology;
    CatalogConfig catalog;
    PhyBlock phy;
    RequestBlock request;
    std::string strategy = "eccds";
    SolverBlock solver;
    SimBlock sim;
    std::optional<SweepBlock> sweep;
    std::optional<nlohmann::json> plans;  // object, or string path
    OutputBlock output;
};

// Parse + validate. Errors are std::runtime_error whose message starts with
// the JSON path of the offending key, e.g. `$.catalog.zipf_beta`.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// The config with every default made explicit; parses back to itself.
nlohmann::json resolved_config_json(const ExperimentConfig& cfg);

}  // namespace ebcache
