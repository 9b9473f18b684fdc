// report.hpp — serialization of reports and plans, deterministic to the byte.
//
// Every floating-point value is rounded through a 9-significant-digit decimal
// representation before it reaches a report, so repeated runs and JSON
// round-trips reproduce identical bytes.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ebcache/content.hpp"
#include "ebcache/metrics.hpp"
#include "ebcache/optimizer.hpp"
#include "ebcache/phy.hpp"
#include "ebcache/simulator.hpp"

namespace ebcache {

inline constexpr const char* kVersion = "0.1.0";

// %.9g formatting and the double it parses back to.
std::string fmt9(double v);
double fmt9_value(double v);

// JSON value for a double: rounded number when finite, else the string
// "inf"/"-inf"/"nan" (JSON has no literal for these).
nlohmann::json json_number(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

// Canonical dump (sorted keys, two-space indent, trailing newline).
std::string json_text(const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// meta block: config hash, master seed, version, optional sweep analogue tag.
nlohmann::json make_meta(const nlohmann::json& resolved_config, std::uint64_t seed,
                         const std::string& analogue = "");

// Plans: x as a row-major 0/1 matrix, y as sorted (provider, content,
// requester) triples.
nlohmann::json plans_to_json(const CachePlan& cache, const DeliveryPlan& delivery);
void plans_from_json(const nlohmann::json& j, CachePlan& cache, DeliveryPlan& delivery);

nlohmann::json metrics_to_json(const MetricsReport& report, const std::vector<double>& sdp);
// One row per node: i, b, b_eff, inflow, p.
std::string metrics_to_csv(const MetricsReport& report, const std::vector<double>& sdp);

nlohmann::json phy_to_json(const PhyProfile& profile);
std::string phy_nodes_csv(const PhyProfile& profile);
std::string phy_links_csv(const PhyProfile& profile);

nlohmann::json solve_to_json(const SolveResult& result);

nlohmann::json sim_to_json(const SimReport& report);
std::string sim_nodes_csv(const SimReport& report);
std::string sim_summary_csv(const SimReport& report);

// A sweep result: one row per grid point, fixed column order.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
std::string sweep_to_csv(const SweepTable& table);
nlohmann::json sweep_to_json(const SweepTable& table);

}  // namespace ebcache
