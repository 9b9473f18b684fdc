// phy.hpp — successful-delivery-probability estimation from the SINR model.
#pragma once

#include <cstdint>
#include <vector>

#include "ebcache/topology.hpp"

namespace ebcache {

struct PhyConfig {
    double tx_power_dbm = 20.0;
    double pathloss_exponent = 4.0;
    double noise_dbm = -120.0;
    double sinr_threshold_db = 3.0;
    int subcarriers = 10;
    double rate = 2.0;        // contents per unit time
    int trials = 100000;      // Monte-Carlo trials per link
    std::uint64_t seed = 0;
};

struct PhyProfile {
    std::vector<double> p;                       // per-node SDP, clamped to [1e-6, 1]
    std::vector<std::pair<int, int>> links;      // directed (tx, rx), both orders per edge
    std::vector<double> link_p;                  // parallel to links
    double rate = 1.0;

    double link(int tx, int rx) const;
};

double db_to_linear(double db);
double linear_to_db(double linear);

// Monte-Carlo estimate of the probability that a transmission i -> j clears
// the SINR threshold when every other node contends for a random subcarrier.
// (i, j) must be an edge of the graph.
double link_sdp(const NodeLayout& layout, const AdjacencyGraph& graph, const PhyConfig& cfg,
                int i, int j);

// Per-node SDP: unweighted mean of link_sdp over the node's neighbors.
PhyProfile node_sdp(const NodeLayout& layout, const AdjacencyGraph& graph, const PhyConfig& cfg);

// Profile with externally supplied probabilities (no SINR simulation); used
// for imported topologies without positions.
PhyProfile fixed_profile(int node_count, const std::vector<double>& p, double rate);
PhyProfile fixed_profile(int node_count, double p, double rate);

}  // namespace ebcache
