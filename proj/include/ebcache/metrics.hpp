// metrics.hpp — efficient betweenness, path-length and capacity analytics.
//
// Pass-through accounting is source-inclusive: a delivery path loads its
// source node and every intermediate, never the destination. Self-serves
// (provider == requester) activate a zero-hop path and load nobody.
#pragma once

#include <vector>

#include "ebcache/content.hpp"
#include "ebcache/topology.hpp"

namespace ebcache {

struct MetricsReport {
    std::vector<double> classical_b;   // per node
    std::vector<double> eb;            // per node, b_i^E
    std::vector<double> phi;           // [i*C + s]
    double avg_path_length = 0.0;      // L
    std::vector<double> inflow;        // per node, contents per unit time
    double capacity_bound = 0.0;       // +inf when no node relays

    double phi_at(int i, int s, int content_count) const {
        return phi[static_cast<std::size_t>(i) * content_count + s];
    }
};

// phi(i,s): demand-weighted fraction of content-s delivery paths that load
// node i. Throws std::invalid_argument when total demand is zero.
double content_path_ratio(const PathStats& stats, const DeliveryPlan& delivery,
                          const RequestProfile& profile, int i, int s);

// b_i^E = sum_s q_s * phi(i,s).
std::vector<double> efficient_betweenness(const PathStats& stats, const DeliveryPlan& delivery,
                                          const RequestProfile& profile, const Catalog& catalog);

// Demand-weighted mean hop count over all delivery paths.
double average_path_length(const PathStats& stats, const DeliveryPlan& delivery,
                           const RequestProfile& profile, const Catalog& catalog);

// Contents entering node i's transmission queue per unit time:
// b_i^E * sum_k lambda_k (zero when nothing relays).
double inflow_rate(const std::vector<double>& eb, const RequestProfile& profile, int i);

// Largest total request rate compatible with every relaying node's service
// rate: N * min over {i: b_i^E > 0} of p_i*R / (N*b_i^E). Nodes with zero EB
// impose no constraint; if none relays the bound is +infinity.
double capacity_upper_bound(const std::vector<double>& eb, const std::vector<double>& sdp,
                            double rate);

MetricsReport compute_metrics(const PathStats& stats, const DeliveryPlan& delivery,
                              const RequestProfile& profile, const Catalog& catalog,
                              const std::vector<double>& sdp, double rate);

}  // namespace ebcache
