// simulator.hpp — slotted relay-queue simulation of a delivery plan.
//
// Time advances in slots of 1/R. Each slot, every node with a non-empty
// transmission queue sends its head packet, succeeding with its SDP; a
// successful packet advances one hop along its sampled minimum-hop route and
// is delivered when the next hop is the requester. New requests then arrive
// (probability lambda_j/R per node), are served from the cache directly when
// the plan assigns the requester itself, and otherwise enqueue at their
// provider. Queues are drop-tail with a fixed buffer.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebcache/content.hpp"
#include "ebcache/phy.hpp"
#include "ebcache/topology.hpp"

namespace ebcache {

struct SimConfig {
    std::vector<double> lambda;       // per-node request rates, contents per unit time
    int buffer = 100;                 // queue capacity per node
    long warmup_slots = 10000;
    long measure_slots = 50000;
    std::uint64_t seed = 0;
    std::string trace_path;           // per-slot event CSV when non-empty
};

struct SimReport {
    long requests = 0;                // generated during the measurement window
    long delivered = 0;
    long dropped = 0;
    long in_flight_end = 0;           // packets still queued when the run ends
    std::vector<long> forwarded;      // successful transmissions per node
    std::vector<long> enqueued;       // queue entries per node
    std::vector<long> delivered_to;   // deliveries per requester
    std::vector<double> mean_queue;   // time-averaged queue length per node
    std::vector<long> max_queue;
    double delivered_ratio = 0.0;
    double drop_ratio = 0.0;
    bool stable = false;              // drops < 1% and deliveries >= 99%
};

SimReport run_slotted_sim(const PathStats& stats, const AdjacencyGraph& graph,
                          const DeliveryPlan& plan, const Catalog& catalog, const PhyProfile& phy,
                          const SimConfig& cfg);

// forwarded_i / sum_j forwarded_j; throws std::runtime_error when the run
// recorded no forwards at all.
std::vector<double> measure_forwarded_ratios(const SimReport& report);

struct CapacityResult {
    double capacity = 0.0;     // largest stable total request rate found
    bool relay_limited = true; // false when stable at the per-node service ceiling
    int evaluations = 0;
};

// Bisects the total request rate, scaling the configured per-node rates
// proportionally (which preserves every node's EB), with one simulation per
// probe under the same seed. The ceiling is where the busiest node's per-slot
// request probability reaches one.
CapacityResult find_capacity(const PathStats& stats, const AdjacencyGraph& graph,
                             const DeliveryPlan& plan, const Catalog& catalog,
                             const PhyProfile& phy, const SimConfig& base, int iterations = 12);

}  // namespace ebcache
