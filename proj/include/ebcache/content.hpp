// content.hpp — content catalog, cache/delivery plans, feasibility checks.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ebcache {

// Catalog of unit-size contents with Zipf request popularity.
struct Catalog {
    int content_count = 0;
    double zipf_beta = 0.0;
    int cache_size = 1;                 // per-node slots S
    std::vector<double> popularity;     // q_s, normalized, non-increasing
};

// q_s = s^-beta / sum_t t^-beta (1-based ranks).
std::vector<double> zipf_popularity(int content_count, double beta);

Catalog make_catalog(int content_count, double beta, int cache_size);

// If C > nodes*S, keep the nodes*S most popular contents and renormalize.
Catalog select_catalog_subset(const Catalog& catalog, int node_count);

// x_{i,s}: node i caches content s.
struct CachePlan {
    int node_count = 0;
    int content_count = 0;
    std::vector<std::uint8_t> x;  // row-major [i*C + s]

    static CachePlan zeros(int nodes, int contents);
    bool cached(int i, int s) const { return x[static_cast<std::size_t>(i) * content_count + s] != 0; }
    void set(int i, int s, bool value) {
        x[static_cast<std::size_t>(i) * content_count + s] = value ? 1 : 0;
    }
    int slots_used(int i) const;
};

// y_{i,s,j}: requester j fetches content s from provider i.
struct DeliveryPlan {
    int node_count = 0;
    int content_count = 0;
    std::vector<std::uint8_t> y;  // [i*C*N + s*N + j]

    static DeliveryPlan zeros(int nodes, int contents);
    bool assigned(int i, int s, int j) const {
        return y[(static_cast<std::size_t>(i) * content_count + s) * node_count + j] != 0;
    }
    void set(int i, int s, int j, bool value) {
        y[(static_cast<std::size_t>(i) * content_count + s) * node_count + j] = value ? 1 : 0;
    }
    // The unique provider of content s for requester j, or -1 if the plan does
    // not assign exactly one.
    int provider_of(int s, int j) const;
};

// Per-node request rates (contents per unit time).
struct RequestProfile {
    std::vector<double> lambda;

    static RequestProfile homogeneous(int nodes, double rate);
    double total() const;
};

struct PlanViolation {
    std::string constraint;  // "binary_x", "binary_y", "cache_budget", "coverage",
                             // "single_provider", "provider_caches"
    int node = -1;
    int content = -1;
    int requester = -1;
    std::string message;
};

// Exhaustive feasibility check of a plan pair against the catalog. Empty
// result means the plans are feasible. Dimension mismatches throw.
std::vector<PlanViolation> validate_plans(const CachePlan& cache, const DeliveryPlan& delivery,
                                          const Catalog& catalog);

}  // namespace ebcache
