#include "ebcache/content.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ebcache {

std::vector<double> zipf_popularity(int content_count, double beta) {
    if (content_count < 1) throw std::invalid_argument("zipf_popularity: content count must be >= 1");
    if (beta < 0.0) throw std::invalid_argument("zipf_popularity: beta must be >= 0");
    std::vector<double> q(content_count);
    double norm = 0.0;
    for (int s = 0; s < content_count; ++s) {
        q[s] = std::pow(static_cast<double>(s + 1), -beta);
        norm += q[s];
    }
    for (double& v : q) v /= norm;
    return q;
}

Catalog make_catalog(int content_count, double beta, int cache_size) {
    if (cache_size < 1) throw std::invalid_argument("make_catalog: cache size must be >= 1");
    Catalog c;
    c.content_count = content_count;
    c.zipf_beta = beta;
    c.cache_size = cache_size;
    c.popularity = zipf_popularity(content_count, beta);
    return c;
}

Catalog select_catalog_subset(const Catalog& catalog, int node_count) {
    const long long capacity = static_cast<long long>(node_count) * catalog.cache_size;
    if (catalog.content_count <= capacity) return catalog;
    // Popularity is non-increasing, so the most popular subset is a prefix.
    Catalog trimmed = catalog;
    trimmed.content_count = static_cast<int>(capacity);
    trimmed.popularity.resize(trimmed.content_count);
    const double norm =
        std::accumulate(trimmed.popularity.begin(), trimmed.popularity.end(), 0.0);
    for (double& v : trimmed.popularity) v /= norm;
    return trimmed;
}

CachePlan CachePlan::zeros(int nodes, int contents) {
    CachePlan p;
    p.node_count = nodes;
    p.content_count = contents;
    p.x.assign(static_cast<std::size_t>(nodes) * contents, 0);
    return p;
}

int CachePlan::slots_used(int i) const {
    int used = 0;
    for (int s = 0; s < content_count; ++s)
        if (x[static_cast<std::size_t>(i) * content_count + s]) ++used;
    return used;
}

DeliveryPlan DeliveryPlan::zeros(int nodes, int contents) {
    DeliveryPlan p;
    p.node_count = nodes;
    p.content_count = contents;
    p.y.assign(static_cast<std::size_t>(nodes) * contents * nodes, 0);
    return p;
}

int DeliveryPlan::provider_of(int s, int j) const {
    int provider = -1;
    for (int i = 0; i < node_count; ++i) {
        if (assigned(i, s, j)) {
            if (provider >= 0) return -1;
            provider = i;
        }
    }
    return provider;
}

RequestProfile RequestProfile::homogeneous(int nodes, double rate) {
    RequestProfile p;
    p.lambda.assign(nodes, rate);
    return p;
}

double RequestProfile::total() const {
    return std::accumulate(lambda.begin(), lambda.end(), 0.0);
}

std::vector<PlanViolation> validate_plans(const CachePlan& cache, const DeliveryPlan& delivery,
                                          const Catalog& catalog) {
    if (cache.content_count != catalog.content_count ||
        delivery.content_count != catalog.content_count ||
        cache.node_count != delivery.node_count) {
        throw std::invalid_argument("validate_plans: dimension mismatch between plans and catalog");
    }
    const int n = cache.node_count;
    const int c = cache.content_count;
    std::vector<PlanViolation> out;

    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < c; ++s) {
            const auto v = cache.x[static_cast<std::size_t>(i) * c + s];
            if (v != 0 && v != 1) {
                out.push_back({"binary_x", i, s, -1,
                               "x[" + std::to_string(i) + "][" + std::to_string(s) + "] = " +
                                   std::to_string(int(v)) + " is not binary"});
            }
        }
        const int used = cache.slots_used(i);
        if (used > catalog.cache_size) {
            out.push_back({"cache_budget", i, -1, -1,
                           "node " + std::to_string(i) + " caches " + std::to_string(used) +
                               " contents, budget " + std::to_string(catalog.cache_size)});
        }
    }
    for (int s = 0; s < c; ++s) {
        int copies = 0;
        for (int i = 0; i < n; ++i)
            if (cache.cached(i, s)) ++copies;
        if (copies == 0) {
            out.push_back({"coverage", -1, s, -1,
                           "content " + std::to_string(s) + " is cached nowhere"});
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < c; ++s) {
            for (int j = 0; j < n; ++j) {
                const auto v = delivery.y[(static_cast<std::size_t>(i) * c + s) * n + j];
                if (v != 0 && v != 1) {
                    out.push_back({"binary_y", i, s, j, "y is not binary"});
                }
                if (v && !cache.cached(i, s)) {
                    out.push_back({"provider_caches", i, s, j,
                                   "requester " + std::to_string(j) + " fetches content " +
                                       std::to_string(s) + " from node " + std::to_string(i) +
                                       " which does not cache it"});
                }
            }
        }
    }
    for (int s = 0; s < c; ++s) {
        for (int j = 0; j < n; ++j) {
            int providers = 0;
            for (int i = 0; i < n; ++i)
                if (delivery.assigned(i, s, j)) ++providers;
            if (providers != 1) {
                out.push_back({"single_provider", -1, s, j,
                               "requester " + std::to_string(j) + " has " +
                                   std::to_string(providers) + " providers for content " +
                                   std::to_string(s)});
            }
        }
    }
    return out;
}

}  // namespace ebcache
