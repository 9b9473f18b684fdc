#include "ebcache/metrics.hpp"

#include <limits>
#include <stdexcept>

namespace ebcache {

namespace {

double checked_total_demand(const RequestProfile& profile) {
    const double total = profile.total();
    if (!(total > 0.0))
        throw std::invalid_argument("metrics: total request rate must be positive");
    return total;
}

}  // namespace

double content_path_ratio(const PathStats& stats, const DeliveryPlan& delivery,
                          const RequestProfile& profile, int i, int s) {
    const double total = checked_total_demand(profile);
    const int n = stats.node_count;
    double loaded = 0.0;
    for (int k = 0; k < n; ++k) {
        const double lambda_k = profile.lambda[k];
        if (lambda_k == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            if (!delivery.assigned(j, s, k)) continue;
            loaded += lambda_k * stats.passthrough_ratio(j, k, i);
        }
    }
    return loaded / total;
}

std::vector<double> efficient_betweenness(const PathStats& stats, const DeliveryPlan& delivery,
                                          const RequestProfile& profile, const Catalog& catalog) {
    const int n = stats.node_count;
    std::vector<double> eb(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int s = 0; s < catalog.content_count; ++s) {
            acc += catalog.popularity[s] * content_path_ratio(stats, delivery, profile, i, s);
        }
        eb[i] = acc;
    }
    return eb;
}

double average_path_length(const PathStats& stats, const DeliveryPlan& delivery,
                           const RequestProfile& profile, const Catalog& catalog) {
    const double total = checked_total_demand(profile);
    const int n = stats.node_count;
    double weighted_hops = 0.0;
    for (int k = 0; k < n; ++k) {
        const double lambda_k = profile.lambda[k];
        if (lambda_k == 0.0) continue;
        for (int s = 0; s < catalog.content_count; ++s) {
            for (int j = 0; j < n; ++j) {
                if (!delivery.assigned(j, s, k)) continue;
                weighted_hops += lambda_k * catalog.popularity[s] * stats.hops(j, k);
            }
        }
    }
    return weighted_hops / total;
}

double inflow_rate(const std::vector<double>& eb, const RequestProfile& profile, int i) {
    return eb[i] * profile.total();
}

double capacity_upper_bound(const std::vector<double>& eb, const std::vector<double>& sdp,
                            double rate) {
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eb.size(); ++i) {
        if (eb[i] <= 0.0) continue;
        bound = std::min(bound, rate * sdp[i] / eb[i]);
    }
    return bound;
}

MetricsReport compute_metrics(const PathStats& stats, const DeliveryPlan& delivery,
                              const RequestProfile& profile, const Catalog& catalog,
                              const std::vector<double>& sdp, double rate) {
    const int n = stats.node_count;
    const int c = catalog.content_count;
    MetricsReport report;
    report.classical_b = classical_betweenness(stats);
    report.phi.assign(static_cast<std::size_t>(n) * c, 0.0);
    report.eb.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int s = 0; s < c; ++s) {
            const double phi = content_path_ratio(stats, delivery, profile, i, s);
            report.phi[static_cast<std::size_t>(i) * c + s] = phi;
            acc += catalog.popularity[s] * phi;
        }
        report.eb[i] = acc;
    }
    report.avg_path_length = average_path_length(stats, delivery, profile, catalog);
    report.inflow.resize(n);
    for (int i = 0; i < n; ++i) report.inflow[i] = inflow_rate(report.eb, profile, i);
    report.capacity_bound = capacity_upper_bound(report.eb, sdp, rate);
    return report;
}

}  // namespace ebcache
