#include "ebcache/simulator.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <stdexcept>

#include "ebcache/rng.hpp"

namespace ebcache {
namespace {

class TraceWriter {
public:
    explicit TraceWriter(const std::string& path) {
        if (path.empty()) return;
        out_.open(path);
        if (!out_) throw std::runtime_error("simulator: cannot open trace file: " + path);
        out_ << "slot,node,event,content,queue_len\n";
        active_ = true;
    }
    void row(long slot, int node, const char* event, int content, std::size_t queue_len) {
        if (!active_) return;
        out_ << slot << ',' << node << ',' << event << ',' << content << ',' << queue_len << '\n';
    }
    bool active() const { return active_; }

private:
    std::ofstream out_;
    bool active_ = false;
};

}  // namespace

SimReport run_slotted_sim(const PathStats& stats, const AdjacencyGraph& graph,
                          const DeliveryPlan& plan, const Catalog& catalog, const PhyProfile& phy,
                          const SimConfig& cfg) {
    const int n = stats.node_count;
    if (graph.node_count != n || plan.node_count != n) {
        throw std::invalid_argument("simulator: topology/plan node count mismatch");
    }
    if (static_cast<int>(cfg.lambda.size()) != n) {
        throw std::invalid_argument("simulator: lambda size mismatch");
    }
    if (static_cast<int>(phy.p.size()) != n) {
        throw std::invalid_argument("simulator: phy profile size mismatch");
    }
    if (cfg.buffer < 1) throw std::invalid_argument("simulator: buffer must be >= 1");
    if (cfg.warmup_slots < 0 || cfg.measure_slots < 1) {
        throw std::invalid_argument("simulator: bad slot counts");
    }
    const double rate = phy.rate;
    if (!(rate > 0.0)) throw std::invalid_argument("simulator: service rate must be positive");
    std::vector<double> arrival_p(cfg.lambda.size());
    for (int j = 0; j < n; ++j) {
        arrival_p[j] = cfg.lambda[j] / rate;
        if (arrival_p[j] > 1.0) {
            throw std::invalid_argument(
                "simulator: per-slot request probability exceeds one; lower lambda or raise the rate");
        }
    }

    // Popularity CDF for request sampling.
    std::vector<double> cdf(catalog.popularity.size());
    double acc = 0.0;
    for (std::size_t s = 0; s < cdf.size(); ++s) {
        acc += catalog.popularity[s];
        cdf[s] = acc;
    }
    if (!cdf.empty()) cdf.back() = 1.0;

    Rng rng(derive_seed(cfg.seed, "slotted_sim"));
    TraceWriter trace(cfg.trace_path);

    SimReport report;
    report.forwarded.assign(static_cast<std::size_t>(n), 0);
    report.enqueued.assign(static_cast<std::size_t>(n), 0);
    report.delivered_to.assign(static_cast<std::size_t>(n), 0);
    report.mean_queue.assign(static_cast<std::size_t>(n), 0.0);
    report.max_queue.assign(static_cast<std::size_t>(n), 0);

    struct Tagged {
        std::vector<int> route;  // provider ... requester
        int pos = 0;             // current holder index into route
        int content = 0;
    };
    std::vector<std::deque<Tagged>> queues(static_cast<std::size_t>(n));
    std::vector<char> fire(static_cast<std::size_t>(n), 0);

    const long total_slots = cfg.warmup_slots + cfg.measure_slots;
    for (long slot = 0; slot < total_slots; ++slot) {
        const bool measuring = slot >= cfg.warmup_slots;

        // Transmission decisions from the start-of-slot queue heads.
        for (int i = 0; i < n; ++i) {
            fire[i] = !queues[i].empty() && rng.uniform() < phy.p[i] ? 1 : 0;
        }
        // Apply the successful transmissions.
        for (int i = 0; i < n; ++i) {
            if (!fire[i]) continue;
            Tagged tagged = std::move(queues[i].front());
            queues[i].pop_front();
            if (measuring) ++report.forwarded[i];
            trace.row(slot, i, "forward", tagged.content, queues[i].size());
            int next_pos = tagged.pos + 1;
            int next = tagged.route[next_pos];
            if (next_pos == static_cast<int>(tagged.route.size()) - 1) {
                if (measuring) {
                    ++report.delivered;
                    ++report.delivered_to[next];
                }
                trace.row(slot, next, "deliver", tagged.content, queues[next].size());
            } else if (static_cast<int>(queues[next].size()) < cfg.buffer) {
                tagged.pos = next_pos;
                if (measuring) ++report.enqueued[next];
                int content = tagged.content;
                queues[next].push_back(std::move(tagged));
                trace.row(slot, next, "enqueue", content, queues[next].size());
            } else {
                if (measuring) ++report.dropped;
                trace.row(slot, next, "drop", tagged.content, queues[next].size());
            }
        }

        // New requests.
        for (int j = 0; j < n; ++j) {
            if (arrival_p[j] <= 0.0 || rng.uniform() >= arrival_p[j]) continue;
            double u = rng.uniform();
            int s = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            if (s >= catalog.content_count) s = catalog.content_count - 1;
            int provider = plan.provider_of(s, j);
            if (provider < 0) throw std::invalid_argument("simulator: plan leaves a request unassigned");
            if (measuring) ++report.requests;
            trace.row(slot, j, "request", s, queues[j].size());
            if (provider == j) {
                if (measuring) {
                    ++report.delivered;
                    ++report.delivered_to[j];
                }
                trace.row(slot, j, "deliver", s, queues[j].size());
                continue;
            }
            Tagged tagged;
            tagged.content = s;
            tagged.route = sample_shortest_path(stats, graph, provider, j, rng);
            tagged.pos = 0;
            if (static_cast<int>(queues[provider].size()) < cfg.buffer) {
                if (measuring) ++report.enqueued[provider];
                queues[provider].push_back(std::move(tagged));
                trace.row(slot, provider, "enqueue", s, queues[provider].size());
            } else {
                if (measuring) ++report.dropped;
                trace.row(slot, provider, "drop", s, queues[provider].size());
            }
        }

        if (measuring) {
            for (int i = 0; i < n; ++i) {
                std::size_t len = queues[i].size();
                report.mean_queue[i] += static_cast<double>(len);
                report.max_queue[i] = std::max(report.max_queue[i], static_cast<long>(len));
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        report.mean_queue[i] /= static_cast<double>(cfg.measure_slots);
        report.in_flight_end += static_cast<long>(queues[i].size());
    }
    report.delivered_ratio =
        report.requests > 0 ? static_cast<double>(report.delivered) / report.requests : 1.0;
    report.drop_ratio =
        report.requests > 0 ? static_cast<double>(report.dropped) / report.requests : 0.0;
    report.stable = report.drop_ratio < 0.01 && report.delivered_ratio >= 0.99;
    return report;
}

std::vector<double> measure_forwarded_ratios(const SimReport& report) {
    long total = 0;
    for (long f : report.forwarded) total += f;
    if (total == 0) {
        throw std::runtime_error("measure_forwarded_ratios: the run recorded no forwards");
    }
    std::vector<double> out(report.forwarded.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<double>(report.forwarded[i]) / static_cast<double>(total);
    }
    return out;
}

CapacityResult find_capacity(const PathStats& stats, const AdjacencyGraph& graph,
                             const DeliveryPlan& plan, const Catalog& catalog,
                             const PhyProfile& phy, const SimConfig& base, int iterations) {
    const int n = stats.node_count;
    if (iterations < 1) throw std::invalid_argument("find_capacity: iterations must be >= 1");
    if (static_cast<int>(base.lambda.size()) != n) {
        throw std::invalid_argument("find_capacity: lambda size mismatch");
    }
    double base_total = 0.0, base_max = 0.0;
    for (double v : base.lambda) {
        if (v < 0.0) throw std::invalid_argument("find_capacity: negative request rate");
        base_total += v;
        base_max = std::max(base_max, v);
    }
    if (!(base_total > 0.0)) {
        throw std::invalid_argument("find_capacity: the request profile must not be all zero");
    }
    CapacityResult out;

    auto stable_at = [&](double total_rate) {
        SimConfig cfg = base;
        double scale = total_rate / base_total;
        for (double& v : cfg.lambda) v *= scale;
        cfg.trace_path.clear();
        ++out.evaluations;
        return run_slotted_sim(stats, graph, plan, catalog, phy, cfg).stable;
    };

    // The busiest node's per-slot request probability must stay at or below 1.
    const double ceiling = base_total * phy.rate / base_max;
    if (stable_at(ceiling)) {
        out.capacity = ceiling;
        out.relay_limited = false;
        return out;
    }
    double lo = 0.0, hi = ceiling;
    for (int it = 0; it < iterations; ++it) {
        double mid = 0.5 * (lo + hi);
        if (stable_at(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.capacity = lo;
    out.relay_limited = true;
    return out;
}

}  // namespace ebcache
