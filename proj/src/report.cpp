#include "ebcache/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ebcache {

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double fmt9_value(double v) { return std::strtod(fmt9(v).c_str(), nullptr); }

nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return fmt9_value(v);
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json make_meta(const nlohmann::json& resolved_config, std::uint64_t seed,
                         const std::string& analogue) {
    nlohmann::json meta;
    meta["config_hash"] = hex64(fnv1a64(resolved_config.dump()));
    meta["seed"] = seed;
    meta["version"] = kVersion;
    if (!analogue.empty()) meta["analogue"] = analogue;
    return meta;
}

nlohmann::json plans_to_json(const CachePlan& cache, const DeliveryPlan& delivery) {
    nlohmann::json j;
    j["nodes"] = cache.node_count;
    j["contents"] = cache.content_count;
    nlohmann::json x = nlohmann::json::array();
    for (int i = 0; i < cache.node_count; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int s = 0; s < cache.content_count; ++s) row.push_back(cache.cached(i, s) ? 1 : 0);
        x.push_back(std::move(row));
    }
    j["x"] = std::move(x);
    nlohmann::json y = nlohmann::json::array();
    for (int i = 0; i < delivery.node_count; ++i) {
        for (int s = 0; s < delivery.content_count; ++s) {
            for (int req = 0; req < delivery.node_count; ++req) {
                if (delivery.assigned(i, s, req)) y.push_back({i, s, req});
            }
        }
    }
    j["y"] = std::move(y);
    return j;
}

void plans_from_json(const nlohmann::json& j, CachePlan& cache, DeliveryPlan& delivery) {
    if (!j.is_object() || !j.contains("nodes") || !j.contains("contents") || !j.contains("x") ||
        !j.contains("y")) {
        throw std::runtime_error("plans: expected an object with nodes, contents, x, y");
    }
    const int n = j.at("nodes").get<int>();
    const int c = j.at("contents").get<int>();
    if (n < 1 || c < 1) throw std::runtime_error("plans: nodes and contents must be positive");
    const nlohmann::json& x = j.at("x");
    if (!x.is_array() || static_cast<int>(x.size()) != n) {
        throw std::runtime_error("plans: x must have one row per node");
    }
    cache = CachePlan::zeros(n, c);
    for (int i = 0; i < n; ++i) {
        const nlohmann::json& row = x.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != c) {
            throw std::runtime_error("plans: x rows must have one entry per content");
        }
        for (int s = 0; s < c; ++s) {
            int v = row.at(s).get<int>();
            if (v != 0 && v != 1) throw std::runtime_error("plans: x entries must be 0 or 1");
            cache.set(i, s, v == 1);
        }
    }
    delivery = DeliveryPlan::zeros(n, c);
    for (const nlohmann::json& triple : j.at("y")) {
        if (!triple.is_array() || triple.size() != 3) {
            throw std::runtime_error("plans: y entries must be (provider, content, requester)");
        }
        int i = triple.at(0).get<int>();
        int s = triple.at(1).get<int>();
        int req = triple.at(2).get<int>();
        if (i < 0 || i >= n || s < 0 || s >= c || req < 0 || req >= n) {
            throw std::runtime_error("plans: y triple out of range");
        }
        delivery.set(i, s, req, true);
    }
}

namespace {

nlohmann::json round_array(const std::vector<double>& values) {
    nlohmann::json arr = nlohmann::json::array();
    for (double v : values) arr.push_back(fmt9_value(v));
    return arr;
}

}  // namespace

nlohmann::json metrics_to_json(const MetricsReport& report, const std::vector<double>& sdp) {
    nlohmann::json j;
    j["b"] = round_array(report.classical_b);
    j["b_eff"] = round_array(report.eb);
    j["phi"] = round_array(report.phi);
    j["inflow"] = round_array(report.inflow);
    j["p"] = round_array(sdp);
    j["avg_path_length"] = json_number(report.avg_path_length);
    j["capacity_bound"] = json_number(report.capacity_bound);
    return j;
}

std::string metrics_to_csv(const MetricsReport& report, const std::vector<double>& sdp) {
    std::ostringstream out;
    out << "i,b,b_eff,inflow,p\n";
    for (std::size_t i = 0; i < report.eb.size(); ++i) {
        out << i << ',' << fmt9(report.classical_b[i]) << ',' << fmt9(report.eb[i]) << ','
            << fmt9(report.inflow[i]) << ',' << fmt9(sdp[i]) << '\n';
    }
    return out.str();
}

nlohmann::json phy_to_json(const PhyProfile& profile) {
    nlohmann::json j;
    j["p"] = round_array(profile.p);
    j["rate"] = fmt9_value(profile.rate);
    nlohmann::json links = nlohmann::json::array();
    for (std::size_t l = 0; l < profile.links.size(); ++l) {
        links.push_back({profile.links[l].first, profile.links[l].second,
                         fmt9_value(profile.link_p[l])});
    }
    j["links"] = std::move(links);
    return j;
}

std::string phy_nodes_csv(const PhyProfile& profile) {
    std::ostringstream out;
    out << "i,p\n";
    for (std::size_t i = 0; i < profile.p.size(); ++i) {
        out << i << ',' << fmt9(profile.p[i]) << '\n';
    }
    return out.str();
}

std::string phy_links_csv(const PhyProfile& profile) {
    std::ostringstream out;
    out << "tx,rx,p\n";
    for (std::size_t l = 0; l < profile.links.size(); ++l) {
        out << profile.links[l].first << ',' << profile.links[l].second << ','
            << fmt9(profile.link_p[l]) << '\n';
    }
    return out.str();
}

nlohmann::json solve_to_json(const SolveResult& result) {
    nlohmann::json j;
    j["strategy"] = result.strategy;
    j["feasible"] = result.feasible;
    j["fallback"] = result.fallback;
    j["objective"] = fmt9_value(result.objective);
    j["plans"] = plans_to_json(result.cache, result.delivery);
    nlohmann::json trace;
    trace["lp_solves"] = result.trace.lp_solves;
    trace["samples_attempted"] = result.trace.samples_attempted;
    trace["relaxation_bound"] = fmt9_value(result.trace.relaxation_bound);
    if (!result.trace.selected.empty()) trace["selected"] = result.trace.selected;
    nlohmann::json samples = nlohmann::json::array();
    for (const CcpSampleTrace& sample : result.trace.samples) {
        nlohmann::json s;
        s["recovered"] = sample.recovered;
        s["early_exit_binary"] = sample.early_exit_binary;
        nlohmann::json iters = nlohmann::json::array();
        for (const CcpIterationRecord& rec : sample.iterations) {
            iters.push_back({{"tau", fmt9_value(rec.tau)},
                             {"objective", fmt9_value(rec.penalized_objective)},
                             {"slack_sum", fmt9_value(rec.slack_sum)}});
        }
        s["iterations"] = std::move(iters);
        samples.push_back(std::move(s));
    }
    trace["samples"] = std::move(samples);
    j["trace"] = std::move(trace);
    return j;
}

nlohmann::json sim_to_json(const SimReport& report) {
    nlohmann::json j;
    j["requests"] = report.requests;
    j["delivered"] = report.delivered;
    j["dropped"] = report.dropped;
    j["in_flight_end"] = report.in_flight_end;
    j["delivered_ratio"] = fmt9_value(report.delivered_ratio);
    j["drop_ratio"] = fmt9_value(report.drop_ratio);
    j["stable"] = report.stable;
    j["forwarded"] = report.forwarded;
    j["enqueued"] = report.enqueued;
    j["delivered_to"] = report.delivered_to;
    j["mean_queue"] = round_array(report.mean_queue);
    j["max_queue"] = report.max_queue;
    return j;
}

std::string sim_nodes_csv(const SimReport& report) {
    std::ostringstream out;
    out << "i,forwarded,enqueued,delivered_to,mean_queue,max_queue\n";
    for (std::size_t i = 0; i < report.forwarded.size(); ++i) {
        out << i << ',' << report.forwarded[i] << ',' << report.enqueued[i] << ','
            << report.delivered_to[i] << ',' << fmt9(report.mean_queue[i]) << ','
            << report.max_queue[i] << '\n';
    }
    return out.str();
}

std::string sim_summary_csv(const SimReport& report) {
    std::ostringstream out;
    out << "key,value\n";
    out << "requests," << report.requests << '\n';
    out << "delivered," << report.delivered << '\n';
    out << "dropped," << report.dropped << '\n';
    out << "in_flight_end," << report.in_flight_end << '\n';
    out << "delivered_ratio," << fmt9(report.delivered_ratio) << '\n';
    out << "drop_ratio," << fmt9(report.drop_ratio) << '\n';
    out << "stable," << (report.stable ? 1 : 0) << '\n';
    return out.str();
}

std::string sweep_to_csv(const SweepTable& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const std::vector<double>& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << fmt9(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json sweep_to_json(const SweepTable& table) {
    nlohmann::json j;
    j["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const std::vector<double>& row : table.rows) rows.push_back(round_array(row));
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace ebcache
