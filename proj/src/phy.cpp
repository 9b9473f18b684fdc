#include "ebcache/phy.hpp"

#include <cmath>
#include <stdexcept>

namespace ebcache {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double PhyProfile::link(int tx, int rx) const {
    for (std::size_t e = 0; e < links.size(); ++e) {
        if (links[e].first == tx && links[e].second == rx) return link_p[e];
    }
    throw std::invalid_argument("PhyProfile::link: not an adjacency link");
}

namespace {

constexpr double kMinSdp = 1e-6;

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void check_config(const PhyConfig& cfg) {
    if (!(cfg.pathloss_exponent > 2.0))
        throw std::invalid_argument("phy: pathloss exponent must be > 2");
    if (cfg.subcarriers < 1) throw std::invalid_argument("phy: subcarriers must be >= 1");
    if (cfg.trials < 1000) throw std::invalid_argument("phy: need at least 1000 trials");
    if (!(cfg.rate > 0.0)) throw std::invalid_argument("phy: rate must be > 0");
}

}  // namespace

double link_sdp(const NodeLayout& layout, const AdjacencyGraph& graph, const PhyConfig& cfg,
                int i, int j) {
    check_config(cfg);
    if (!graph.has_edge(i, j)) throw std::invalid_argument("link_sdp: (i,j) is not an edge");

    const int n = layout.node_count();
    const double power = db_to_linear(cfg.tx_power_dbm);
    const double noise = db_to_linear(cfg.noise_dbm);
    const double threshold = db_to_linear(cfg.sinr_threshold_db);
    const double alpha = cfg.pathloss_exponent;

    // Received powers at j are trial-independent; precompute.
    std::vector<double> rx_power(n, 0.0);
    for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        rx_power[k] = power * std::pow(distance(layout.positions[k], layout.positions[j]), -alpha);
    }

    const CounterRng rng(derive_seed(cfg.seed, "link_sdp", (static_cast<std::uint64_t>(i) << 32) |
                                                               static_cast<std::uint64_t>(j)));
    const unsigned carriers = static_cast<unsigned>(cfg.subcarriers);
    long long successes = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        // One draw per (trial, node): every transmitter, i included, picks a
        // subcarrier independently and uniformly.
        const std::uint64_t base = static_cast<std::uint64_t>(t) * n;
        const unsigned own = static_cast<unsigned>(rng.value(base + i) % carriers);
        double interference = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            if (rng.value(base + k) % carriers == own) interference += rx_power[k];
        }
        if (rx_power[i] >= threshold * (noise + interference)) ++successes;
    }
    return static_cast<double>(successes) / cfg.trials;
}

PhyProfile node_sdp(const NodeLayout& layout, const AdjacencyGraph& graph, const PhyConfig& cfg) {
    check_config(cfg);
    const int n = graph.node_count;
    PhyProfile profile;
    profile.rate = cfg.rate;
    profile.p.assign(n, 0.0);
    for (const auto& [u, v] : graph.edges) {
        profile.links.emplace_back(u, v);
        profile.link_p.push_back(link_sdp(layout, graph, cfg, u, v));
        profile.links.emplace_back(v, u);
        profile.link_p.push_back(link_sdp(layout, graph, cfg, v, u));
    }
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        int degree = 0;
        for (std::size_t e = 0; e < profile.links.size(); ++e) {
            if (profile.links[e].first == i) {
                sum += profile.link_p[e];
                ++degree;
            }
        }
        const double mean = degree ? sum / degree : 1.0;
        profile.p[i] = std::max(kMinSdp, std::min(1.0, mean));
    }
    return profile;
}

PhyProfile fixed_profile(int node_count, const std::vector<double>& p, double rate) {
    if (static_cast<int>(p.size()) != node_count)
        throw std::invalid_argument("fixed_profile: p size does not match node count");
    PhyProfile profile;
    profile.rate = rate;
    profile.p = p;
    for (double& v : profile.p) {
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("fixed_profile: probabilities must lie in [0,1]");
        v = std::max(kMinSdp, v);
    }
    return profile;
}

PhyProfile fixed_profile(int node_count, double p, double rate) {
    return fixed_profile(node_count, std::vector<double>(node_count, p), rate);
}

}  // namespace ebcache
