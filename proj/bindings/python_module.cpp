// Python bindings: thin functional wrappers over the core operations, using
// plain lists/dicts so the module needs no custom classes.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "ebcache/content.hpp"
#include "ebcache/fixtures.hpp"
#include "ebcache/metrics.hpp"
#include "ebcache/optimizer.hpp"
#include "ebcache/phy.hpp"
#include "ebcache/rng.hpp"
#include "ebcache/simulator.hpp"
#include "ebcache/topology.hpp"

namespace py = pybind11;
using namespace ebcache;

namespace {

AdjacencyGraph make_graph(int nodes, const std::vector<std::pair<int, int>>& edges) {
    return graph_from_edges(nodes, edges);
}

Catalog catalog_from_popularity(const std::vector<double>& popularity, int cache_size) {
    Catalog catalog;
    catalog.content_count = static_cast<int>(popularity.size());
    catalog.cache_size = cache_size;
    catalog.popularity = popularity;
    double total = 0.0;
    for (double q : popularity) {
        if (q < 0.0) throw std::invalid_argument("popularity entries must be >= 0");
        total += q;
    }
    if (!(total > 0.0)) throw std::invalid_argument("popularity must not sum to zero");
    for (double& q : catalog.popularity) q /= total;
    return catalog;
}

DeliveryPlan delivery_from_triples(int nodes, int contents,
                                   const std::vector<std::tuple<int, int, int>>& triples) {
    DeliveryPlan plan = DeliveryPlan::zeros(nodes, contents);
    for (const auto& [i, s, j] : triples) {
        if (i < 0 || i >= nodes || s < 0 || s >= contents || j < 0 || j >= nodes) {
            throw std::invalid_argument("delivery triple out of range");
        }
        plan.set(i, s, j, true);
    }
    return plan;
}

py::dict plans_dict(const CachePlan& cache, const DeliveryPlan& delivery) {
    std::vector<std::vector<int>> x(static_cast<std::size_t>(cache.node_count));
    for (int i = 0; i < cache.node_count; ++i) {
        x[i].resize(static_cast<std::size_t>(cache.content_count));
        for (int s = 0; s < cache.content_count; ++s) x[i][s] = cache.cached(i, s) ? 1 : 0;
    }
    std::vector<std::tuple<int, int, int>> y;
    for (int i = 0; i < delivery.node_count; ++i) {
        for (int s = 0; s < delivery.content_count; ++s) {
            for (int j = 0; j < delivery.node_count; ++j) {
                if (delivery.assigned(i, s, j)) y.emplace_back(i, s, j);
            }
        }
    }
    py::dict out;
    out["x"] = x;
    out["y"] = y;
    return out;
}

py::dict py_generate_topology(int nodes, double region_side, std::uint64_t seed) {
    auto [layout, graph] = generate_connected_topology(nodes, region_side, seed);
    std::vector<std::pair<double, double>> positions;
    positions.reserve(layout.positions.size());
    for (const Point& p : layout.positions) positions.emplace_back(p.x, p.y);
    py::dict out;
    out["positions"] = positions;
    out["edges"] = graph.edges;
    return out;
}

std::vector<double> py_classical_betweenness(int nodes,
                                             const std::vector<std::pair<int, int>>& edges) {
    return classical_betweenness(path_stats(make_graph(nodes, edges)));
}

std::vector<double> py_efficient_betweenness(int nodes,
                                             const std::vector<std::pair<int, int>>& edges,
                                             const std::vector<std::tuple<int, int, int>>& y,
                                             const std::vector<double>& lambda,
                                             const std::vector<double>& popularity) {
    AdjacencyGraph graph = make_graph(nodes, edges);
    Catalog catalog = catalog_from_popularity(popularity, 1);
    DeliveryPlan plan = delivery_from_triples(nodes, catalog.content_count, y);
    RequestProfile profile;
    profile.lambda = lambda;
    return efficient_betweenness(path_stats(graph), plan, profile, catalog);
}

py::dict py_node_sdp(const std::vector<std::pair<double, double>>& positions,
                     const std::vector<std::pair<int, int>>& edges, double tx_power_dbm,
                     double pathloss_exponent, double noise_dbm, double sinr_threshold_db,
                     int subcarriers, double rate, int trials, std::uint64_t seed) {
    NodeLayout layout;
    layout.region_side = 0.0;
    for (const auto& [x, y] : positions) layout.positions.push_back({x, y});
    AdjacencyGraph graph = make_graph(static_cast<int>(positions.size()), edges);
    PhyConfig cfg;
    cfg.tx_power_dbm = tx_power_dbm;
    cfg.pathloss_exponent = pathloss_exponent;
    cfg.noise_dbm = noise_dbm;
    cfg.sinr_threshold_db = sinr_threshold_db;
    cfg.subcarriers = subcarriers;
    cfg.rate = rate;
    cfg.trials = trials;
    cfg.seed = seed;
    PhyProfile profile = node_sdp(layout, graph, cfg);
    py::dict out;
    out["p"] = profile.p;
    out["links"] = profile.links;
    out["link_p"] = profile.link_p;
    return out;
}

py::dict py_solve(int nodes, const std::vector<std::pair<int, int>>& edges,
                  const std::vector<double>& popularity, int cache_size,
                  const std::vector<double>& lambda, const std::vector<double>& p, double rate,
                  const std::string& strategy, std::uint64_t seed, int samples) {
    AdjacencyGraph graph = make_graph(nodes, edges);
    PathStats stats = path_stats(graph);
    Catalog catalog = catalog_from_popularity(popularity, cache_size);
    RequestProfile profile;
    profile.lambda = lambda;
    PhyProfile phy = fixed_profile(nodes, p, rate);

    SolveResult result;
    if (strategy == "ucs") {
        Rng rng(derive_seed(seed, "solver"));
        result = baseline_ucs(stats, catalog, profile, phy.p, rng);
    } else if (strategy == "brr_cvr") {
        result = baseline_brr_cvr(stats, catalog, profile, phy.p, classical_betweenness(stats));
    } else if (strategy == "oracle") {
        result = exhaustive_oracle(assemble_p1(stats, catalog, profile, phy));
    } else if (strategy == "eccds") {
        CcpConfig cfg;
        cfg.samples = samples;
        Rng rng(derive_seed(seed, "solver"));
        result = eccds_solve(assemble_p1(stats, catalog, profile, phy), cfg, rng);
    } else {
        throw std::invalid_argument("strategy must be eccds, ucs, brr_cvr or oracle");
    }
    py::dict out = plans_dict(result.cache, result.delivery);
    out["objective"] = result.objective;
    out["feasible"] = result.feasible;
    out["strategy"] = result.strategy;
    out["w_lower"] = result.trace.relaxation_bound;
    out["lp_solves"] = result.trace.lp_solves;
    return out;
}

py::dict py_simulate(int nodes, const std::vector<std::pair<int, int>>& edges,
                     const std::vector<std::tuple<int, int, int>>& y,
                     const std::vector<double>& popularity, const std::vector<double>& lambda,
                     const std::vector<double>& p, double rate, int buffer, long warmup_slots,
                     long measure_slots, std::uint64_t seed) {
    AdjacencyGraph graph = make_graph(nodes, edges);
    PathStats stats = path_stats(graph);
    Catalog catalog = catalog_from_popularity(popularity, 1);
    DeliveryPlan plan = delivery_from_triples(nodes, catalog.content_count, y);
    PhyProfile phy = fixed_profile(nodes, p, rate);
    SimConfig cfg;
    cfg.lambda = lambda;
    cfg.buffer = buffer;
    cfg.warmup_slots = warmup_slots;
    cfg.measure_slots = measure_slots;
    cfg.seed = seed;
    SimReport report = run_slotted_sim(stats, graph, plan, catalog, phy, cfg);
    py::dict out;
    out["requests"] = report.requests;
    out["delivered"] = report.delivered;
    out["dropped"] = report.dropped;
    out["forwarded"] = report.forwarded;
    out["enqueued"] = report.enqueued;
    out["delivered_to"] = report.delivered_to;
    out["mean_queue"] = report.mean_queue;
    out["max_queue"] = report.max_queue;
    out["stable"] = report.stable;
    return out;
}

py::dict py_fixture(double q1) {
    ExampleFixture fx = five_node_example(q1);
    PhyProfile phy = fixed_profile(5, 1.0, 1.0);
    MetricsReport metrics =
        compute_metrics(fx.stats, fx.delivery, fx.profile, fx.catalog, phy.p, phy.rate);
    py::dict out;
    out["eb"] = metrics.eb;
    out["classical_b"] = metrics.classical_b;
    out["avg_path_length"] = metrics.avg_path_length;
    out["capacity_bound"] = metrics.capacity_bound;
    out["edges"] = fx.graph.edges;
    out["lambda"] = fx.profile.lambda;
    return out;
}

}  // namespace

PYBIND11_MODULE(_ebcache, m) {
    m.doc() = "cache-enabled wireless network toolkit: efficient betweenness, "
              "max-min cache planning, and slotted relay simulation";
    m.def("generate_topology", &py_generate_topology, py::arg("nodes"), py::arg("region_side"),
          py::arg("seed"));
    m.def("classical_betweenness", &py_classical_betweenness, py::arg("nodes"), py::arg("edges"));
    m.def("efficient_betweenness", &py_efficient_betweenness, py::arg("nodes"), py::arg("edges"),
          py::arg("y"), py::arg("lambda_"), py::arg("popularity"));
    m.def("zipf_popularity", &zipf_popularity, py::arg("contents"), py::arg("beta"));
    m.def("capacity_bound", &capacity_upper_bound, py::arg("eb"), py::arg("p"), py::arg("rate"));
    m.def("node_sdp", &py_node_sdp, py::arg("positions"), py::arg("edges"),
          py::arg("tx_power_dbm") = 20.0, py::arg("pathloss_exponent") = 4.0,
          py::arg("noise_dbm") = -120.0, py::arg("sinr_threshold_db") = 3.0,
          py::arg("subcarriers") = 10, py::arg("rate") = 2.0, py::arg("trials") = 100000,
          py::arg("seed") = 0);
    m.def("solve", &py_solve, py::arg("nodes"), py::arg("edges"), py::arg("popularity"),
          py::arg("cache_size"), py::arg("lambda_"), py::arg("p"), py::arg("rate") = 2.0,
          py::arg("strategy") = "eccds", py::arg("seed") = 0, py::arg("samples") = 8);
    m.def("simulate", &py_simulate, py::arg("nodes"), py::arg("edges"), py::arg("y"),
          py::arg("popularity"), py::arg("lambda_"), py::arg("p"), py::arg("rate") = 2.0,
          py::arg("buffer") = 100, py::arg("warmup_slots") = 1000,
          py::arg("measure_slots") = 10000, py::arg("seed") = 0);
    m.def("five_node_example", &py_fixture, py::arg("q1") = 0.5);
}
