#include "ebcache/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ebcache/config.hpp"
#include "ebcache/fixtures.hpp"
#include "ebcache/metrics.hpp"
#include "ebcache/optimizer.hpp"
#include "ebcache/phy.hpp"
#include "ebcache/report.hpp"
#include "ebcache/rng.hpp"
#include "ebcache/simulator.hpp"
#include "ebcache/topology.hpp"

namespace fs = std::filesystem;

namespace ebcache {
namespace {

struct Log {
    int level = 1;
    void info(const std::string& msg) const {
        if (level >= 1) std::cerr << "[ebcache] " << msg << "\n";
    }
    void debug(const std::string& msg) const {
        if (level >= 2) std::cerr << "[ebcache] " << msg << "\n";
    }
};

struct Experiment {
    AdjacencyGraph graph;
    std::optional<NodeLayout> layout;
    PathStats stats;
    Catalog catalog;
    RequestProfile profile;
    PhyProfile phy;
};

Experiment materialize(const ExperimentConfig& cfg, std::uint64_t seed, const Log& log) {
    Experiment ex;
    if (cfg.topology.type == "generated") {
        auto [layout, graph] =
            generate_connected_topology(cfg.topology.nodes, cfg.topology.region_side,
                                        derive_seed(seed, "topology"));
        ex.layout = std::move(layout);
        ex.graph = std::move(graph);
        log.debug("generated topology: " + std::to_string(ex.graph.node_count) + " nodes, " +
                  std::to_string(ex.graph.edges.size()) + " edges");
    } else if (cfg.topology.type == "edge_list") {
        ex.graph = load_edge_list(cfg.topology.path);
    } else {
        ex.graph = graph_from_edges(cfg.topology.nodes, cfg.topology.edges);
    }
    ex.stats = path_stats(ex.graph);
    const int n = ex.graph.node_count;

    Catalog catalog = make_catalog(cfg.catalog.contents, cfg.catalog.zipf_beta,
                                   cfg.catalog.cache_size);
    if (catalog.content_count > n * catalog.cache_size) {
        catalog = select_catalog_subset(catalog, n);
        log.info("catalog trimmed to " + std::to_string(catalog.content_count) +
                 " contents to fit the total cache slots");
    }
    ex.catalog = std::move(catalog);

    if (cfg.request.scalar) {
        ex.profile = RequestProfile::homogeneous(n, cfg.request.value);
    } else {
        if (static_cast<int>(cfg.request.lambda.size()) != n) {
            throw std::runtime_error("$.request.lambda: expected " + std::to_string(n) +
                                     " entries, got " + std::to_string(cfg.request.lambda.size()));
        }
        ex.profile.lambda = cfg.request.lambda;
    }

    if (cfg.phy.model == "sinr") {
        if (!ex.layout) {
            throw std::runtime_error(
                "$.phy.model: \"sinr\" needs node positions; use a generated topology or model "
                "\"fixed\"");
        }
        PhyConfig pc;
        pc.tx_power_dbm = cfg.phy.tx_power_dbm;
        pc.pathloss_exponent = cfg.phy.pathloss_exponent;
        pc.noise_dbm = cfg.phy.noise_dbm;
        pc.sinr_threshold_db = cfg.phy.sinr_threshold_db;
        pc.subcarriers = cfg.phy.subcarriers;
        pc.rate = cfg.phy.rate;
        pc.trials = cfg.phy.trials;
        pc.seed = derive_seed(seed, "phy");
        ex.phy = node_sdp(*ex.layout, ex.graph, pc);
        log.debug("estimated SDP for " + std::to_string(ex.phy.links.size()) + " directed links");
    } else if (cfg.phy.fixed_scalar) {
        ex.phy = fixed_profile(n, cfg.phy.fixed_value, cfg.phy.rate);
    } else {
        if (static_cast<int>(cfg.phy.fixed_p.size()) != n) {
            throw std::runtime_error("$.phy.p: expected " + std::to_string(n) + " entries, got " +
                                     std::to_string(cfg.phy.fixed_p.size()));
        }
        ex.phy = fixed_profile(n, cfg.phy.fixed_p, cfg.phy.rate);
    }
    return ex;
}

CcpConfig to_ccp(const SolverBlock& s) {
    CcpConfig cfg;
    cfg.tau0 = s.tau0;
    cfg.growth = s.growth;
    cfg.tau_max = s.tau_max;
    cfg.samples = s.samples;
    cfg.tolerance = s.tolerance;
    cfg.max_iterations = s.max_iterations;
    cfg.seed_spread = s.seed_spread;
    cfg.oracle_budget = s.oracle_budget;
    return cfg;
}

SolveResult run_strategy(const Experiment& ex, const std::string& strategy,
                         const SolverBlock& solver, std::uint64_t seed) {
    if (strategy == "brr_cvr") {
        return baseline_brr_cvr(ex.stats, ex.catalog, ex.profile, ex.phy.p,
                                classical_betweenness(ex.stats));
    }
    Rng rng(derive_seed(seed, "solver"));
    if (strategy == "ucs" || strategy == "no_match") {
        SolveResult r = baseline_ucs(ex.stats, ex.catalog, ex.profile, ex.phy.p, rng);
        r.strategy = strategy;
        return r;
    }
    IlpInstance inst = assemble_p1(ex.stats, ex.catalog, ex.profile, ex.phy);
    if (strategy == "oracle") return exhaustive_oracle(inst, solver.oracle_budget);
    return eccds_solve(inst, to_ccp(solver), rng);
}

// Plans from the config when present (inline object or file path), otherwise
// computed with the configured strategy.
std::pair<CachePlan, DeliveryPlan> obtain_plans(const ExperimentConfig& cfg, const Experiment& ex,
                                                std::uint64_t seed, const Log& log) {
    CachePlan cache;
    DeliveryPlan delivery;
    if (cfg.plans) {
        nlohmann::json plans_json;
        if (cfg.plans->is_string()) {
            std::string path = cfg.plans->get<std::string>();
            plans_json = nlohmann::json::parse(read_text_file(path));
        } else {
            plans_json = *cfg.plans;
        }
        plans_from_json(plans_json, cache, delivery);
        if (cache.node_count != ex.graph.node_count ||
            cache.content_count != ex.catalog.content_count) {
            throw std::runtime_error(
                "$.plans: dimensions do not match the topology/catalog (" +
                std::to_string(cache.node_count) + "x" + std::to_string(cache.content_count) +
                " vs " + std::to_string(ex.graph.node_count) + "x" +
                std::to_string(ex.catalog.content_count) + ")");
        }
    } else {
        log.info("no plans in config; computing them with strategy \"" + cfg.strategy + "\"");
        SolveResult r = run_strategy(ex, cfg.strategy, cfg.solver, seed);
        if (!r.feasible) throw std::runtime_error("strategy \"" + cfg.strategy + "\" produced no feasible plan");
        cache = std::move(r.cache);
        delivery = std::move(r.delivery);
    }
    std::vector<PlanViolation> violations = validate_plans(cache, delivery, ex.catalog);
    if (!violations.empty()) {
        throw std::runtime_error("plans are infeasible: " + violations.front().constraint + ": " +
                                 violations.front().message);
    }
    return {std::move(cache), std::move(delivery)};
}

struct OutputContext {
    fs::path dir;
    std::string format;
    nlohmann::json resolved;
    std::uint64_t seed = 0;
    std::string analogue;
};

OutputContext prepare_output(const ExperimentConfig& cfg) {
    OutputContext ctx;
    ctx.dir = cfg.output.dir;
    ctx.format = cfg.output.format;
    ctx.resolved = resolved_config_json(cfg);
    ctx.seed = cfg.seed;
    if (cfg.sweep) ctx.analogue = cfg.sweep->analogue;
    fs::create_directories(ctx.dir);
    write_text_file((ctx.dir / "resolved_config.json").string(), json_text(ctx.resolved));
    write_text_file((ctx.dir / "meta.json").string(),
                    json_text(make_meta(ctx.resolved, ctx.seed, ctx.analogue)));
    return ctx;
}

nlohmann::json meta_of(const OutputContext& ctx) {
    return make_meta(ctx.resolved, ctx.seed, ctx.analogue);
}

// The fraction min_i p_i / b_i^E over relaying nodes, +inf when nobody relays.
double min_sdp_eb(const std::vector<double>& eb, const std::vector<double>& sdp) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eb.size(); ++i) {
        if (eb[i] > 0.0) best = std::min(best, sdp[i] / eb[i]);
    }
    return best;
}

int cmd_analyze(const ExperimentConfig& cfg, const Log& log) {
    Experiment ex = materialize(cfg, cfg.seed, log);
    auto [cache, delivery] = obtain_plans(cfg, ex, cfg.seed, log);
    MetricsReport metrics =
        compute_metrics(ex.stats, delivery, ex.profile, ex.catalog, ex.phy.p, ex.phy.rate);

    OutputContext ctx = prepare_output(cfg);
    write_text_file((ctx.dir / "plans_used.json").string(),
                    json_text(plans_to_json(cache, delivery)));
    if (ctx.format == "json") {
        nlohmann::json j;
        j["meta"] = meta_of(ctx);
        j["metrics"] = metrics_to_json(metrics, ex.phy.p);
        j["phy"] = phy_to_json(ex.phy);
        write_text_file((ctx.dir / "metrics.json").string(), json_text(j));
    } else {
        write_text_file((ctx.dir / "metrics.csv").string(), metrics_to_csv(metrics, ex.phy.p));
        std::ostringstream summary;
        summary << "key,value\n";
        summary << "avg_path_length," << fmt9(metrics.avg_path_length) << '\n';
        summary << "capacity_bound," << fmt9(metrics.capacity_bound) << '\n';
        write_text_file((ctx.dir / "metrics_summary.csv").string(), summary.str());
        write_text_file((ctx.dir / "phy_nodes.csv").string(), phy_nodes_csv(ex.phy));
        write_text_file((ctx.dir / "phy_links.csv").string(), phy_links_csv(ex.phy));
    }
    std::cout << "nodes: " << ex.graph.node_count << ", contents: " << ex.catalog.content_count
              << "\n";
    std::cout << "avg_path_length: " << fmt9(metrics.avg_path_length) << "\n";
    std::cout << "capacity_bound: " << fmt9(metrics.capacity_bound) << "\n";
    log.info("wrote metrics report to " + ctx.dir.string());
    return 0;
}

int cmd_optimize(const ExperimentConfig& cfg, const Log& log) {
    Experiment ex = materialize(cfg, cfg.seed, log);
    SolveResult result = run_strategy(ex, cfg.strategy, cfg.solver, cfg.seed);

    OutputContext ctx = prepare_output(cfg);
    write_text_file((ctx.dir / "plans.json").string(),
                    json_text(plans_to_json(result.cache, result.delivery)));
    nlohmann::json j;
    j["meta"] = meta_of(ctx);
    j["solve"] = solve_to_json(result);
    write_text_file((ctx.dir / "solve.json").string(), json_text(j));
    if (ctx.format == "csv") {
        std::ostringstream summary;
        summary << "key,value\n";
        summary << "strategy," << result.strategy << '\n';
        summary << "feasible," << (result.feasible ? 1 : 0) << '\n';
        summary << "fallback," << (result.fallback ? 1 : 0) << '\n';
        summary << "objective," << fmt9(result.objective) << '\n';
        summary << "lp_solves," << result.trace.lp_solves << '\n';
        summary << "samples_attempted," << result.trace.samples_attempted << '\n';
        summary << "relaxation_bound," << fmt9(result.trace.relaxation_bound) << '\n';
        write_text_file((ctx.dir / "solve_summary.csv").string(), summary.str());
    }
    std::cout << "strategy: " << result.strategy << "\n";
    std::cout << "objective w: " << fmt9(result.objective) << "\n";
    if (result.strategy == "eccds") {
        std::cout << "relaxation bound: " << fmt9(result.trace.relaxation_bound) << "\n";
        std::cout << "lp solves: " << result.trace.lp_solves << "\n";
        if (result.fallback) std::cout << "note: no recovery sample succeeded; baseline selected\n";
    }
    if (!result.feasible) {
        std::cerr << "error: no feasible plan produced\n";
        return 1;
    }
    log.info("wrote solve report to " + ctx.dir.string());
    return 0;
}

int cmd_simulate(const ExperimentConfig& cfg, const Log& log) {
    Experiment ex = materialize(cfg, cfg.seed, log);
    auto [cache, delivery] = obtain_plans(cfg, ex, cfg.seed, log);

    OutputContext ctx = prepare_output(cfg);
    SimConfig sc;
    sc.lambda = ex.profile.lambda;
    sc.buffer = cfg.sim.buffer;
    sc.warmup_slots = cfg.sim.warmup_slots;
    sc.measure_slots = cfg.sim.measure_slots;
    sc.seed = derive_seed(cfg.seed, "sim");
    if (!cfg.sim.trace_path.empty()) {
        fs::path trace = cfg.sim.trace_path;
        if (trace.is_relative()) trace = ctx.dir / trace;
        sc.trace_path = trace.string();
    }
    SimReport report = run_slotted_sim(ex.stats, ex.graph, delivery, ex.catalog, ex.phy, sc);

    nlohmann::json j;
    j["meta"] = meta_of(ctx);
    j["sim"] = sim_to_json(report);

    if (cfg.sim.find_capacity) {
        SimConfig base = sc;
        base.trace_path.clear();
        CapacityResult cap = find_capacity(ex.stats, ex.graph, delivery, ex.catalog, ex.phy, base,
                                           cfg.sim.capacity_iterations);
        MetricsReport metrics =
            compute_metrics(ex.stats, delivery, ex.profile, ex.catalog, ex.phy.p, ex.phy.rate);
        double floor = min_sdp_eb(metrics.eb, ex.phy.p);
        nlohmann::json cj;
        cj["capacity"] = json_number(cap.capacity);
        cj["relay_limited"] = cap.relay_limited;
        cj["evaluations"] = cap.evaluations;
        cj["analytic_bound"] = json_number(metrics.capacity_bound);
        cj["sdp_eb_min"] = json_number(floor);
        cj["ratio"] = json_number(std::isfinite(floor) ? cap.capacity / floor : 0.0);
        j["capacity"] = std::move(cj);
        std::cout << "capacity: " << fmt9(cap.capacity)
                  << (cap.relay_limited ? "" : " (not relay-limited)") << "\n";
    }
    write_text_file((ctx.dir / "sim.json").string(), json_text(j));
    if (ctx.format == "csv") {
        write_text_file((ctx.dir / "sim.csv").string(), sim_nodes_csv(report));
        write_text_file((ctx.dir / "sim_summary.csv").string(), sim_summary_csv(report));
    }
    std::cout << "requests: " << report.requests << ", delivered: " << report.delivered
              << ", dropped: " << report.dropped << "\n";
    std::cout << "stable: " << (report.stable ? "yes" : "no") << "\n";
    log.info("wrote simulation report to " + ctx.dir.string());
    return 0;
}

void apply_sweep_value(ExperimentConfig& cfg, const std::string& parameter, double value) {
    if (parameter == "subcarriers") {
        if (cfg.phy.model != "sinr") {
            throw std::runtime_error("$.sweep.parameter: \"subcarriers\" needs the sinr phy model");
        }
        cfg.phy.subcarriers = static_cast<int>(value);
    } else if (parameter == "cache_size") {
        cfg.catalog.cache_size = static_cast<int>(value);
    } else if (parameter == "zipf_beta") {
        cfg.catalog.zipf_beta = value;
    } else {  // lambda
        cfg.request.scalar = true;
        cfg.request.value = value;
        cfg.request.lambda.clear();
    }
}

std::vector<double> sweep_point(const ExperimentConfig& base, const SweepBlock& sweep,
                                double value) {
    ExperimentConfig cfg = base;
    apply_sweep_value(cfg, sweep.parameter, value);
    Log quiet{0};
    Experiment ex = materialize(cfg, cfg.seed, quiet);

    if (sweep.measure == "objective") {
        SolveResult r = run_strategy(ex, cfg.strategy, cfg.solver, cfg.seed);
        if (!r.feasible) throw std::runtime_error("sweep: no feasible plan at value " + fmt9(value));
        return {value, r.objective};
    }

    auto [cache, delivery] = obtain_plans(cfg, ex, cfg.seed, quiet);
    MetricsReport metrics =
        compute_metrics(ex.stats, delivery, ex.profile, ex.catalog, ex.phy.p, ex.phy.rate);
    SimConfig sc;
    sc.lambda = ex.profile.lambda;
    sc.buffer = cfg.sim.buffer;
    sc.warmup_slots = cfg.sim.warmup_slots;
    sc.measure_slots = cfg.sim.measure_slots;
    sc.seed = derive_seed(cfg.seed, "sim");

    if (sweep.measure == "capacity" || sweep.measure == "capacity_ratio") {
        CapacityResult cap = find_capacity(ex.stats, ex.graph, delivery, ex.catalog, ex.phy, sc,
                                           cfg.sim.capacity_iterations);
        if (sweep.measure == "capacity") {
            return {value, cap.capacity, cap.relay_limited ? 1.0 : 0.0};
        }
        double floor = min_sdp_eb(metrics.eb, ex.phy.p);
        double ratio = std::isfinite(floor) ? cap.capacity / floor : 0.0;
        return {value, cap.capacity, floor, ratio};
    }

    // eb_error: forwarded ratio vs normalized EB at 10% of the capacity bound.
    if (!std::isfinite(metrics.capacity_bound)) {
        throw std::runtime_error("sweep: eb_error needs a plan that relays (capacity bound is infinite)");
    }
    const int n = ex.graph.node_count;
    sc.lambda.assign(static_cast<std::size_t>(n), 0.1 * metrics.capacity_bound / n);
    SimReport report = run_slotted_sim(ex.stats, ex.graph, delivery, ex.catalog, ex.phy, sc);
    std::vector<double> ratios = measure_forwarded_ratios(report);
    double eb_total = 0.0;
    for (double v : metrics.eb) eb_total += v;
    double linf = 0.0;
    for (int i = 0; i < n; ++i) {
        linf = std::max(linf, std::abs(ratios[i] - metrics.eb[i] / eb_total));
    }
    return {value, linf, static_cast<double>(report.delivered)};
}

std::vector<std::string> sweep_columns(const SweepBlock& sweep) {
    if (sweep.measure == "objective") return {sweep.parameter, "objective"};
    if (sweep.measure == "capacity") return {sweep.parameter, "capacity", "relay_limited"};
    if (sweep.measure == "capacity_ratio") {
        return {sweep.parameter, "capacity", "sdp_eb_min", "ratio"};
    }
    return {sweep.parameter, "linf_error", "delivered"};
}

int cmd_sweep(const ExperimentConfig& cfg, const Log& log, int parallel) {
    if (!cfg.sweep) throw std::runtime_error("$.sweep: required for the sweep command");
    const SweepBlock& sweep = *cfg.sweep;

    SweepTable table;
    table.columns = sweep_columns(sweep);
    table.rows.resize(sweep.values.size());
    std::vector<std::exception_ptr> errors(sweep.values.size());

    int workers = std::max(1, std::min<int>(parallel, static_cast<int>(sweep.values.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < sweep.values.size(); ++i) {
            table.rows[i] = sweep_point(cfg, sweep, sweep.values[i]);
            log.debug("sweep point " + fmt9(sweep.values[i]) + " done");
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= sweep.values.size()) return;
                try {
                    table.rows[i] = sweep_point(cfg, sweep, sweep.values[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        for (std::exception_ptr& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    OutputContext ctx = prepare_output(cfg);
    if (ctx.format == "json") {
        nlohmann::json j;
        j["meta"] = meta_of(ctx);
        j["sweep"] = sweep_to_json(table);
        write_text_file((ctx.dir / "sweep.json").string(), json_text(j));
    } else {
        write_text_file((ctx.dir / "sweep.csv").string(), sweep_to_csv(table));
    }
    std::cout << "sweep over " << sweep.parameter << ": " << sweep.values.size() << " points\n";
    log.info("wrote sweep report to " + ctx.dir.string());
    return 0;
}

int cmd_fixture(const ExperimentConfig& cfg, const Log& log) {
    const double q1 = 0.5;
    const double q2 = 1.0 - q1;
    ExampleFixture fx = five_node_example(q1);
    PhyProfile phy = fixed_profile(5, 1.0, 1.0);
    MetricsReport metrics =
        compute_metrics(fx.stats, fx.delivery, fx.profile, fx.catalog, phy.p, phy.rate);

    const std::vector<double> expected = {14.0 / 15.0 * q2, q1 / 15.0 + q2 / 10.0, 0.0, 0.0,
                                          11.0 / 30.0 * q2};
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(metrics.eb[i] - expected[i]));
    double sum = 0.0;
    for (double v : metrics.eb) sum += v;
    double identity_gap = std::abs(sum - metrics.avg_path_length);

    std::cout << "b_eff = (";
    for (int i = 0; i < 5; ++i) std::cout << (i ? ", " : "") << fmt9(metrics.eb[i]) << "";
    std::cout << ")\n";
    std::cout << "expected = (";
    for (int i = 0; i < 5; ++i) std::cout << (i ? ", " : "") << fmt9(expected[i]) << "";
    std::cout << ")\n";
    std::cout << "sum(b_eff) = " << fmt9(sum) << ", avg_path_length = "
              << fmt9(metrics.avg_path_length) << "\n";
    std::cout << "capacity_bound = " << fmt9(metrics.capacity_bound) << "\n";

    OutputContext ctx = prepare_output(cfg);
    nlohmann::json j;
    j["meta"] = meta_of(ctx);
    j["b_eff"] = nlohmann::json::array();
    j["expected"] = nlohmann::json::array();
    for (int i = 0; i < 5; ++i) {
        j["b_eff"].push_back(json_number(fmt9_value(metrics.eb[i])));
        j["expected"].push_back(json_number(fmt9_value(expected[i])));
    }
    j["avg_path_length"] = json_number(metrics.avg_path_length);
    j["capacity_bound"] = json_number(metrics.capacity_bound);
    j["max_abs_error"] = json_number(worst);
    write_text_file((ctx.dir / "fixture.json").string(), json_text(j));
    if (ctx.format == "csv") {
        std::ostringstream out;
        out << "i,b_eff,expected\n";
        for (int i = 0; i < 5; ++i) {
            out << i << ',' << fmt9(metrics.eb[i]) << ',' << fmt9(expected[i]) << '\n';
        }
        write_text_file((ctx.dir / "fixture.csv").string(), out.str());
    }

    if (worst >= 1e-9 || identity_gap >= 1e-9) {
        std::cerr << "error: fixture values deviate (max error " << fmt9(worst) << ")\n";
        return 1;
    }
    log.info("fixture values verified");
    return 0;
}

}  // namespace

int run_command(const CliOptions& opts) {
    Log log{opts.verbosity};
    try {
        ExperimentConfig cfg;
        if (!opts.config_path.empty()) {
            cfg = load_config(opts.config_path);
        } else if (opts.command != "fixture-fig1") {
            throw std::runtime_error("--config is required for this command");
        } else {
            // Self-contained defaults: the fixture needs no experiment config.
            cfg.topology.type = "edges";
            cfg.topology.nodes = 5;
            cfg.topology.edges = {{0, 1}, {0, 4}, {1, 2}, {2, 4}, {3, 4}};
            cfg.catalog.contents = 2;
            cfg.catalog.cache_size = 1;
            cfg.phy.model = "fixed";
            cfg.phy.fixed_scalar = true;
            cfg.phy.fixed_value = 1.0;
            cfg.phy.rate = 1.0;
        }
        if (opts.seed) cfg.seed = *opts.seed;
        if (!opts.out_dir.empty()) cfg.output.dir = opts.out_dir;
        if (!opts.format.empty()) cfg.output.format = opts.format;

        if (opts.command == "analyze") return cmd_analyze(cfg, log);
        if (opts.command == "optimize") return cmd_optimize(cfg, log);
        if (opts.command == "simulate") return cmd_simulate(cfg, log);
        if (opts.command == "sweep") return cmd_sweep(cfg, log, opts.parallel);
        if (opts.command == "fixture-fig1") return cmd_fixture(cfg, log);
        throw std::runtime_error("unknown command: " + opts.command);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ebcache
