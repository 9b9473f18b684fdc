#include "ebcache/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <stdexcept>

#include "ebcache/report.hpp"

namespace ebcache {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

void check_keys(const nlohmann::json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string& key = it.key();
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (known) continue;
        const char* best = nullptr;
        int best_dist = std::numeric_limits<int>::max();
        for (const char* a : allowed) {
            int d = edit_distance(key, a);
            if (d < best_dist) {
                best_dist = d;
                best = a;
            }
        }
        std::string msg = "unknown key \"" + key + "\"";
        if (best) msg += " (did you mean \"" + std::string(best) + "\"?)";
        fail(path, msg);
    }
}

const nlohmann::json& member(const nlohmann::json& obj, const char* key) {
    return obj.at(key);
}

double get_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double get_finite(const nlohmann::json& j, const std::string& path) {
    double v = get_number(j, path);
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

long long get_integer(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

bool get_bool(const nlohmann::json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

std::string get_string(const nlohmann::json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::string get_choice(const nlohmann::json& j, const std::string& path,
                       std::initializer_list<const char*> allowed) {
    std::string v = get_string(j, path);
    for (const char* a : allowed) {
        if (v == a) return v;
    }
    std::string msg = "\"" + v + "\" is not one of {";
    bool first = true;
    for (const char* a : allowed) {
        if (!first) msg += ", ";
        msg += a;
        first = false;
    }
    msg += "}";
    fail(path, msg);
}

TopologyConfig parse_topology(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    TopologyConfig out;
    out.type = j.contains("type") ? get_choice(member(j, "type"), path + ".type",
                                               {"generated", "edge_list", "edges"})
                                  : "generated";
    if (out.type == "generated") {
        check_keys(j, path, {"type", "nodes", "region_side"});
        if (!j.contains("nodes")) fail(path + ".nodes", "required for generated topologies");
        out.nodes = static_cast<int>(get_integer(member(j, "nodes"), path + ".nodes"));
        if (out.nodes < 2) fail(path + ".nodes", "need at least 2 nodes");
        if (out.nodes > 1000) fail(path + ".nodes", "at most 1000 nodes");
        if (j.contains("region_side")) {
            out.region_side = get_finite(member(j, "region_side"), path + ".region_side");
            if (!(out.region_side > 0.0)) fail(path + ".region_side", "must be positive");
        }
    } else if (out.type == "edge_list") {
        check_keys(j, path, {"type", "path"});
        if (!j.contains("path")) fail(path + ".path", "required for edge_list topologies");
        out.path = get_string(member(j, "path"), path + ".path");
        if (out.path.empty()) fail(path + ".path", "must not be empty");
    } else {
        check_keys(j, path, {"type", "nodes", "edges"});
        if (!j.contains("nodes")) fail(path + ".nodes", "required for inline edges");
        if (!j.contains("edges")) fail(path + ".edges", "required for inline edges");
        out.nodes = static_cast<int>(get_integer(member(j, "nodes"), path + ".nodes"));
        if (out.nodes < 2) fail(path + ".nodes", "need at least 2 nodes");
        const nlohmann::json& edges = member(j, "edges");
        if (!edges.is_array()) fail(path + ".edges", "expected an array of [u, v] pairs");
        for (std::size_t e = 0; e < edges.size(); ++e) {
            std::string epath = path + ".edges[" + std::to_string(e) + "]";
            const nlohmann::json& pair = edges.at(e);
            if (!pair.is_array() || pair.size() != 2) fail(epath, "expected a [u, v] pair");
            int u = static_cast<int>(get_integer(pair.at(0), epath));
            int v = static_cast<int>(get_integer(pair.at(1), epath));
            out.edges.emplace_back(u, v);
        }
    }
    return out;
}

CatalogConfig parse_catalog(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    check_keys(j, path, {"contents", "zipf_beta", "cache_size"});
    if (!j.contains("contents")) fail(path + ".contents", "required");
    CatalogConfig out;
    out.contents = static_cast<int>(get_integer(member(j, "contents"), path + ".contents"));
    if (out.contents < 1) fail(path + ".contents", "must be >= 1");
    if (j.contains("zipf_beta")) {
        out.zipf_beta = get_finite(member(j, "zipf_beta"), path + ".zipf_beta");
        if (out.zipf_beta < 0.0) fail(path + ".zipf_beta", "must be >= 0");
    }
    if (j.contains("cache_size")) {
        out.cache_size = static_cast<int>(get_integer(member(j, "cache_size"), path + ".cache_size"));
        if (out.cache_size < 1) fail(path + ".cache_size", "must be >= 1");
    }
    return out;
}

PhyBlock parse_phy(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    PhyBlock out;
    out.model = j.contains("model")
                    ? get_choice(member(j, "model"), path + ".model", {"sinr", "fixed"})
                    : "sinr";
    if (out.model == "sinr") {
        check_keys(j, path,
                   {"model", "tx_power_dbm", "pathloss_exponent", "noise_dbm",
                    "sinr_threshold_db", "subcarriers", "rate", "trials"});
        if (j.contains("tx_power_dbm")) {
            out.tx_power_dbm = get_finite(member(j, "tx_power_dbm"), path + ".tx_power_dbm");
        }
        if (j.contains("pathloss_exponent")) {
            out.pathloss_exponent =
                get_finite(member(j, "pathloss_exponent"), path + ".pathloss_exponent");
            if (!(out.pathloss_exponent > 2.0)) {
                fail(path + ".pathloss_exponent", "must exceed 2 for a bounded interference field");
            }
        }
        if (j.contains("noise_dbm")) {
            out.noise_dbm = get_finite(member(j, "noise_dbm"), path + ".noise_dbm");
        }
        if (j.contains("sinr_threshold_db")) {
            out.sinr_threshold_db =
                get_finite(member(j, "sinr_threshold_db"), path + ".sinr_threshold_db");
        }
        if (j.contains("subcarriers")) {
            out.subcarriers = static_cast<int>(get_integer(member(j, "subcarriers"), path + ".subcarriers"));
            if (out.subcarriers < 1) fail(path + ".subcarriers", "must be >= 1");
        }
        if (j.contains("trials")) {
            out.trials = static_cast<int>(get_integer(member(j, "trials"), path + ".trials"));
            if (out.trials < 1000) fail(path + ".trials", "must be >= 1000");
        }
    } else {
        check_keys(j, path, {"model", "p", "rate"});
        if (j.contains("p")) {
            const nlohmann::json& p = member(j, "p");
            if (p.is_number()) {
                out.fixed_scalar = true;
                out.fixed_value = get_finite(p, path + ".p");
                if (!(out.fixed_value > 0.0) || out.fixed_value > 1.0) {
                    fail(path + ".p", "must lie in (0, 1]");
                }
            } else if (p.is_array()) {
                out.fixed_scalar = false;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    std::string ipath = path + ".p[" + std::to_string(i) + "]";
                    double v = get_finite(p.at(i), ipath);
                    if (!(v > 0.0) || v > 1.0) fail(ipath, "must lie in (0, 1]");
                    out.fixed_p.push_back(v);
                }
                if (out.fixed_p.empty()) fail(path + ".p", "array must not be empty");
            } else {
                fail(path + ".p", "expected a number or an array of numbers");
            }
        }
    }
    if (j.contains("rate")) {
        out.rate = get_finite(member(j, "rate"), path + ".rate");
        if (!(out.rate > 0.0)) fail(path + ".rate", "must be positive");
    }
    return out;
}

RequestBlock parse_request(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    check_keys(j, path, {"lambda"});
    RequestBlock out;
    if (!j.contains("lambda")) return out;
    const nlohmann::json& lam = member(j, "lambda");
    if (lam.is_number()) {
        out.scalar = true;
        out.value = get_finite(lam, path + ".lambda");
        if (out.value < 0.0) fail(path + ".lambda", "must be >= 0");
    } else if (lam.is_array()) {
        out.scalar = false;
        for (std::size_t i = 0; i < lam.size(); ++i) {
            std::string ipath = path + ".lambda[" + std::to_string(i) + "]";
            double v = get_finite(lam.at(i), ipath);
            if (v < 0.0) fail(ipath, "must be >= 0");
            out.lambda.push_back(v);
        }
        if (out.lambda.empty()) fail(path + ".lambda", "array must not be empty");
    } else {
        fail(path + ".lambda", "expected a number or an array of numbers");
    }
    return out;
}

SolverBlock parse_solver(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    check_keys(j, path,
               {"tau0", "growth", "tau_max", "samples", "tolerance", "max_iterations",
                "seed_spread", "oracle_budget"});
    SolverBlock out;
    if (j.contains("tau0")) {
        out.tau0 = get_finite(member(j, "tau0"), path + ".tau0");
        if (!(out.tau0 > 0.0)) fail(path + ".tau0", "must be positive");
    }
    if (j.contains("growth")) {
        out.growth = get_finite(member(j, "growth"), path + ".growth");
        if (!(out.growth > 1.0)) fail(path + ".growth", "must exceed 1");
    }
    if (j.contains("tau_max")) {
        out.tau_max = get_finite(member(j, "tau_max"), path + ".tau_max");
        if (!(out.tau_max > 0.0)) fail(path + ".tau_max", "must be positive");
    }
    if (out.tau_max < out.tau0) fail(path + ".tau_max", "must be >= tau0");
    if (j.contains("samples")) {
        out.samples = static_cast<int>(get_integer(member(j, "samples"), path + ".samples"));
        if (out.samples < 1) fail(path + ".samples", "must be >= 1");
    }
    if (j.contains("tolerance")) {
        out.tolerance = get_finite(member(j, "tolerance"), path + ".tolerance");
        if (!(out.tolerance > 0.0)) fail(path + ".tolerance", "must be positive");
    }
    if (j.contains("max_iterations")) {
        out.max_iterations =
            static_cast<int>(get_integer(member(j, "max_iterations"), path + ".max_iterations"));
        if (out.max_iterations < 1) fail(path + ".max_iterations", "must be >= 1");
    }
    if (j.contains("seed_spread")) {
        out.seed_spread = get_finite(member(j, "seed_spread"), path + ".seed_spread");
        if (out.seed_spread < 0.0) fail(path + ".seed_spread", "must be >= 0");
    }
    if (j.contains("oracle_budget")) {
        out.oracle_budget = get_integer(member(j, "oracle_budget"), path + ".oracle_budget");
        if (out.oracle_budget < 1) fail(path + ".oracle_budget", "must be >= 1");
    }
    return out;
}

SimBlock parse_sim(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    check_keys(j, path,
               {"buffer", "warmup_slots", "measure_slots", "find_capacity",
                "capacity_iterations", "trace_path"});
    SimBlock out;
    if (j.contains("buffer")) {
        out.buffer = static_cast<int>(get_integer(member(j, "buffer"), path + ".buffer"));
        if (out.buffer < 1) fail(path + ".buffer", "must be >= 1");
    }
    if (j.contains("warmup_slots")) {
        out.warmup_slots = get_integer(member(j, "warmup_slots"), path + ".warmup_slots");
        if (out.warmup_slots < 0) fail(path + ".warmup_slots", "must be >= 0");
    }
    if (j.contains("measure_slots")) {
        out.measure_slots = get_integer(member(j, "measure_slots"), path + ".measure_slots");
        if (out.measure_slots < 1) fail(path + ".measure_slots", "must be >= 1");
    }
    if (j.contains("find_capacity")) {
        out.find_capacity = get_bool(member(j, "find_capacity"), path + ".find_capacity");
    }
    if (j.contains("capacity_iterations")) {
        out.capacity_iterations = static_cast<int>(
            get_integer(member(j, "capacity_iterations"), path + ".capacity_iterations"));
        if (out.capacity_iterations < 1) fail(path + ".capacity_iterations", "must be >= 1");
    }
    if (j.contains("trace_path")) {
        out.trace_path = get_string(member(j, "trace_path"), path + ".trace_path");
    }
    return out;
}

SweepBlock parse_sweep(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    check_keys(j, path, {"parameter", "values", "measure", "analogue"});
    if (!j.contains("parameter")) fail(path + ".parameter", "required");
    if (!j.contains("values")) fail(path + ".values", "required");
    SweepBlock out;
    out.parameter = get_choice(member(j, "parameter"), path + ".parameter",
                               {"subcarriers", "cache_size", "zipf_beta", "lambda"});
    const nlohmann::json& values = member(j, "values");
    if (!values.is_array()) fail(path + ".values", "expected an array");
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::string ipath = path + ".values[" + std::to_string(i) + "]";
        double v = get_finite(values.at(i), ipath);
        if (out.parameter == "subcarriers" || out.parameter == "cache_size") {
            if (v < 1.0 || v != std::floor(v)) fail(ipath, "must be a positive integer");
        } else if (v < 0.0) {
            fail(ipath, "must be >= 0");
        }
        out.values.push_back(v);
    }
    if (j.contains("measure")) {
        out.measure = get_choice(member(j, "measure"), path + ".measure",
                                 {"capacity", "capacity_ratio", "objective", "eb_error"});
    }
    if (j.contains("analogue")) {
        out.analogue = get_choice(member(j, "analogue"), path + ".analogue",
                                  {"fig2", "table1", "fig3a", "fig3b", "none"});
    }
    return out;
}

OutputBlock parse_output(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    check_keys(j, path, {"dir", "format"});
    OutputBlock out;
    if (j.contains("dir")) {
        out.dir = get_string(member(j, "dir"), path + ".dir");
        if (out.dir.empty()) fail(path + ".dir", "must not be empty");
    }
    if (j.contains("format")) {
        out.format = get_choice(member(j, "format"), path + ".format", {"json", "csv"});
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) fail("$", "expected a JSON object");
    check_keys(j, "$",
               {"seed", "topology", "catalog", "phy", "request", "strategy", "solver", "sim",
                "sweep", "plans", "output"});
    ExperimentConfig cfg;
    if (j.contains("seed")) {
        const nlohmann::json& seed = member(j, "seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
            fail("$.seed", "expected an unsigned integer");
        }
        cfg.seed = seed.get<std::uint64_t>();
    }
    if (!j.contains("topology")) fail("$.topology", "required");
    cfg.topology = parse_topology(member(j, "topology"), "$.topology");
    if (!j.contains("catalog")) fail("$.catalog", "required");
    cfg.catalog = parse_catalog(member(j, "catalog"), "$.catalog");
    if (j.contains("phy")) cfg.phy = parse_phy(member(j, "phy"), "$.phy");
    if (j.contains("request")) cfg.request = parse_request(member(j, "request"), "$.request");
    if (j.contains("strategy")) {
        cfg.strategy = get_choice(member(j, "strategy"), "$.strategy",
                                  {"eccds", "ucs", "brr_cvr", "oracle", "no_match"});
    }
    if (j.contains("solver")) cfg.solver = parse_solver(member(j, "solver"), "$.solver");
    if (j.contains("sim")) cfg.sim = parse_sim(member(j, "sim"), "$.sim");
    if (j.contains("sweep")) cfg.sweep = parse_sweep(member(j, "sweep"), "$.sweep");
    if (j.contains("plans")) {
        const nlohmann::json& plans = member(j, "plans");
        if (!plans.is_object() && !plans.is_string()) {
            fail("$.plans", "expected an inline plans object or a path string");
        }
        cfg.plans = plans;
    }
    if (j.contains("output")) cfg.output = parse_output(member(j, "output"), "$.output");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config file not found: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

nlohmann::json resolved_config_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["seed"] = cfg.seed;

    nlohmann::json topo;
    topo["type"] = cfg.topology.type;
    if (cfg.topology.type == "generated") {
        topo["nodes"] = cfg.topology.nodes;
        topo["region_side"] = fmt9_value(cfg.topology.region_side);
    } else if (cfg.topology.type == "edge_list") {
        topo["path"] = cfg.topology.path;
    } else {
        topo["nodes"] = cfg.topology.nodes;
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& [u, v] : cfg.topology.edges) edges.push_back({u, v});
        topo["edges"] = std::move(edges);
    }
    j["topology"] = std::move(topo);

    j["catalog"] = {{"contents", cfg.catalog.contents},
                    {"zipf_beta", fmt9_value(cfg.catalog.zipf_beta)},
                    {"cache_size", cfg.catalog.cache_size}};

    nlohmann::json phy;
    phy["model"] = cfg.phy.model;
    phy["rate"] = fmt9_value(cfg.phy.rate);
    if (cfg.phy.model == "sinr") {
        phy["tx_power_dbm"] = fmt9_value(cfg.phy.tx_power_dbm);
        phy["pathloss_exponent"] = fmt9_value(cfg.phy.pathloss_exponent);
        phy["noise_dbm"] = fmt9_value(cfg.phy.noise_dbm);
        phy["sinr_threshold_db"] = fmt9_value(cfg.phy.sinr_threshold_db);
        phy["subcarriers"] = cfg.phy.subcarriers;
        phy["trials"] = cfg.phy.trials;
    } else if (cfg.phy.fixed_scalar) {
        phy["p"] = fmt9_value(cfg.phy.fixed_value);
    } else {
        nlohmann::json p = nlohmann::json::array();
        for (double v : cfg.phy.fixed_p) p.push_back(fmt9_value(v));
        phy["p"] = std::move(p);
    }
    j["phy"] = std::move(phy);

    if (cfg.request.scalar) {
        j["request"] = {{"lambda", fmt9_value(cfg.request.value)}};
    } else {
        nlohmann::json lam = nlohmann::json::array();
        for (double v : cfg.request.lambda) lam.push_back(fmt9_value(v));
        j["request"] = {{"lambda", std::move(lam)}};
    }

    j["strategy"] = cfg.strategy;
    j["solver"] = {{"tau0", fmt9_value(cfg.solver.tau0)},
                   {"growth", fmt9_value(cfg.solver.growth)},
                   {"tau_max", fmt9_value(cfg.solver.tau_max)},
                   {"samples", cfg.solver.samples},
                   {"tolerance", fmt9_value(cfg.solver.tolerance)},
                   {"max_iterations", cfg.solver.max_iterations},
                   {"seed_spread", fmt9_value(cfg.solver.seed_spread)},
                   {"oracle_budget", cfg.solver.oracle_budget}};
    j["sim"] = {{"buffer", cfg.sim.buffer},
                {"warmup_slots", cfg.sim.warmup_slots},
                {"measure_slots", cfg.sim.measure_slots},
                {"find_capacity", cfg.sim.find_capacity},
                {"capacity_iterations", cfg.sim.capacity_iterations},
                {"trace_path", cfg.sim.trace_path}};
    if (cfg.sweep) {
        nlohmann::json values = nlohmann::json::array();
        for (double v : cfg.sweep->values) values.push_back(fmt9_value(v));
        j["sweep"] = {{"parameter", cfg.sweep->parameter},
                      {"values", std::move(values)},
                      {"measure", cfg.sweep->measure},
                      {"analogue", cfg.sweep->analogue}};
    }
    if (cfg.plans) j["plans"] = *cfg.plans;
    j["output"] = {{"dir", cfg.output.dir}, {"format", cfg.output.format}};
    return j;
}

}  // namespace ebcache
