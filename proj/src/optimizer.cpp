#include "ebcache/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ebcache {
namespace {

constexpr double kBinaryTol = 1e-6;

bool is_binary_vector(const std::vector<double>& z) {
    for (double v : z) {
        if (std::min(std::abs(v), std::abs(v - 1.0)) > kBinaryTol) return false;
    }
    return true;
}

void decode_plans(const IlpInstance& inst, const std::vector<double>& z, CachePlan& cache,
                  DeliveryPlan& delivery) {
    const int n = inst.node_count;
    const int c = inst.content_count;
    cache = CachePlan::zeros(n, c);
    delivery = DeliveryPlan::zeros(n, c);
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < c; ++s) {
            if (z[inst.x_index(i, s)] > 0.5) cache.set(i, s, true);
            for (int j = 0; j < n; ++j) {
                if (z[inst.y_index(i, s, j)] > 0.5) delivery.set(i, s, j, true);
            }
        }
    }
}

double plan_w(const PathStats& stats, const Catalog& catalog, const RequestProfile& profile,
              const std::vector<double>& sdp, const DeliveryPlan& delivery) {
    std::vector<double> eb = efficient_betweenness(stats, delivery, profile, catalog);
    double w = 0.0;
    for (std::size_t i = 0; i < eb.size(); ++i) w = std::max(w, eb[i] / sdp[i]);
    return w;
}

void check_ccp_config(const CcpConfig& cfg) {
    if (!(cfg.tau0 > 0.0)) throw std::invalid_argument("ccp: tau0 must be positive");
    if (!(cfg.growth > 1.0)) throw std::invalid_argument("ccp: growth must exceed 1");
    if (!(cfg.tau_max >= cfg.tau0)) throw std::invalid_argument("ccp: tau_max below tau0");
    if (cfg.samples < 1) throw std::invalid_argument("ccp: samples must be >= 1");
    if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("ccp: tolerance must be positive");
    if (cfg.max_iterations < 1) throw std::invalid_argument("ccp: max_iterations must be >= 1");
    if (cfg.seed_spread < 0.0) throw std::invalid_argument("ccp: seed_spread must be >= 0");
}

// The penalty iteration on one seed, warm-starting every LP from the
// solver's current basis. The concave binarity penalty tau*sum(z - z^2) is
// majorized at zhat by tau*sum(z(1-2*zhat) + zhat^2); its minimizer over the
// feasible set never does worse than zhat, so the recorded surrogate values
// are non-increasing while tau stays fixed.
CcpRoundResult run_ccp(SimplexSolver& solver, const IlpInstance& inst,
                       const std::vector<double>& seed, const CcpConfig& cfg) {
    CcpRoundResult out;
    if (static_cast<int>(seed.size()) != inst.z_dim) {
        throw std::invalid_argument("penalty_ccp_round: seed length mismatch");
    }

    if (is_binary_vector(seed)) {
        CachePlan cache;
        DeliveryPlan delivery;
        decode_plans(inst, seed, cache, delivery);
        if (validate_plans(cache, delivery, inst.catalog).empty()) {
            out.success = true;
            out.trace.recovered = true;
            out.trace.early_exit_binary = true;
            out.z = seed;
            for (double& v : out.z) v = v > 0.5 ? 1.0 : 0.0;
            out.cache = std::move(cache);
            out.delivery = std::move(delivery);
            out.objective = inst.plan_objective(out.cache, out.delivery);
            return out;
        }
    }

    std::vector<double> zhat = seed;
    std::vector<double> cost(static_cast<std::size_t>(inst.lp.num_vars), 0.0);
    cost[inst.w_index] = 1.0;
    double tau = cfg.tau0;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        double constant = 0.0;
        for (int l = 0; l < inst.z_dim; ++l) {
            cost[l] = tau * (1.0 - 2.0 * zhat[l]);
            constant += tau * zhat[l] * zhat[l];
        }
        LpSolution sol = solver.resolve(cost);
        if (sol.status != LpStatus::Optimal) return out;

        double delta = 0.0;
        for (int l = 0; l < inst.z_dim; ++l) {
            delta = std::max(delta, std::abs(sol.x[l] - zhat[l]));
            zhat[l] = sol.x[l];
        }
        CcpIterationRecord rec;
        rec.tau = tau;
        rec.penalized_objective = sol.objective + constant;
        rec.slack_sum = (rec.penalized_objective - sol.x[inst.w_index]) / tau;
        out.trace.iterations.push_back(rec);

        bool at_max = tau >= cfg.tau_max * (1.0 - 1e-12);
        if (at_max && delta < cfg.tolerance) break;
        tau = std::min(tau * cfg.growth, cfg.tau_max);
    }

    if (!is_binary_vector(zhat)) return out;
    for (double& v : zhat) v = v > 0.5 ? 1.0 : 0.0;
    CachePlan cache;
    DeliveryPlan delivery;
    decode_plans(inst, zhat, cache, delivery);
    if (!validate_plans(cache, delivery, inst.catalog).empty()) return out;

    out.success = true;
    out.trace.recovered = true;
    out.z = std::move(zhat);
    out.cache = std::move(cache);
    out.delivery = std::move(delivery);
    out.objective = inst.plan_objective(out.cache, out.delivery);
    return out;
}

// Every content becomes cached somewhere: repeatedly move the most-duplicated
// cached content's lowest-index copy onto an uncovered content. Terminates
// because each swap covers one content without uncovering another, and a
// duplicate always exists while some content is missing (C <= N*S).
void repair_coverage(CachePlan& cache) {
    const int n = cache.node_count;
    const int c = cache.content_count;
    std::vector<int> copies(static_cast<std::size_t>(c), 0);
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < c; ++s) {
            if (cache.cached(i, s)) ++copies[s];
        }
    }
    for (int s = 0; s < c; ++s) {
        while (copies[s] == 0) {
            int best_node = -1, best_content = -1, best_copies = 1;
            for (int i = 0; i < n; ++i) {
                for (int t = 0; t < c; ++t) {
                    if (cache.cached(i, t) && copies[t] > best_copies) {
                        best_node = i;
                        best_content = t;
                        best_copies = copies[t];
                    }
                }
            }
            if (best_node < 0) throw std::logic_error("repair_coverage: no duplicate to reassign");
            cache.set(best_node, best_content, false);
            --copies[best_content];
            cache.set(best_node, s, true);
            ++copies[s];
        }
    }
}

DeliveryPlan nearest_cache_delivery(const PathStats& stats, const CachePlan& cache) {
    const int n = stats.node_count;
    const int c = cache.content_count;
    DeliveryPlan delivery = DeliveryPlan::zeros(n, c);
    for (int j = 0; j < n; ++j) {
        for (int s = 0; s < c; ++s) {
            int best = -1;
            int best_hops = std::numeric_limits<int>::max();
            for (int i = 0; i < n; ++i) {
                if (!cache.cached(i, s)) continue;
                int h = stats.hops(i, j);
                if (h < best_hops) {
                    best_hops = h;
                    best = i;
                }
            }
            if (best < 0) throw std::logic_error("nearest_cache_delivery: content uncovered");
            delivery.set(best, s, j, true);
        }
    }
    return delivery;
}

SolveResult finish_baseline(const PathStats& stats, const Catalog& catalog,
                            const RequestProfile& profile, const std::vector<double>& sdp,
                            CachePlan cache, const char* name) {
    SolveResult out;
    out.strategy = name;
    out.delivery = nearest_cache_delivery(stats, cache);
    out.cache = std::move(cache);
    out.feasible = validate_plans(out.cache, out.delivery, catalog).empty();
    out.objective = plan_w(stats, catalog, profile, sdp, out.delivery);
    return out;
}

}  // namespace

double IlpInstance::plan_objective(const CachePlan& cache, const DeliveryPlan& delivery) const {
    (void)cache;
    return plan_w(stats, catalog, profile, sdp, delivery);
}

IlpInstance assemble_p1(const PathStats& stats, const Catalog& catalog,
                        const RequestProfile& profile, const PhyProfile& phy) {
    const int n = stats.node_count;
    const int c = catalog.content_count;
    if (n < 2) throw std::invalid_argument("assemble_p1: need at least two nodes");
    if (c < 1) throw std::invalid_argument("assemble_p1: empty catalog");
    if (static_cast<int>(profile.lambda.size()) != n) {
        throw std::invalid_argument("assemble_p1: request profile size mismatch");
    }
    if (static_cast<int>(phy.p.size()) != n) {
        throw std::invalid_argument("assemble_p1: phy profile size mismatch");
    }
    if (c > n * catalog.cache_size) {
        throw std::invalid_argument(
            "assemble_p1: catalog exceeds total cache slots, coverage is impossible");
    }
    const double total = profile.total();
    if (!(total > 0.0)) throw std::invalid_argument("assemble_p1: total request rate is zero");

    IlpInstance inst;
    inst.node_count = n;
    inst.content_count = c;
    inst.z_dim = (n + 1) * n * c;
    inst.w_index = inst.z_dim;
    inst.stats = stats;
    inst.catalog = catalog;
    inst.profile = profile;
    inst.sdp = phy.p;
    inst.rate = phy.rate;

    LinearProgram& lp = inst.lp;
    for (int v = 0; v < inst.z_dim; ++v) lp.add_variable(0.0, 1.0, 0.0);
    lp.add_variable(0.0, kLpInfinity, 1.0);  // w

    // Per-node cache budget: sum_s x_{i,s} <= S.
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, double>> row;
        row.reserve(static_cast<std::size_t>(c));
        for (int s = 0; s < c; ++s) row.emplace_back(inst.x_index(i, s), 1.0);
        lp.add_row(std::move(row), RowSense::LessEq, static_cast<double>(catalog.cache_size));
    }
    // Coverage: sum_i x_{i,s} >= 1.
    for (int s = 0; s < c; ++s) {
        std::vector<std::pair<int, double>> row;
        row.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) row.emplace_back(inst.x_index(i, s), 1.0);
        lp.add_row(std::move(row), RowSense::GreaterEq, 1.0);
    }
    // Single provider: sum_i y_{i,s,j} = 1 for every requester j and content s.
    for (int j = 0; j < n; ++j) {
        for (int s = 0; s < c; ++s) {
            std::vector<std::pair<int, double>> row;
            row.reserve(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) row.emplace_back(inst.y_index(i, s, j), 1.0);
            lp.add_row(std::move(row), RowSense::Equal, 1.0);
        }
    }
    // Providers must cache what they deliver: y_{i,s,j} <= x_{i,s}.
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < c; ++s) {
            for (int j = 0; j < n; ++j) {
                lp.add_row({{inst.y_index(i, s, j), 1.0}, {inst.x_index(i, s), -1.0}},
                           RowSense::LessEq, 0.0);
            }
        }
    }
    // Load rows: b_i^E / p_i <= w, with b_i^E expanded over the delivery
    // variables through the pass-through ratios.
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, double>> row;
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (profile.lambda[k] == 0.0) continue;
                double ratio = stats.passthrough_ratio(j, k, i);
                if (ratio == 0.0) continue;
                double base = profile.lambda[k] * ratio / (total * phy.p[i]);
                for (int s = 0; s < c; ++s) {
                    double coeff = catalog.popularity[s] * base;
                    if (coeff != 0.0) row.emplace_back(inst.y_index(j, s, k), coeff);
                }
            }
        }
        row.emplace_back(inst.w_index, -1.0);
        lp.add_row(std::move(row), RowSense::LessEq, 0.0);
    }
    return inst;
}

RelaxationResult solve_relaxation(const IlpInstance& instance) {
    SimplexSolver solver(instance.lp);
    LpSolution sol = solver.solve();
    if (sol.status != LpStatus::Optimal) {
        throw std::runtime_error("solve_relaxation: relaxation did not reach an optimum");
    }
    RelaxationResult out;
    out.z.assign(sol.x.begin(), sol.x.begin() + instance.z_dim);
    out.w_lower = sol.x[instance.w_index];
    out.pivots = sol.pivots;
    return out;
}

std::vector<std::vector<double>> sample_recovery_seeds(const std::vector<double>& z_star,
                                                       int count, double spread, Rng& rng) {
    if (count < 1) throw std::invalid_argument("sample_recovery_seeds: count must be >= 1");
    std::vector<std::vector<double>> seeds;
    seeds.reserve(static_cast<std::size_t>(count));
    seeds.push_back(z_star);
    for (int t = 1; t < count; ++t) {
        std::vector<double> seed(z_star.size());
        if (t % 2 == 1) {
            for (std::size_t l = 0; l < z_star.size(); ++l) {
                seed[l] = rng.uniform() < z_star[l] ? 1.0 : 0.0;
            }
        } else {
            for (std::size_t l = 0; l < z_star.size(); ++l) {
                seed[l] = std::clamp(z_star[l] + spread * rng.normal(), 0.0, 1.0);
            }
        }
        seeds.push_back(std::move(seed));
    }
    return seeds;
}

CcpRoundResult penalty_ccp_round(const IlpInstance& instance, const std::vector<double>& seed,
                                 const CcpConfig& cfg) {
    check_ccp_config(cfg);
    SimplexSolver solver(instance.lp);
    LpSolution sol = solver.solve();
    if (sol.status != LpStatus::Optimal) {
        throw std::runtime_error("penalty_ccp_round: relaxation did not reach an optimum");
    }
    return run_ccp(solver, instance, seed, cfg);
}

SolveResult eccds_solve(const IlpInstance& instance, const CcpConfig& cfg, Rng& rng) {
    check_ccp_config(cfg);

    SolveResult out;
    out.strategy = "eccds";

    SimplexSolver solver(instance.lp);
    LpSolution relax = solver.solve();
    if (relax.status != LpStatus::Optimal) {
        throw std::runtime_error("eccds_solve: relaxation did not reach an optimum");
    }
    out.trace.lp_solves = 1;
    out.trace.relaxation_bound = relax.x[instance.w_index];
    std::vector<double> z_star(relax.x.begin(), relax.x.begin() + instance.z_dim);

    std::vector<std::vector<double>> seeds =
        sample_recovery_seeds(z_star, cfg.samples, cfg.seed_spread, rng);
    out.trace.samples_attempted = cfg.samples;

    bool ccp_recovered = false;
    for (const std::vector<double>& seed : seeds) {
        CcpRoundResult round = run_ccp(solver, instance, seed, cfg);
        out.trace.lp_solves += static_cast<long>(round.trace.iterations.size());
        out.trace.samples.push_back(round.trace);
        if (round.success && (!out.feasible || round.objective < out.objective)) {
            out.feasible = true;
            out.objective = round.objective;
            out.cache = std::move(round.cache);
            out.delivery = std::move(round.delivery);
            out.trace.selected = "ccp";
            ccp_recovered = true;
        }
    }

    // The deterministic baselines join the final selection, so the pipeline
    // never returns a plan worse than either of them.
    SolveResult ucs =
        baseline_ucs(instance.stats, instance.catalog, instance.profile, instance.sdp, rng);
    SolveResult brr =
        baseline_brr_cvr(instance.stats, instance.catalog, instance.profile, instance.sdp,
                         classical_betweenness(instance.stats));
    for (SolveResult* cand : {&ucs, &brr}) {
        if (cand->feasible && (!out.feasible || cand->objective < out.objective)) {
            out.feasible = true;
            out.objective = cand->objective;
            out.cache = std::move(cand->cache);
            out.delivery = std::move(cand->delivery);
            out.trace.selected = cand->strategy;
        }
    }
    out.fallback = !ccp_recovered;
    return out;
}

SolveResult baseline_ucs(const PathStats& stats, const Catalog& catalog,
                         const RequestProfile& profile, const std::vector<double>& sdp, Rng& rng) {
    const int n = stats.node_count;
    const int c = catalog.content_count;
    if (c > n * catalog.cache_size) {
        throw std::invalid_argument("baseline_ucs: catalog exceeds total cache slots");
    }
    CachePlan cache = CachePlan::zeros(n, c);
    const int per_node = std::min(catalog.cache_size, c);
    std::vector<int> pool(static_cast<std::size_t>(c));
    for (int i = 0; i < n; ++i) {
        std::iota(pool.begin(), pool.end(), 0);
        for (int t = 0; t < per_node; ++t) {
            int pick = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(c - t)));
            std::swap(pool[t], pool[pick]);
            cache.set(i, pool[t], true);
        }
    }
    repair_coverage(cache);
    return finish_baseline(stats, catalog, profile, sdp, std::move(cache), "ucs");
}

SolveResult baseline_brr_cvr(const PathStats& stats, const Catalog& catalog,
                             const RequestProfile& profile, const std::vector<double>& sdp,
                             const std::vector<double>& betweenness) {
    const int n = stats.node_count;
    const int c = catalog.content_count;
    if (static_cast<int>(betweenness.size()) != n) {
        throw std::invalid_argument("baseline_brr_cvr: betweenness size mismatch");
    }
    if (c > n * catalog.cache_size) {
        throw std::invalid_argument("baseline_brr_cvr: catalog exceeds total cache slots");
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return betweenness[a] > betweenness[b]; });

    // Deal contents in popularity order over nodes in betweenness order, one
    // slot per node per round, skipping contents a node already holds.
    CachePlan cache = CachePlan::zeros(n, c);
    long long cursor = 0;
    for (int round = 0; round < catalog.cache_size; ++round) {
        for (int node : order) {
            int tried = 0;
            while (tried < c && cache.cached(node, static_cast<int>(cursor % c))) {
                ++cursor;
                ++tried;
            }
            if (tried == c) continue;
            cache.set(node, static_cast<int>(cursor % c), true);
            ++cursor;
        }
    }
    return finish_baseline(stats, catalog, profile, sdp, std::move(cache), "brr_cvr");
}

SolveResult exhaustive_oracle(const IlpInstance& instance, long long budget) {
    const int n = instance.node_count;
    const int c = instance.content_count;
    const int s_max = instance.catalog.cache_size;
    if (c > 20) throw std::runtime_error("exhaustive_oracle: catalog too large to enumerate");
    if (budget < 1) throw std::invalid_argument("exhaustive_oracle: budget must be positive");

    // Per-node cache masks obeying the slot budget.
    std::vector<int> masks;
    for (int m = 0; m < (1 << c); ++m) {
        if (std::popcount(static_cast<unsigned>(m)) <= s_max) masks.push_back(m);
    }

    const double total = instance.profile.total();
    // contrib[((i*c + s)*n + j)*n + v]: load added to node v when requester j
    // fetches content s from provider i.
    std::vector<double> contrib(static_cast<std::size_t>(n) * c * n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < c; ++s) {
            for (int j = 0; j < n; ++j) {
                std::size_t base = ((static_cast<std::size_t>(i) * c + s) * n + j) * n;
                for (int v = 0; v < n; ++v) {
                    contrib[base + v] = instance.catalog.popularity[s] *
                                        instance.profile.lambda[j] *
                                        instance.stats.passthrough_ratio(i, j, v) /
                                        (total * instance.sdp[v]);
                }
            }
        }
    }

    // First pass: the enumeration size. A cache choice contributes the number
    // of delivery assignments it admits, prod_s providers(s)^n.
    std::vector<int> choice(static_cast<std::size_t>(n), 0);
    double enumerated = 0.0;
    double visited_caches = 0.0;
    auto count_pass = [&](auto&& self, int node, int covered) -> void {
        if (enumerated > static_cast<double>(budget)) return;
        int missing = c - std::popcount(static_cast<unsigned>(covered));
        if (missing > (n - node) * s_max) return;  // coverage out of reach
        if (node == n) {
            if (missing != 0) return;
            visited_caches += 1.0;
            double combos = 1.0;
            for (int s = 0; s < c; ++s) {
                int providers = 0;
                for (int i = 0; i < n; ++i) {
                    if (choice[i] & (1 << s)) ++providers;
                }
                combos *= std::pow(static_cast<double>(providers), n);
            }
            enumerated += combos;
            return;
        }
        for (int m : masks) {
            choice[node] = m;
            self(self, node + 1, covered | m);
            if (enumerated > static_cast<double>(budget)) return;
        }
    };
    count_pass(count_pass, 0, 0);
    if (enumerated > static_cast<double>(budget)) {
        throw std::runtime_error("exhaustive_oracle: enumeration size exceeds the budget");
    }

    // Second pass: the actual search with load-based pruning (loads only
    // grow along a delivery assignment, so a partial max at or above the
    // incumbent can be cut).
    double best_w = std::numeric_limits<double>::infinity();
    std::vector<int> best_choice;
    std::vector<int> best_assign;
    std::vector<int> assign(static_cast<std::size_t>(c) * n, -1);
    std::vector<double> loads(static_cast<std::size_t>(n), 0.0);
    std::vector<std::vector<int>> providers_of(static_cast<std::size_t>(c));

    auto assign_pass = [&](auto&& self, int pair) -> void {
        if (pair == c * n) {
            double w = *std::max_element(loads.begin(), loads.end());
            if (w < best_w) {
                best_w = w;
                best_choice = choice;
                best_assign = assign;
            }
            return;
        }
        int s = pair / n;
        int j = pair % n;
        for (int i : providers_of[s]) {
            std::size_t base = ((static_cast<std::size_t>(i) * c + s) * n + j) * n;
            for (int v = 0; v < n; ++v) loads[v] += contrib[base + v];
            double cur = *std::max_element(loads.begin(), loads.end());
            if (cur < best_w) {
                assign[static_cast<std::size_t>(s) * n + j] = i;
                self(self, pair + 1);
                assign[static_cast<std::size_t>(s) * n + j] = -1;
            }
            for (int v = 0; v < n; ++v) loads[v] -= contrib[base + v];
        }
    };
    auto cache_pass = [&](auto&& self, int node, int covered) -> void {
        int missing = c - std::popcount(static_cast<unsigned>(covered));
        if (missing > (n - node) * s_max) return;
        if (node == n) {
            if (missing != 0) return;
            for (int s = 0; s < c; ++s) {
                providers_of[s].clear();
                for (int i = 0; i < n; ++i) {
                    if (choice[i] & (1 << s)) providers_of[s].push_back(i);
                }
            }
            assign_pass(assign_pass, 0);
            return;
        }
        for (int m : masks) {
            choice[node] = m;
            self(self, node + 1, covered | m);
        }
    };
    cache_pass(cache_pass, 0, 0);

    if (!std::isfinite(best_w)) {
        throw std::runtime_error("exhaustive_oracle: no feasible plan found");
    }

    SolveResult out;
    out.strategy = "oracle";
    out.cache = CachePlan::zeros(n, c);
    out.delivery = DeliveryPlan::zeros(n, c);
    for (int i = 0; i < n; ++i) {
        for (int s = 0; s < c; ++s) {
            if (best_choice[i] & (1 << s)) out.cache.set(i, s, true);
        }
    }
    for (int s = 0; s < c; ++s) {
        for (int j = 0; j < n; ++j) {
            out.delivery.set(best_assign[static_cast<std::size_t>(s) * n + j], s, j, true);
        }
    }
    out.feasible = validate_plans(out.cache, out.delivery, instance.catalog).empty();
    out.objective = instance.plan_objective(out.cache, out.delivery);
    return out;
}

}  // namespace ebcache
