// optimizer.hpp — max-min cache/delivery planning.
//
// The planning problem: choose binary cache placements x_{i,s} and delivery
// assignments y_{i,s,j} to minimize w = max_i b_i^E / p_i (equivalently,
// maximize the smallest SDP-to-EB ratio). The pipeline relaxes the binary
// program to a box LP, draws recovery seeds around the fractional optimum,
// and maps each seed to a binary feasible plan with a penalty convex-concave
// iteration whose subproblems are LPs over the same constraint set.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebcache/content.hpp"
#include "ebcache/lp.hpp"
#include "ebcache/metrics.hpp"
#include "ebcache/phy.hpp"
#include "ebcache/rng.hpp"
#include "ebcache/topology.hpp"

namespace ebcache {

// The assembled problem: variable vector z = [y, x] (length (N+1)*N*C)
// plus the epigraph variable w, with the feasibility constraints and one
// load row per node tying w to b_i^E / p_i.
struct IlpInstance {
    int node_count = 0;
    int content_count = 0;
    int z_dim = 0;    // (N+1)*N*C
    int w_index = 0;  // z_dim

    LinearProgram lp;  // box relaxation; objective = minimize w

    // Inputs retained for decoding, verification and baselines.
    PathStats stats;
    Catalog catalog;
    RequestProfile profile;
    std::vector<double> sdp;
    double rate = 1.0;

    int y_index(int provider, int content, int requester) const {
        return (provider * node_count + requester) * content_count + content;
    }
    int x_index(int node, int content) const {
        return node_count * node_count * content_count + node * content_count + content;
    }

    // The w = max_i b_i^E / p_i value of a plan pair, recomputed from metrics.
    double plan_objective(const CachePlan& cache, const DeliveryPlan& delivery) const;
};

struct CcpConfig {
    double tau0 = 1.0;
    double growth = 1.5;   // theta
    double tau_max = 1e4;
    int samples = 20;      // recovery samples L
    double tolerance = 1e-6;
    int max_iterations = 200;
    double seed_spread = 0.25;
    long long oracle_budget = 10000000;  // used by the exhaustive search only
};

struct CcpIterationRecord {
    double tau = 0.0;
    double penalized_objective = 0.0;  // w + tau * sum of binarity slacks
    double slack_sum = 0.0;
};

struct CcpSampleTrace {
    std::vector<CcpIterationRecord> iterations;
    bool recovered = false;
    bool early_exit_binary = false;  // seed was already binary feasible
};

struct SolverTrace {
    long lp_solves = 0;
    int samples_attempted = 0;
    std::vector<CcpSampleTrace> samples;
    double relaxation_bound = 0.0;  // w_lower
    std::string selected;           // "ccp", "ucs" or "brr_cvr"
};

struct SolveResult {
    CachePlan cache;
    DeliveryPlan delivery;
    double objective = 0.0;  // w = max_i b_i^E / p_i of the returned plans
    bool feasible = false;
    std::string strategy;
    bool fallback = false;  // no recovery sample succeeded; baseline returned
    SolverTrace trace;
};

struct RelaxationResult {
    std::vector<double> z;  // fractional z*, length z_dim
    double w_lower = 0.0;
    long pivots = 0;
};

struct CcpRoundResult {
    bool success = false;
    std::vector<double> z;
    CachePlan cache;
    DeliveryPlan delivery;
    double objective = 0.0;
    CcpSampleTrace trace;
};

// Builds the LP over z = [y, x]: cache budgets (per node), coverage (per
// content), single-provider rows (per requester, content), provider-caches
// rows (y <= x), and one load row per node. Throws when C > N*S (coverage
// cannot hold) or when total demand is zero.
IlpInstance assemble_p1(const PathStats& stats, const Catalog& catalog,
                        const RequestProfile& profile, const PhyProfile& phy);

// Optimum of the box relaxation; w_lower bounds the binary optimum from below.
RelaxationResult solve_relaxation(const IlpInstance& instance);

// Recovery seeds around z*: the first is z* itself, then alternating
// independent Bernoulli roundings of z* and Gaussian perturbations clamped
// to [0,1].
std::vector<std::vector<double>> sample_recovery_seeds(const std::vector<double>& z_star,
                                                       int count, double spread, Rng& rng);

// One penalty iteration chain from a seed vector to (hopefully) a binary
// feasible plan. Non-binary or infeasible termination reports failure.
CcpRoundResult penalty_ccp_round(const IlpInstance& instance, const std::vector<double>& seed,
                                 const CcpConfig& cfg);

// Full pipeline: relaxation, L recovery samples through the penalty rounds,
// then selection of the best feasible candidate. The two deterministic
// baselines join the final selection (never worse than either); if no sample
// recovers, the result degrades to the uniform baseline and is flagged.
SolveResult eccds_solve(const IlpInstance& instance, const CcpConfig& cfg, Rng& rng);

// Uniform caching: every node draws S contents uniformly, repaired so each
// content is cached somewhere; delivery fetches from the hop-nearest cache.
SolveResult baseline_ucs(const PathStats& stats, const Catalog& catalog,
                         const RequestProfile& profile, const std::vector<double>& sdp, Rng& rng);

// Popularity-ordered contents dealt round-robin over nodes sorted by
// classical betweenness; delivery fetches from the hop-nearest cache.
SolveResult baseline_brr_cvr(const PathStats& stats, const Catalog& catalog,
                             const RequestProfile& profile, const std::vector<double>& sdp,
                             const std::vector<double>& betweenness);

// Exact optimum by enumerating every feasible (x, y). Refuses (throws
// std::runtime_error) when the enumeration size exceeds the budget.
SolveResult exhaustive_oracle(const IlpInstance& instance, long long budget = 10000000);

}  // namespace ebcache
