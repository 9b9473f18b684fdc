// support.hpp — shared oracles and scaffolding for the test suites.
//
// The oracles here are deliberately independent of the library internals:
// exact rational arithmetic for closed-form values and explicit path
// enumeration instead of the BFS counting used by the implementation.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ebcache/content.hpp"
#include "ebcache/rng.hpp"
#include "ebcache/topology.hpp"

namespace testutil {

// Exact rational arithmetic; always normalized (gcd 1, positive denominator).
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit on purpose
    Rational(long long n, long long d);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Every minimum-hop path from j to k (inclusive of both endpoints), found by
// DFS over an independently computed BFS distance field. Returns {{j}} when
// j == k.
std::vector<std::vector<int>> enumerate_shortest_paths(const ebcache::AdjacencyGraph& graph,
                                                        int j, int k);

// Brute-force sigma(j,k,i): minimum-hop j->k paths that contain i, with the
// destination excluded (source-inclusive convention).
std::uint64_t brute_passthrough(const ebcache::AdjacencyGraph& graph, int j, int k, int i);

// Random connected graph: a uniform random spanning tree plus roughly
// extra_edges additional random edges.
ebcache::AdjacencyGraph random_connected_graph(ebcache::Rng& rng, int n, int extra_edges);

// Random feasible plan pair: first deal each content to some node with a free
// slot (coverage), then fill remaining slots at random, then pick a uniform
// cached provider per (content, requester). Requires C <= n * S.
struct RandomPlans {
    ebcache::CachePlan cache;
    ebcache::DeliveryPlan delivery;
};
RandomPlans random_feasible_plans(ebcache::Rng& rng, int node_count,
                                  const ebcache::Catalog& catalog);

// Unique scratch directory under the system temp dir; removed recursively on
// destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Runs a shell command; returns the process exit status, or -1 when the
// process did not terminate normally.
int run_command(const std::string& command);

// Relative path -> file bytes for every regular file under dir.
std::map<std::string, std::string> snapshot_directory(const std::string& dir);

}  // namespace testutil
