#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace testutil {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(num * o.den, den * o.num);
}
bool Rational::operator<(const Rational& o) const { return num * o.den < o.num * den; }

std::vector<std::vector<int>> enumerate_shortest_paths(const ebcache::AdjacencyGraph& graph,
                                                        int j, int k) {
    const int n = graph.node_count;
    if (j < 0 || j >= n || k < 0 || k >= n)
        throw std::invalid_argument("enumerate_shortest_paths: node out of range");
    if (j == k) return {{j}};

    // Plain BFS from j, written here on purpose rather than reused.
    std::vector<int> dist(n, -1);
    std::deque<int> queue{j};
    dist[j] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : graph.neighbors[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if (dist[k] < 0) return {};

    std::vector<std::vector<int>> paths;
    std::vector<int> path{j};
    // DFS along strictly distance-increasing edges; every maximal chain of
    // length dist[k] ending at k is a minimum-hop path.
    auto extend = [&](auto&& self, int u) -> void {
        if (u == k) {
            paths.push_back(path);
            return;
        }
        for (int v : graph.neighbors[u]) {
            if (dist[v] == dist[u] + 1 && dist[v] <= dist[k]) {
                path.push_back(v);
                self(self, v);
                path.pop_back();
            }
        }
    };
    extend(extend, j);
    return paths;
}

std::uint64_t brute_passthrough(const ebcache::AdjacencyGraph& graph, int j, int k, int i) {
    if (j == k) return 0;
    std::uint64_t count = 0;
    for (const auto& path : enumerate_shortest_paths(graph, j, k)) {
        for (std::size_t t = 0; t + 1 < path.size(); ++t) {  // destination excluded
            if (path[t] == i) {
                ++count;
                break;
            }
        }
    }
    return count;
}

ebcache::AdjacencyGraph random_connected_graph(ebcache::Rng& rng, int n, int extra_edges) {
    if (n < 2) throw std::invalid_argument("random_connected_graph: need n >= 2");
    std::vector<std::pair<int, int>> edges;
    // Random spanning tree: attach each node to a uniformly random earlier one.
    for (int v = 1; v < n; ++v) {
        const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
        edges.emplace_back(u, v);
    }
    auto has = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        for (const auto& [u, v] : edges)
            if (u == a && v == b) return true;
        return false;
    };
    for (int t = 0; t < extra_edges; ++t) {
        const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (a != b && !has(a, b)) edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    return ebcache::graph_from_edges(n, edges);
}

RandomPlans random_feasible_plans(ebcache::Rng& rng, int node_count,
                                  const ebcache::Catalog& catalog) {
    const int c = catalog.content_count;
    const int slots = catalog.cache_size;
    if (c > node_count * slots)
        throw std::invalid_argument("random_feasible_plans: catalog larger than total cache");

    RandomPlans plans;
    plans.cache = ebcache::CachePlan::zeros(node_count, c);
    // Coverage first: each content lands on a random node with a free slot.
    for (int s = 0; s < c; ++s) {
        std::vector<int> open;
        for (int i = 0; i < node_count; ++i)
            if (plans.cache.slots_used(i) < slots && !plans.cache.cached(i, s)) open.push_back(i);
        const int pick = open[static_cast<std::size_t>(rng.below(open.size()))];
        plans.cache.set(pick, s, true);
    }
    // Fill some leftover slots with random distinct contents.
    for (int i = 0; i < node_count; ++i) {
        while (plans.cache.slots_used(i) < slots && rng.uniform() < 0.5) {
            std::vector<int> missing;
            for (int s = 0; s < c; ++s)
                if (!plans.cache.cached(i, s)) missing.push_back(s);
            if (missing.empty()) break;
            plans.cache.set(i, missing[static_cast<std::size_t>(rng.below(missing.size()))], true);
        }
    }
    plans.delivery = ebcache::DeliveryPlan::zeros(node_count, c);
    for (int s = 0; s < c; ++s) {
        std::vector<int> providers;
        for (int i = 0; i < node_count; ++i)
            if (plans.cache.cached(i, s)) providers.push_back(i);
        for (int j = 0; j < node_count; ++j) {
            const int i = providers[static_cast<std::size_t>(rng.below(providers.size()))];
            plans.delivery.set(i, s, j, true);
        }
    }
    return plans;
}

TempDir::TempDir() {
    const fs::path base = fs::temp_directory_path();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        fs::path candidate = base / ("ebcache_test_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(attempt));
        std::error_code ec;
        if (fs::create_directory(candidate, ec)) {
            path_ = candidate.string();
            return;
        }
    }
    throw std::runtime_error("TempDir: could not create a scratch directory");
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::map<std::string, std::string> snapshot_directory(const std::string& dir) {
    std::map<std::string, std::string> files;
    const fs::path root(dir);
    if (!fs::exists(root)) return files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream bytes;
        bytes << in.rdbuf();
        files[entry.path().lexically_relative(root).generic_string()] = bytes.str();
    }
    return files;
}

}  // namespace testutil
