#include "ebcache/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ebcache {

bool AdjacencyGraph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto& nb = neighbors[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::uint64_t PathStats::passthrough(int j, int k, int i) const {
    if (j == k || i == k) return 0;
    if (hops(j, i) + hops(i, k) != hops(j, k)) return 0;
    return path_count(j, i) * path_count(i, k);
}

double PathStats::passthrough_ratio(int j, int k, int i) const {
    if (j == k || i == k) return 0.0;
    const std::uint64_t total = path_count(j, k);
    if (total == 0) return 0.0;
    return static_cast<double>(passthrough(j, k, i)) / static_cast<double>(total);
}

NodeLayout generate_layout(int n, double side, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_layout: node count must be >= 2");
    if (!(side > 0.0)) throw std::invalid_argument("generate_layout: region side must be > 0");
    NodeLayout layout;
    layout.region_side = side;
    layout.seed = seed;
    layout.positions.reserve(n);
    Rng rng(derive_seed(seed, "layout"));
    while (static_cast<int>(layout.positions.size()) < n) {
        Point p{rng.uniform() * side, rng.uniform() * side};
        bool duplicate = false;
        for (const auto& q : layout.positions) {
            if (q.x == p.x && q.y == p.y) { duplicate = true; break; }
        }
        if (!duplicate) layout.positions.push_back(p);
    }
    return layout;
}

namespace {

// > 0 iff d lies strictly inside the circumcircle of CCW triangle (a,b,c).
double incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
           ad * (bdx * cdy - bdy * cdx);
}

double orient2d(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

struct Triangle {
    std::array<int, 3> v;
};

AdjacencyGraph chain_in_coordinate_order(const NodeLayout& layout) {
    const int n = layout.node_count();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Point& pa = layout.positions[a];
        const Point& pb = layout.positions[b];
        if (pa.x != pb.x) return pa.x < pb.x;
        if (pa.y != pb.y) return pa.y < pb.y;
        return a < b;
    });
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(order[i], order[i + 1]);
    return graph_from_edges(n, edges);
}

bool all_collinear(const NodeLayout& layout) {
    const int n = layout.node_count();
    if (n < 3) return true;
    // Any point off the line through the two extremes breaks collinearity.
    for (int i = 2; i < n; ++i) {
        if (orient2d(layout.positions[0], layout.positions[1], layout.positions[i]) != 0.0)
            return false;
    }
    return true;
}

}  // namespace

AdjacencyGraph build_adjacency(const NodeLayout& layout) {
    const int n = layout.node_count();
    if (n < 2) throw std::invalid_argument("build_adjacency: need at least 2 nodes");
    if (n == 2) return graph_from_edges(2, {{0, 1}});
    if (all_collinear(layout)) return chain_in_coordinate_order(layout);

    // Bowyer-Watson with a super-triangle well outside the region.
    std::vector<Point> pts = layout.positions;
    double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
    for (const auto& p : pts) {
        lo_x = std::min(lo_x, p.x); hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y); hi_y = std::max(hi_y, p.y);
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    const int s0 = n, s1 = n + 1, s2 = n + 2;
    pts.push_back({cx - 20.0 * span, cy - 10.0 * span});
    pts.push_back({cx + 20.0 * span, cy - 10.0 * span});
    pts.push_back({cx, cy + 20.0 * span});

    std::vector<Triangle> tris;
    tris.push_back({{s0, s1, s2}});
    if (orient2d(pts[s0], pts[s1], pts[s2]) < 0.0) std::swap(tris[0].v[1], tris[0].v[2]);

    for (int p = 0; p < n; ++p) {
        std::vector<Triangle> keep;
        std::map<std::pair<int, int>, int> boundary_count;
        keep.reserve(tris.size() + 2);
        for (const auto& t : tris) {
            if (incircle(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[p]) > 0.0) {
                for (int e = 0; e < 3; ++e) {
                    int a = t.v[e], b = t.v[(e + 1) % 3];
                    if (a > b) std::swap(a, b);
                    boundary_count[{a, b}]++;
                }
            } else {
                keep.push_back(t);
            }
        }
        for (const auto& [edge, count] : boundary_count) {
            if (count != 1) continue;  // interior cavity edge, removed with both triangles
            int a = edge.first, b = edge.second;
            if (orient2d(pts[a], pts[b], pts[p]) < 0.0) std::swap(a, b);
            keep.push_back({{a, b, p}});
        }
        tris.swap(keep);
    }

    std::set<std::pair<int, int>> edge_set;
    for (const auto& t : tris) {
        if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
        for (int e = 0; e < 3; ++e) {
            int a = t.v[e], b = t.v[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_set.insert({a, b});
        }
    }
    if (edge_set.empty()) return chain_in_coordinate_order(layout);
    return graph_from_edges(n, {edge_set.begin(), edge_set.end()});
}

namespace {

bool is_connected(const AdjacencyGraph& g) {
    if (g.node_count == 0) return false;
    std::vector<char> seen(g.node_count, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int visited = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.neighbors[u]) {
            if (!seen[v]) { seen[v] = 1; ++visited; queue.push_back(v); }
        }
    }
    return visited == g.node_count;
}

}  // namespace

std::pair<NodeLayout, AdjacencyGraph> generate_connected_topology(int n, double side,
                                                                  std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        NodeLayout layout = generate_layout(n, side, seed + attempt * 0x9e3779b97f4a7c15ull);
        AdjacencyGraph graph = build_adjacency(layout);
        if (is_connected(graph)) return {std::move(layout), std::move(graph)};
    }
}

PathStats path_stats(const AdjacencyGraph& graph) {
    const int n = graph.node_count;
    PathStats stats;
    stats.node_count = n;
    stats.hop.assign(static_cast<std::size_t>(n) * n, -1);
    stats.sigma.assign(static_cast<std::size_t>(n) * n, 0);

    std::deque<int> queue;
    for (int src = 0; src < n; ++src) {
        auto* hop_row = &stats.hop[static_cast<std::size_t>(src) * n];
        auto* sig_row = &stats.sigma[static_cast<std::size_t>(src) * n];
        hop_row[src] = 0;
        sig_row[src] = 1;
        queue.clear();
        queue.push_back(src);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : graph.neighbors[u]) {
                if (hop_row[v] < 0) {
                    hop_row[v] = hop_row[u] + 1;
                    queue.push_back(v);
                }
                if (hop_row[v] == hop_row[u] + 1) sig_row[v] += sig_row[u];
            }
        }
        for (int k = 0; k < n; ++k) {
            if (hop_row[k] < 0) throw std::runtime_error("path_stats: graph is disconnected");
        }
    }
    return stats;
}

std::vector<double> classical_betweenness(const PathStats& stats) {
    const int n = stats.node_count;
    std::vector<double> b(n, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const double total = static_cast<double>(stats.path_count(j, k));
            for (int i = 0; i < n; ++i) {
                if (i == j || i == k) continue;
                const std::uint64_t through = stats.passthrough(j, k, i);
                if (through) b[i] += static_cast<double>(through) / total;
            }
        }
    }
    return b;
}

std::vector<int> sample_shortest_path(const PathStats& stats, const AdjacencyGraph& graph,
                                      int j, int k, Rng& rng) {
    std::vector<int> path{j};
    int u = j;
    while (u != k) {
        // Weight each next hop by the number of shortest paths it leads into;
        // this makes the overall draw uniform over all sigma(j,k) paths.
        std::uint64_t total = 0;
        for (int v : graph.neighbors[u]) {
            if (stats.hops(v, k) == stats.hops(u, k) - 1) total += stats.path_count(v, k);
        }
        std::uint64_t pick = rng.below(total);
        int chosen = -1;
        for (int v : graph.neighbors[u]) {
            if (stats.hops(v, k) != stats.hops(u, k) - 1) continue;
            const std::uint64_t weight = stats.path_count(v, k);
            if (pick < weight) { chosen = v; break; }
            pick -= weight;
        }
        u = chosen;
        path.push_back(u);
    }
    return path;
}

AdjacencyGraph graph_from_edges(int node_count, const std::vector<std::pair<int, int>>& edges) {
    if (node_count < 1) throw std::invalid_argument("graph_from_edges: empty node set");
    AdjacencyGraph g;
    g.node_count = node_count;
    g.neighbors.assign(node_count, {});
    std::set<std::pair<int, int>> unique;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= node_count || v >= node_count)
            throw std::invalid_argument("graph_from_edges: node id out of range");
        if (u == v) throw std::invalid_argument("graph_from_edges: self-loop");
        if (u > v) std::swap(u, v);
        unique.insert({u, v});
    }
    for (auto [u, v] : unique) {
        g.edges.emplace_back(u, v);
        g.neighbors[u].push_back(v);
        g.neighbors[v].push_back(u);
    }
    for (auto& nb : g.neighbors) std::sort(nb.begin(), nb.end());
    return g;
}

AdjacencyGraph read_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int max_id = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw std::invalid_argument("edge list: malformed line: " + line);
        edges.emplace_back(u, v);
        max_id = std::max({max_id, u, v});
    }
    if (max_id < 1) throw std::invalid_argument("edge list: need at least one edge");
    return graph_from_edges(max_id + 1, edges);
}

AdjacencyGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return read_edge_list(in);
}

void write_edge_list(const AdjacencyGraph& graph, std::ostream& out) {
    for (const auto& [u, v] : graph.edges) out << u << ' ' << v << '\n';
}

}  // namespace ebcache
