// topology.hpp — node layouts, Delaunay adjacency, minimum-hop path statistics.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ebcache/rng.hpp"

namespace ebcache {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Uniform node placement inside [0, region_side]^2.
struct NodeLayout {
    std::vector<Point> positions;
    double region_side = 0.0;
    std::uint64_t seed = 0;

    int node_count() const { return static_cast<int>(positions.size()); }
};

// Undirected, connected neighborship graph. Edges are stored once with u < v;
// neighbor lists are sorted ascending.
struct AdjacencyGraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> neighbors;

    bool has_edge(int u, int v) const;
};

// All-pairs minimum-hop distances and shortest-path counts. Pass-through
// counts follow the source-inclusive convention: a path from j to k passes
// through its source j and every intermediate node, never through the
// destination k. The count factors as sigma(j,i)*sigma(i,k) whenever i lies on
// some minimum-hop j->k path, so only the pair tables are stored.
struct PathStats {
    int node_count = 0;
    std::vector<int> hop;                  // row-major [j*n + k]
    std::vector<std::uint64_t> sigma;      // row-major [j*n + k]

    int hops(int j, int k) const { return hop[static_cast<std::size_t>(j) * node_count + k]; }
    std::uint64_t path_count(int j, int k) const {
        return sigma[static_cast<std::size_t>(j) * node_count + k];
    }

    // sigma(j,k,i): number of minimum-hop j->k paths passing through i,
    // source-inclusive. Zero when i == k or when j == k.
    std::uint64_t passthrough(int j, int k, int i) const;

    // sigma(j,k,i) / sigma(j,k).
    double passthrough_ratio(int j, int k, int i) const;
};

// Uniform layout, deterministic for a fixed seed. Throws std::invalid_argument
// for n < 2 or side <= 0.
NodeLayout generate_layout(int n, double side, std::uint64_t seed);

// Delaunay edges of the layout (the dual of the Voronoi cell neighborship).
// Collinear layouts degrade to a chain in coordinate order.
AdjacencyGraph build_adjacency(const NodeLayout& layout);

// Layout + adjacency, retrying with a stepped seed in the (numerically
// degenerate) event that the triangulation comes out disconnected.
std::pair<NodeLayout, AdjacencyGraph> generate_connected_topology(int n, double side,
                                                                  std::uint64_t seed);

// BFS per source. Throws std::runtime_error if the graph is disconnected.
PathStats path_stats(const AdjacencyGraph& graph);

// Classical betweenness b_i: sum over ordered pairs (j,k), j != k, of the
// fraction of minimum-hop paths with i as a strict intermediate.
std::vector<double> classical_betweenness(const PathStats& stats);

// One minimum-hop path from j to k, drawn uniformly over all such paths.
std::vector<int> sample_shortest_path(const PathStats& stats, const AdjacencyGraph& graph,
                                      int j, int k, Rng& rng);

// Edge-list text format: one "u v" pair per line, 0-based node ids.
AdjacencyGraph read_edge_list(std::istream& in);
AdjacencyGraph load_edge_list(const std::string& path);
void write_edge_list(const AdjacencyGraph& graph, std::ostream& out);

// Graph from an explicit edge set (validated: ids in range, no self-loops).
AdjacencyGraph graph_from_edges(int node_count, const std::vector<std::pair<int, int>>& edges);

}  // namespace ebcache
