// fixtures.hpp — the worked five-node example used across tests and the CLI.
#pragma once

#include "ebcache/content.hpp"
#include "ebcache/topology.hpp"

namespace ebcache {

// Five nodes, edges 0-1, 0-4, 1-2, 2-4, 3-4. Two contents: node 0 caches
// content 1 and provides it to everyone; every other node caches content 0
// and node 0 fetches it from node 1. Request rates grow linearly by node.
struct ExampleFixture {
    AdjacencyGraph graph;
    PathStats stats;
    Catalog catalog;
    CachePlan cache;
    DeliveryPlan delivery;
    RequestProfile profile;
};

// q1 is the popularity of content 0 (content 1 gets 1 - q1).
ExampleFixture five_node_example(double q1 = 0.5);

}  // namespace ebcache
