#include "ebcache/fixtures.hpp"

#include <stdexcept>

namespace ebcache {

ExampleFixture five_node_example(double q1) {
    if (!(q1 > 0.0) || !(q1 < 1.0)) {
        throw std::invalid_argument("five_node_example: q1 must lie in (0, 1)");
    }
    ExampleFixture fx;
    fx.graph = graph_from_edges(5, {{0, 1}, {0, 4}, {1, 2}, {2, 4}, {3, 4}});
    fx.stats = path_stats(fx.graph);

    fx.catalog.content_count = 2;
    fx.catalog.zipf_beta = 0.0;
    fx.catalog.cache_size = 1;
    fx.catalog.popularity = {q1, 1.0 - q1};

    fx.cache = CachePlan::zeros(5, 2);
    fx.cache.set(0, 1, true);
    for (int i = 1; i < 5; ++i) fx.cache.set(i, 0, true);

    fx.delivery = DeliveryPlan::zeros(5, 2);
    fx.delivery.set(1, 0, 0, true);  // node 0 fetches content 0 from node 1
    for (int i = 1; i < 5; ++i) fx.delivery.set(i, 0, i, true);
    for (int j = 0; j < 5; ++j) fx.delivery.set(0, 1, j, true);

    fx.profile.lambda = {0.1, 0.2, 0.3, 0.4, 0.5};
    return fx;
}

}  // namespace ebcache
