#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ebcache/phy.hpp"
#include "ebcache/topology.hpp"

using namespace ebcache;

namespace {

// Three collinear nodes 0 - 1 - 2 spaced 10 apart, chained by edges. For a
// 0 -> 1 transmission, interferer 2 sits at the same distance from the
// receiver as the transmitter, so a subcarrier collision always breaks the
// 3 dB threshold while a clean trial always clears it: the link probability
// is exactly the no-collision probability 1 - 1/m.
struct ChainSetup {
    NodeLayout layout;
    AdjacencyGraph graph;
};

ChainSetup chain() {
    ChainSetup s;
    s.layout.region_side = 20.0;
    s.layout.positions = {{0.0, 0.0}, {10.0, 0.0}, {20.0, 0.0}};
    s.graph = graph_from_edges(3, {{0, 1}, {1, 2}});
    return s;
}

PhyConfig chain_config(int subcarriers) {
    PhyConfig cfg;
    cfg.subcarriers = subcarriers;
    cfg.trials = 50000;
    cfg.seed = 11;
    return cfg;
}

}  // namespace

TEST_CASE("decibel conversions") {
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(db_to_linear(-10.0) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-12));
    for (double db : {-7.0, 0.0, 3.0, 12.5}) CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-12));
}

TEST_CASE("fixed profiles validate and clamp") {
    const PhyProfile scalar = fixed_profile(3, 0.8, 2.0);
    REQUIRE(scalar.p.size() == 3);
    for (double v : scalar.p) CHECK(v == 0.8);
    CHECK(scalar.rate == 2.0);
    CHECK(scalar.links.empty());

    const PhyProfile listed = fixed_profile(2, std::vector<double>{0.0, 1.0}, 1.0);
    CHECK(listed.p[0] == doctest::Approx(1e-6));  // zero clamps to the floor
    CHECK(listed.p[1] == 1.0);

    CHECK_THROWS_AS(fixed_profile(2, std::vector<double>{0.5}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fixed_profile(1, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fixed_profile(1, -0.1, 1.0), std::invalid_argument);
}

TEST_CASE("configuration guards") {
    const ChainSetup s = chain();
    PhyConfig cfg = chain_config(4);
    cfg.trials = 10;
    CHECK_THROWS_AS(link_sdp(s.layout, s.graph, cfg, 0, 1), std::invalid_argument);
    cfg = chain_config(0);
    CHECK_THROWS_AS(link_sdp(s.layout, s.graph, cfg, 0, 1), std::invalid_argument);
    cfg = chain_config(4);
    cfg.pathloss_exponent = 2.0;
    CHECK_THROWS_AS(link_sdp(s.layout, s.graph, cfg, 0, 1), std::invalid_argument);
    cfg = chain_config(4);
    cfg.rate = 0.0;
    CHECK_THROWS_AS(node_sdp(s.layout, s.graph, cfg), std::invalid_argument);
    cfg = chain_config(4);
    CHECK_THROWS_AS(link_sdp(s.layout, s.graph, cfg, 0, 2), std::invalid_argument);  // not an edge
}

TEST_CASE("isolated link with ample margin always succeeds") {
    NodeLayout layout;
    layout.region_side = 10.0;
    layout.positions = {{0.0, 0.0}, {10.0, 0.0}};
    const AdjacencyGraph graph = graph_from_edges(2, {{0, 1}});
    PhyConfig cfg = chain_config(1);
    // 20 dBm over four decades of pathloss is -20 dBm received, 100 dB above
    // the noise floor: every trial clears the 3 dB threshold.
    CHECK(link_sdp(layout, graph, cfg, 0, 1) == 1.0);
    // Raising the noise floor to -10 dBm puts the threshold 13 dB above the
    // received power, so every trial fails.
    cfg.noise_dbm = -10.0;
    CHECK(link_sdp(layout, graph, cfg, 0, 1) == 0.0);
}

TEST_CASE("collision-limited link matches the closed-form collision rate") {
    const ChainSetup s = chain();
    double previous = -1.0;
    for (int m : {1, 2, 4, 8}) {
        const PhyConfig cfg = chain_config(m);
        const double p = link_sdp(s.layout, s.graph, cfg, 0, 1);
        const double expected = 1.0 - 1.0 / m;
        CAPTURE(m);
        CHECK(std::abs(p - expected) < 0.02);
        CHECK(p >= previous);  // more subcarriers, fewer collisions
        previous = p;
    }
}

TEST_CASE("node probabilities average the outgoing links") {
    const ChainSetup s = chain();
    const PhyConfig cfg = chain_config(4);
    const PhyProfile profile = node_sdp(s.layout, s.graph, cfg);
    REQUIRE(profile.p.size() == 3);
    // Interior transmissions 1 -> 0 and 1 -> 2 have the interferer twice as
    // far away as the signal (12 dB margin), so they always succeed.
    CHECK(profile.link(1, 0) == 1.0);
    CHECK(profile.link(1, 2) == 1.0);
    CHECK(profile.p[1] == 1.0);
    // Edge nodes carry the collision-limited link only.
    CHECK(std::abs(profile.p[0] - 0.75) < 0.02);
    CHECK(std::abs(profile.p[2] - 0.75) < 0.02);
    CHECK(profile.p[0] == profile.link(0, 1));
    CHECK_THROWS_AS(profile.link(0, 2), std::invalid_argument);
    CHECK(profile.rate == cfg.rate);
}

TEST_CASE("estimates are deterministic in the seed") {
    const ChainSetup s = chain();
    PhyConfig cfg = chain_config(4);
    const PhyProfile a = node_sdp(s.layout, s.graph, cfg);
    const PhyProfile b = node_sdp(s.layout, s.graph, cfg);
    CHECK(a.p == b.p);
    CHECK(a.link_p == b.link_p);
    cfg.seed = 12;
    const PhyProfile c = node_sdp(s.layout, s.graph, cfg);
    CHECK(a.p != c.p);  // the collision-limited entries move with the seed
}
