#include <doctest.h>

#include <cmath>
#include <vector>

#include "ebcache/lp.hpp"

using namespace ebcache;

TEST_CASE("simple maximization over the unit simplex") {
    LinearProgram lp;
    const int x = lp.add_variable(0.0, 1.0, -1.0);
    const int y = lp.add_variable(0.0, 1.0, -1.0);
    lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::LessEq, 1.0);
    SimplexSolver solver(lp);
    const LpSolution sol = solver.solve();
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sol.x[x] + sol.x[y] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("greater-equal rows push variables up") {
    LinearProgram lp;
    const int x = lp.add_variable(0.0, 10.0, 1.0);
    lp.add_row({{x, 1.0}}, RowSense::GreaterEq, 3.0);
    SimplexSolver solver(lp);
    const LpSolution sol = solver.solve();
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.x[x] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("conflicting bound and row report infeasibility") {
    LinearProgram lp;
    const int x = lp.add_variable(0.0, 2.0, 1.0);
    lp.add_row({{x, 1.0}}, RowSense::GreaterEq, 3.0);
    SimplexSolver solver(lp);
    CHECK(solver.solve().status == LpStatus::Infeasible);
}

TEST_CASE("missing upper bound with negative cost is unbounded") {
    LinearProgram lp;
    lp.add_variable(0.0, kLpInfinity, -1.0);
    SimplexSolver solver(lp);
    CHECK(solver.solve().status == LpStatus::Unbounded);
}

TEST_CASE("equality rows hold exactly") {
    LinearProgram lp;
    const int x = lp.add_variable(0.0, 3.0, 1.0);
    const int y = lp.add_variable(0.0, 3.0, 2.0);
    lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::Equal, 2.0);
    SimplexSolver solver(lp);
    const LpSolution sol = solver.solve();
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sol.x[x] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sol.x[y] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("bounds-only problems settle at the cheap ends") {
    LinearProgram lp;
    const int x = lp.add_variable(1.0, 4.0, 2.0);
    const int y = lp.add_variable(-2.0, 5.0, -3.0);
    SimplexSolver solver(lp);
    const LpSolution sol = solver.solve();
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.x[x] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.x[y] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(sol.objective == doctest::Approx(-13.0).epsilon(1e-12));
}

TEST_CASE("binding mix of senses") {
    LinearProgram lp;
    const int x = lp.add_variable(0.0, 3.0, 2.0);
    const int y = lp.add_variable(0.0, 3.0, 3.0);
    lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::GreaterEq, 4.0);
    SimplexSolver solver(lp);
    const LpSolution sol = solver.solve();
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(sol.x[x] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.x[y] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("redundant rows (degenerate vertices) do not stall the solver") {
    LinearProgram lp;
    const int x = lp.add_variable(0.0, kLpInfinity, -1.0);
    const int y = lp.add_variable(0.0, kLpInfinity, -1.0);
    lp.add_row({{x, 1.0}}, RowSense::LessEq, 1.0);
    lp.add_row({{y, 1.0}}, RowSense::LessEq, 1.0);
    lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::LessEq, 2.0);  // redundant at the optimum
    lp.add_row({{x, 1.0}, {y, 2.0}}, RowSense::LessEq, 3.0);  // also tight at (1,1)
    SimplexSolver solver(lp);
    const LpSolution sol = solver.solve();
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(sol.x[x] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.x[y] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("small transportation problem reaches the known optimum") {
    // Supplies (10, 20), demands (5, 15, 10), costs {{2,4,5},{3,1,7}}.
    // The optimal shipping plan costs 80.
    LinearProgram lp;
    const double cost[2][3] = {{2.0, 4.0, 5.0}, {3.0, 1.0, 7.0}};
    int var[2][3];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) var[i][j] = lp.add_variable(0.0, kLpInfinity, cost[i][j]);
    const double supply[2] = {10.0, 20.0};
    const double demand[3] = {5.0, 15.0, 10.0};
    for (int i = 0; i < 2; ++i) {
        std::vector<std::pair<int, double>> row;
        for (int j = 0; j < 3; ++j) row.emplace_back(var[i][j], 1.0);
        lp.add_row(std::move(row), RowSense::Equal, supply[i]);
    }
    for (int j = 0; j < 3; ++j) {
        std::vector<std::pair<int, double>> col;
        for (int i = 0; i < 2; ++i) col.emplace_back(var[i][j], 1.0);
        lp.add_row(std::move(col), RowSense::Equal, demand[j]);
    }
    SimplexSolver solver(lp);
    const LpSolution sol = solver.solve();
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(80.0).epsilon(1e-10));
}

TEST_CASE("warm resolve matches a cold solve for each objective") {
    // Shared polytope: x + y <= 4, x - y <= 1, x in [0,3], y in [0,3].
    auto build = [] {
        LinearProgram lp;
        lp.add_variable(0.0, 3.0, 0.0);
        lp.add_variable(0.0, 3.0, 0.0);
        lp.add_row({{0, 1.0}, {1, 1.0}}, RowSense::LessEq, 4.0);
        lp.add_row({{0, 1.0}, {1, -1.0}}, RowSense::LessEq, 1.0);
        return lp;
    };
    const std::vector<std::vector<double>> objectives = {
        {-1.0, 0.0}, {0.0, -1.0}, {-1.0, -1.0}, {1.0, -2.0}, {2.0, 1.0}};

    LinearProgram warm_lp = build();
    warm_lp.objective = objectives.front();
    SimplexSolver warm(warm_lp);
    LpSolution warm_sol = warm.solve();
    REQUIRE(warm_sol.status == LpStatus::Optimal);

    for (const auto& objective : objectives) {
        warm_sol = warm.resolve(objective);
        REQUIRE(warm_sol.status == LpStatus::Optimal);

        LinearProgram cold_lp = build();
        cold_lp.objective = objective;
        SimplexSolver cold(cold_lp);
        const LpSolution cold_sol = cold.solve();
        REQUIRE(cold_sol.status == LpStatus::Optimal);
        CHECK(warm_sol.objective == doctest::Approx(cold_sol.objective).epsilon(1e-10));

        // The warm solution must stay feasible for the shared polytope.
        CHECK(warm_sol.x[0] + warm_sol.x[1] <= 4.0 + 1e-9);
        CHECK(warm_sol.x[0] - warm_sol.x[1] <= 1.0 + 1e-9);
        for (double v : warm_sol.x) {
            CHECK(v >= -1e-9);
            CHECK(v <= 3.0 + 1e-9);
        }
    }
    CHECK(warm.total_pivots() > 0);
}
