// lp.hpp — dense bounded-variable primal simplex.
//
// Scope: the small LPs assembled by the optimizer (up to a few thousand
// variables). Minimization form with per-variable bounds; rows may be <=, =,
// or >=. Two-phase start; Dantzig pricing that degrades to Bland's rule after
// a degenerate stall, which guarantees termination. A solver instance can be
// re-optimized with a new objective from the current basis, which is what the
// penalty iteration does on every step.
#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace ebcache {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { LessEq, Equal, GreaterEq };

struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
        RowSense sense = RowSense::LessEq;
        double rhs = 0.0;
    };

    int num_vars = 0;
    std::vector<double> objective;  // minimize c^T x
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;

    int add_variable(double lo, double hi, double cost);
    void add_row(std::vector<std::pair<int, double>> coeffs, RowSense sense, double rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    std::vector<double> x;       // structural variables only
    double objective = 0.0;
    long pivots = 0;
};

class SimplexSolver {
public:
    explicit SimplexSolver(const LinearProgram& lp);

    // Two-phase solve from a cold start.
    LpSolution solve();

    // Re-optimize with a new objective over the same constraints, warm from
    // the current (primal-feasible) basis. Requires a prior successful solve.
    LpSolution resolve(const std::vector<double>& objective);

    long total_pivots() const { return total_pivots_; }

private:
    int m_ = 0;           // rows
    int n_ = 0;           // all columns: structural + slacks + artificials
    int structural_ = 0;  // structural column count
    int first_artificial_ = 0;

    std::vector<double> tableau_;   // (m) rows of n columns: B^-1 * A
    std::vector<double> basic_val_; // current values of basic variables
    std::vector<double> cost_row_;  // reduced costs for the active objective
    std::vector<double> lower_, upper_, cost_;
    std::vector<int> basis_;        // basis_[r] = column basic in row r
    std::vector<int> position_;     // position_[col] = row if basic, else -1
    std::vector<char> at_upper_;    // nonbasic rest position
    std::vector<double> value_;     // current value per column
    bool has_basis_ = false;
    long total_pivots_ = 0;

    double& t(int row, int col) { return tableau_[static_cast<std::size_t>(row) * n_ + col]; }
    const double& t(int row, int col) const {
        return tableau_[static_cast<std::size_t>(row) * n_ + col];
    }

    void load_costs(const std::vector<double>& structural_cost);
    void recompute_reduced_costs();
    LpStatus iterate(long max_pivots, long& pivots);
    void pivot(int leaving_row, int entering_col);
    LpSolution extract(LpStatus status, long pivots) const;
    double current_objective() const;
};

}  // namespace ebcache
