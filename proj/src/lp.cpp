#include "ebcache/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebcache {

namespace {
constexpr double kFeasTol = 1e-9;
constexpr double kOptTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kPhaseOneTol = 1e-7;
}  // namespace

int LinearProgram::add_variable(double lo, double hi, double cost) {
    lower.push_back(lo);
    upper.push_back(hi);
    objective.push_back(cost);
    return num_vars++;
}

void LinearProgram::add_row(std::vector<std::pair<int, double>> coeffs, RowSense sense,
                            double rhs) {
    for (const auto& [var, coeff] : coeffs) {
        (void)coeff;
        if (var < 0 || var >= num_vars)
            throw std::invalid_argument("LinearProgram::add_row: variable out of range");
    }
    rows.push_back({std::move(coeffs), sense, rhs});
}

SimplexSolver::SimplexSolver(const LinearProgram& lp) {
    m_ = static_cast<int>(lp.rows.size());
    structural_ = lp.num_vars;

    lower_ = lp.lower;
    upper_ = lp.upper;
    cost_.assign(structural_, 0.0);

    // Slack columns, one per inequality row.
    std::vector<int> slack_of(m_, -1);
    for (int r = 0; r < m_; ++r) {
        const RowSense sense = lp.rows[r].sense;
        if (sense == RowSense::Equal) continue;
        slack_of[r] = static_cast<int>(lower_.size());
        if (sense == RowSense::LessEq) {
            lower_.push_back(0.0);
            upper_.push_back(kLpInfinity);
        } else {
            lower_.push_back(-kLpInfinity);
            upper_.push_back(0.0);
        }
        cost_.push_back(0.0);
    }
    first_artificial_ = static_cast<int>(lower_.size());

    // Rest position for every structural/slack column: the finite bound
    // nearest zero (all columns here have at least one finite bound).
    value_.assign(lower_.size(), 0.0);
    at_upper_.assign(lower_.size(), 0);
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        if (std::isfinite(lower_[j])) {
            value_[j] = lower_[j];
        } else {
            value_[j] = upper_[j];
            at_upper_[j] = 1;
        }
    }

    // Row residuals at the rest point decide which rows need artificials.
    std::vector<double> residual(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
        double acc = lp.rows[r].rhs;
        for (const auto& [var, coeff] : lp.rows[r].coeffs) acc -= coeff * value_[var];
        residual[r] = acc;
    }

    basis_.assign(m_, -1);
    std::vector<double> art_sign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
        const RowSense sense = lp.rows[r].sense;
        const bool slack_carries =
            slack_of[r] >= 0 && ((sense == RowSense::LessEq && residual[r] >= -kFeasTol) ||
                                 (sense == RowSense::GreaterEq && residual[r] <= kFeasTol));
        if (slack_carries) {
            basis_[r] = slack_of[r];
        } else {
            basis_[r] = static_cast<int>(lower_.size());
            lower_.push_back(0.0);
            upper_.push_back(kLpInfinity);
            cost_.push_back(0.0);
            value_.push_back(0.0);
            at_upper_.push_back(0);
            art_sign[r] = residual[r] >= 0.0 ? 1.0 : -1.0;
        }
    }
    n_ = static_cast<int>(lower_.size());

    tableau_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
    basic_val_.assign(m_, 0.0);
    position_.assign(n_, -1);
    for (int r = 0; r < m_; ++r) {
        const double scale = art_sign[r] < 0.0 ? -1.0 : 1.0;
        for (const auto& [var, coeff] : lp.rows[r].coeffs) t(r, var) = scale * coeff;
        if (slack_of[r] >= 0) t(r, slack_of[r]) = scale;
        t(r, basis_[r]) = 1.0;
        position_[basis_[r]] = r;
        basic_val_[r] = basis_[r] >= first_artificial_ && art_sign[r] != 0.0
                            ? std::abs(residual[r])
                            : residual[r];
        value_[basis_[r]] = basic_val_[r];
    }

    // Real structural costs are loaded per phase.
    for (int j = 0; j < structural_; ++j) cost_[j] = lp.objective[j];
    cost_row_.assign(n_, 0.0);
}

void SimplexSolver::load_costs(const std::vector<double>& structural_cost) {
    if (static_cast<int>(structural_cost.size()) != structural_)
        throw std::invalid_argument("SimplexSolver: objective size mismatch");
    for (int j = 0; j < structural_; ++j) cost_[j] = structural_cost[j];
    for (int j = structural_; j < n_; ++j) cost_[j] = 0.0;
}

void SimplexSolver::recompute_reduced_costs() {
    cost_row_.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) cost_row_[j] = cost_[j];
    for (int r = 0; r < m_; ++r) {
        const double cb = cost_[basis_[r]];
        if (cb == 0.0) continue;
        const double* row = &tableau_[static_cast<std::size_t>(r) * n_];
        for (int j = 0; j < n_; ++j) cost_row_[j] -= cb * row[j];
    }
    for (int r = 0; r < m_; ++r) cost_row_[basis_[r]] = 0.0;
}

double SimplexSolver::current_objective() const {
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) {
        const int r = position_[j];
        acc += cost_[j] * (r >= 0 ? basic_val_[r] : value_[j]);
    }
    return acc;
}

LpStatus SimplexSolver::iterate(long max_pivots, long& pivots) {
    bool bland = false;
    long degenerate_run = 0;
    const long stall_limit = 4L * (m_ + 16);

    while (pivots < max_pivots) {
        // Entering column.
        int entering = -1;
        double best_violation = kOptTol;
        for (int j = 0; j < n_; ++j) {
            if (position_[j] >= 0) continue;
            if (lower_[j] == upper_[j]) continue;  // fixed (pinned artificials)
            const double d = cost_row_[j];
            const double violation = at_upper_[j] ? d : -d;
            if (violation > best_violation) {
                entering = j;
                best_violation = violation;
                if (bland) break;  // smallest favorable index
            }
            if (bland && violation > kOptTol) { entering = j; break; }
        }
        if (entering < 0) return LpStatus::Optimal;

        const double dir = at_upper_[entering] ? -1.0 : 1.0;

        // Ratio test: largest step keeping all basic variables in bounds.
        double best_step = kLpInfinity;
        int leaving_row = -1;
        bool leaving_at_upper = false;
        for (int r = 0; r < m_; ++r) {
            const double w = dir * t(r, entering);
            if (std::abs(w) <= kPivotTol) continue;
            const int col = basis_[r];
            double limit;
            bool hits_upper;
            if (w > 0.0) {  // basic value decreases toward its lower bound
                if (!std::isfinite(lower_[col])) continue;
                limit = (basic_val_[r] - lower_[col]) / w;
                hits_upper = false;
            } else {  // basic value increases toward its upper bound
                if (!std::isfinite(upper_[col])) continue;
                limit = (basic_val_[r] - upper_[col]) / w;
                hits_upper = true;
            }
            if (limit < 0.0) limit = 0.0;
            const bool better =
                limit < best_step - 1e-12 ||
                (limit < best_step + 1e-12 && leaving_row >= 0 &&
                 (bland ? col < basis_[leaving_row]
                        : std::abs(w) > std::abs(dir * t(leaving_row, entering))));
            if (better) {
                best_step = limit;
                leaving_row = r;
                leaving_at_upper = hits_upper;
            }
        }
        const double flip_range = upper_[entering] - lower_[entering];
        const bool bound_flip = std::isfinite(flip_range) && flip_range <= best_step;
        if (!bound_flip && leaving_row < 0) return LpStatus::Unbounded;

        const double step = bound_flip ? flip_range : best_step;
        const double delta = dir * step;

        // Move the basic values along the entering direction.
        if (delta != 0.0) {
            for (int r = 0; r < m_; ++r) basic_val_[r] -= t(r, entering) * delta;
        }

        if (bound_flip) {
            at_upper_[entering] = !at_upper_[entering];
            value_[entering] = at_upper_[entering] ? upper_[entering] : lower_[entering];
        } else {
            const int leaving_col = basis_[leaving_row];
            at_upper_[leaving_col] = leaving_at_upper;
            value_[leaving_col] = leaving_at_upper ? upper_[leaving_col] : lower_[leaving_col];
            position_[leaving_col] = -1;

            basic_val_[leaving_row] = value_[entering] + delta;
            basis_[leaving_row] = entering;
            position_[entering] = leaving_row;
            pivot(leaving_row, entering);
        }
        ++pivots;
        ++total_pivots_;

        if (step <= 1e-10) {
            if (++degenerate_run > stall_limit && !bland) {
                bland = true;
                degenerate_run = 0;
            }
        } else {
            degenerate_run = 0;
        }
    }
    return LpStatus::IterationLimit;
}

void SimplexSolver::pivot(int leaving_row, int entering_col) {
    double* prow = &tableau_[static_cast<std::size_t>(leaving_row) * n_];
    const double inv = 1.0 / prow[entering_col];
    for (int j = 0; j < n_; ++j) prow[j] *= inv;
    prow[entering_col] = 1.0;

    for (int r = 0; r < m_; ++r) {
        if (r == leaving_row) continue;
        double* row = &tableau_[static_cast<std::size_t>(r) * n_];
        const double factor = row[entering_col];
        if (factor == 0.0) continue;
        for (int j = 0; j < n_; ++j) row[j] -= factor * prow[j];
        row[entering_col] = 0.0;
    }
    const double cfactor = cost_row_[entering_col];
    if (cfactor != 0.0) {
        for (int j = 0; j < n_; ++j) cost_row_[j] -= cfactor * prow[j];
        cost_row_[entering_col] = 0.0;
    }
}

LpSolution SimplexSolver::extract(LpStatus status, long pivots) const {
    LpSolution sol;
    sol.status = status;
    sol.pivots = pivots;
    sol.x.assign(structural_, 0.0);
    for (int j = 0; j < structural_; ++j) {
        const int r = position_[j];
        sol.x[j] = r >= 0 ? basic_val_[r] : value_[j];
    }
    double obj = 0.0;
    for (int j = 0; j < structural_; ++j) obj += cost_[j] * sol.x[j];
    sol.objective = obj;
    return sol;
}

LpSolution SimplexSolver::solve() {
    const long max_pivots = 20000L + 200L * (static_cast<long>(m_) + n_);
    long pivots = 0;

    const bool needs_phase_one = first_artificial_ < n_;
    if (needs_phase_one) {
        std::vector<double> saved_cost = cost_;
        for (int j = 0; j < n_; ++j) cost_[j] = j >= first_artificial_ ? 1.0 : 0.0;
        recompute_reduced_costs();
        const LpStatus status = iterate(max_pivots, pivots);
        const double infeasibility = current_objective();
        cost_ = saved_cost;
        if (status == LpStatus::IterationLimit) return extract(status, pivots);
        if (infeasibility > kPhaseOneTol) return extract(LpStatus::Infeasible, pivots);

        // Pin artificials at zero; pivot basic ones out where a usable column
        // exists (rows without one are redundant and keep a zero artificial).
        for (int j = first_artificial_; j < n_; ++j) {
            lower_[j] = upper_[j] = 0.0;
            if (position_[j] < 0) value_[j] = 0.0;
        }
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < first_artificial_) continue;
            int replacement = -1;
            for (int j = 0; j < first_artificial_; ++j) {
                if (position_[j] < 0 && std::abs(t(r, j)) > 1e-7) { replacement = j; break; }
            }
            if (replacement < 0) continue;
            const int art = basis_[r];
            position_[art] = -1;
            value_[art] = 0.0;
            at_upper_[art] = 0;
            basis_[r] = replacement;
            position_[replacement] = r;
            basic_val_[r] = value_[replacement];  // zero-valued swap: row stays degenerate
            pivot(r, replacement);
            ++pivots;
            ++total_pivots_;
        }
    }

    recompute_reduced_costs();
    const LpStatus status = iterate(max_pivots, pivots);
    if (status == LpStatus::Optimal) has_basis_ = true;
    return extract(status, pivots);
}

LpSolution SimplexSolver::resolve(const std::vector<double>& objective) {
    if (!has_basis_) throw std::logic_error("SimplexSolver::resolve: no basis; call solve() first");
    load_costs(objective);
    recompute_reduced_costs();
    const long max_pivots = 20000L + 200L * (static_cast<long>(m_) + n_);
    long pivots = 0;
    const LpStatus status = iterate(max_pivots, pivots);
    return extract(status, pivots);
}

}  // namespace ebcache
