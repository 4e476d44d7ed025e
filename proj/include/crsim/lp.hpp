#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace crsim {

// Maximize objective . x subject to row constraints and finite box bounds.
struct LinearProgram {
    struct Row {
        std::vector<double> coeffs;
        char relation = '<';  // '<' means <=, '=' means equality
        double rhs = 0.0;
    };

    int num_vars = 0;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;

    int add_variable(double lo, double hi, double obj) {
        lower.push_back(lo);
        upper.push_back(hi);
        objective.push_back(obj);
        return num_vars++;
    }

    void add_row(std::vector<double> coeffs, char relation, double rhs) {
        rows.push_back(Row{std::move(coeffs), relation, rhs});
    }
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    std::vector<double> x;
    double objective = 0.0;
};

// Dense two-phase primal simplex.  Bland's rule everywhere: entering column
// is the lowest eligible index, ties in the ratio test go to the row whose
// basic variable has the lowest index.  Deterministic and cycle-free; fine
// for the problem sizes here (tens of variables).
class SimplexSolver {
public:
    static constexpr double kEps = 1e-9;

    explicit SimplexSolver(const LinearProgram& lp) : lp_(lp) {
        validate();
        build();
    }

    LpResult solve() {
        LpResult result;
        if (!phase1()) {
            result.status = LpResult::Status::infeasible;
            return result;
        }
        if (!phase2()) {
            result.status = LpResult::Status::unbounded;
            return result;
        }
        result.status = LpResult::Status::optimal;
        result.x.assign(static_cast<std::size_t>(lp_.num_vars), 0.0);
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < lp_.num_vars)
                result.x[static_cast<std::size_t>(basis_[i])] = rhs_[i];
        for (int j = 0; j < lp_.num_vars; ++j)
            result.x[static_cast<std::size_t>(j)] +=
                lp_.lower[static_cast<std::size_t>(j)];
        result.objective = 0.0;
        for (int j = 0; j < lp_.num_vars; ++j)
            result.objective += lp_.objective[static_cast<std::size_t>(j)] *
                                result.x[static_cast<std::size_t>(j)];
        return result;
    }

private:
    void validate() const {
        if (lp_.num_vars <= 0) throw std::invalid_argument("empty program");
        for (int j = 0; j < lp_.num_vars; ++j) {
            const auto js = static_cast<std::size_t>(j);
            if (!std::isfinite(lp_.lower[js]) || !std::isfinite(lp_.upper[js]))
                throw std::invalid_argument("variable bounds must be finite");
            if (lp_.lower[js] > lp_.upper[js])
                throw std::invalid_argument("variable bounds cross");
            if (!std::isfinite(lp_.objective[js]))
                throw std::invalid_argument("objective must be finite");
        }
        for (const auto& row : lp_.rows) {
            if (static_cast<int>(row.coeffs.size()) != lp_.num_vars)
                throw std::invalid_argument("row width mismatch");
            if (row.relation != '<' && row.relation != '=')
                throw std::invalid_argument("row relation must be '<' or '='");
            for (double c : row.coeffs)
                if (!std::isfinite(c))
                    throw std::invalid_argument("row coefficients must be finite");
            if (!std::isfinite(row.rhs))
                throw std::invalid_argument("row rhs must be finite");
        }
    }

    // Shift to u = x - lower >= 0; upper bounds become explicit rows.
    void build() {
        const auto n = static_cast<std::size_t>(lp_.num_vars);
        std::vector<LinearProgram::Row> rows = lp_.rows;
        for (auto& row : rows)
            for (std::size_t j = 0; j < n; ++j)
                row.rhs -= row.coeffs[j] * lp_.lower[j];
        for (std::size_t j = 0; j < n; ++j) {
            LinearProgram::Row bound;
            bound.coeffs.assign(n, 0.0);
            bound.coeffs[j] = 1.0;
            bound.relation = '<';
            bound.rhs = lp_.upper[j] - lp_.lower[j];
            rows.push_back(bound);
        }

        const std::size_t m = rows.size();
        std::size_t extra = 0;  // slack and surplus columns
        for (const auto& row : rows) extra += (row.relation == '<') ? 1 : 0;
        std::size_t surplus = 0;
        for (const auto& row : rows)
            if (row.relation == '<' && row.rhs < 0.0) ++surplus;
        // Columns: structural | slack/surplus | artificials.
        num_cols_ = n + extra + surplus;
        std::size_t art_count = 0;
        for (const auto& row : rows)
            if (row.relation == '=' || row.rhs < 0.0) ++art_count;
        first_art_ = num_cols_;
        num_cols_ += art_count;

        tab_.assign(m, std::vector<double>(num_cols_, 0.0));
        rhs_.assign(m, 0.0);
        basis_.assign(m, -1);

        std::size_t slack_col = n;
        std::size_t art_col = first_art_;
        for (std::size_t i = 0; i < m; ++i) {
            double sign = 1.0;
            if (rows[i].rhs < 0.0) sign = -1.0;
            for (std::size_t j = 0; j < n; ++j)
                tab_[i][j] = sign * rows[i].coeffs[j];
            rhs_[i] = sign * rows[i].rhs;
            if (rows[i].relation == '<') {
                tab_[i][slack_col] = sign;  // surplus when the row was flipped
                if (sign > 0.0) {
                    basis_[i] = static_cast<int>(slack_col);
                } else {
                    tab_[i][art_col] = 1.0;
                    basis_[i] = static_cast<int>(art_col);
                    ++art_col;
                }
                ++slack_col;
            } else {
                tab_[i][art_col] = 1.0;
                basis_[i] = static_cast<int>(art_col);
                ++art_col;
            }
        }
    }

    // Reduced cost of column j under cost vector c (indexed over columns).
    double reduced_cost(const std::vector<double>& c, std::size_t j) const {
        double r = c[j];
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            const double cb = c[static_cast<std::size_t>(basis_[i])];
            if (cb != 0.0) r -= cb * tab_[i][j];
        }
        return r;
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = tab_[row][col];
        for (auto& v : tab_[row]) v /= p;
        rhs_[row] /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == row) continue;
            const double f = tab_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < num_cols_; ++j)
                tab_[i][j] -= f * tab_[row][j];
            rhs_[i] -= f * rhs_[row];
        }
        basis_[row] = static_cast<int>(col);
    }

    // Returns false on unboundedness.
    bool iterate(const std::vector<double>& c, bool allow_artificial) {
        for (std::size_t iter = 0; iter < 200000; ++iter) {
            std::size_t enter = num_cols_;
            const std::size_t limit = allow_artificial ? num_cols_ : first_art_;
            for (std::size_t j = 0; j < limit; ++j) {
                bool basic = false;
                for (int b : basis_)
                    if (static_cast<std::size_t>(b) == j) { basic = true; break; }
                if (basic) continue;
                if (reduced_cost(c, j) > kEps) { enter = j; break; }
            }
            if (enter == num_cols_) return true;  // optimal

            std::size_t leave = tab_.size();
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                if (tab_[i][enter] <= kEps) continue;
                const double ratio = rhs_[i] / tab_[i][enter];
                if (leave == tab_.size() || ratio < best_ratio - kEps ||
                    (ratio < best_ratio + kEps && basis_[i] < basis_[leave]))
                    { leave = i; best_ratio = ratio; }
            }
            if (leave == tab_.size()) return false;  // unbounded
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex iteration limit exceeded");
    }

    bool phase1() {
        if (first_art_ == num_cols_) return true;  // already feasible basis
        std::vector<double> c(num_cols_, 0.0);
        for (std::size_t j = first_art_; j < num_cols_; ++j) c[j] = -1.0;
        iterate(c, true);
        double infeas = 0.0;
        for (std::size_t i = 0; i < tab_.size(); ++i)
            if (static_cast<std::size_t>(basis_[i]) >= first_art_)
                infeas += rhs_[i];
        if (infeas > 1e-7) return false;
        // Pivot leftover zero-level artificials out where possible.
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (static_cast<std::size_t>(basis_[i]) < first_art_) continue;
            for (std::size_t j = 0; j < first_art_; ++j)
                if (std::fabs(tab_[i][j]) > kEps) { pivot(i, j); break; }
        }
        return true;
    }

    bool phase2() {
        std::vector<double> c(num_cols_, 0.0);
        for (int j = 0; j < lp_.num_vars; ++j)
            c[static_cast<std::size_t>(j)] =
                lp_.objective[static_cast<std::size_t>(j)];
        return iterate(c, false);
    }

    const LinearProgram& lp_;
    std::vector<std::vector<double>> tab_;
    std::vector<double> rhs_;
    std::vector<int> basis_;
    std::size_t num_cols_ = 0;
    std::size_t first_art_ = 0;
};

inline LpResult solve_lp(const LinearProgram& lp) {
    return SimplexSolver(lp).solve();
}

// Piecewise-linear upper envelope of log(x) on [lo, hi]: tangents at evenly
// spaced points.  Tangent at p is x/p + log(p) - 1, which touches log at p
// and dominates it elsewhere by concavity.
struct LogEnvelope {
    struct Tangent {
        double point = 1.0;
        double slope = 1.0;
        double intercept = -1.0;
    };

    double lo = 1.0;
    double hi = 1.0;
    std::vector<Tangent> tangents;

    double value(double x) const {
        double v = tangents.front().slope * x + tangents.front().intercept;
        for (std::size_t t = 1; t < tangents.size(); ++t)
            v = std::min(v, tangents[t].slope * x + tangents[t].intercept);
        return v;
    }
};

inline LogEnvelope log_envelope(double lo, double hi, int n_tangents = 8) {
    if (lo <= 0.0 || hi < lo)
        throw std::invalid_argument("envelope interval must satisfy 0 < lo <= hi");
    if (n_tangents < 1) throw std::invalid_argument("need at least one tangent");
    LogEnvelope env;
    env.lo = lo;
    env.hi = hi;
    const int count = (hi == lo) ? 1 : std::max(2, n_tangents);
    for (int t = 0; t < count; ++t) {
        const double frac =
            count == 1 ? 0.0
                       : static_cast<double>(t) / static_cast<double>(count - 1);
        const double p = lo + frac * (hi - lo);
        env.tangents.push_back({p, 1.0 / p, std::log(p) - 1.0});
    }
    return env;
}

} // namespace crsim
