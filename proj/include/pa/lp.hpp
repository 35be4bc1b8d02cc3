#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace pa {

// minimize objective . x  subject to  a_eq x = b,  x >= 0
struct LpProblem {
    Vec objective;
    Matrix a_eq;
    Vec b;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vec point;
    double objective = 0.0;
};

namespace detail {

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows + 1, cols + 1) {}

    double& at(std::size_t i, std::size_t j) { return t_(i, j); }
    double rhs(std::size_t i) const { return t_(i, n_); }
    double cost(std::size_t j) const { return t_(m_, j); }
    double& cost_ref(std::size_t j) { return t_(m_, j); }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        const double p = t_(r, c);
        for (std::size_t j = 0; j <= n_; ++j) t_(r, j) /= p;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = t_(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_; ++j) t_(i, j) -= f * t_(r, j);
            t_(i, c) = 0.0;
        }
        basis_[r] = c;
    }

    // Bland's rule: lowest-index improving column, lowest-index basic variable on ratio ties.
    // Returns false when the problem is unbounded along an improving direction.
    bool optimize(const std::vector<bool>& allowed, double eps) {
        for (;;) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (allowed[j] && cost(j) < -eps) {
                    enter = j;
                    break;
                }
            if (enter == n_) return true;
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = t_(i, enter);
                if (a <= eps) continue;
                const double ratio = rhs(i) / a;
                if (ratio < best - eps ||
                    (std::fabs(ratio - best) <= eps && leave < m_ && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    void drop_row(std::size_t r) {
        Matrix t(m_, n_ + 1);
        for (std::size_t i = 0, k = 0; i <= m_; ++i) {
            if (i == r) continue;
            for (std::size_t j = 0; j <= n_; ++j) t(k, j) = t_(i, j);
            ++k;
        }
        t_ = std::move(t);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

private:
    std::size_t m_, n_;
    Matrix t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpSolution lp_solve(const LpProblem& p, const Tolerances& tol = {}) {
    const std::size_t m = p.a_eq.rows();
    const std::size_t n = p.objective.size();
    if (p.a_eq.cols() != n || p.b.size() != m)
        throw std::invalid_argument("lp_solve: inconsistent problem dimensions");
    const double eps = 1e-12;

    // columns: n originals, then m artificials
    detail::Tableau tab(m, n + m);
    tab.basis().resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = p.b[i] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * p.a_eq(i, j);
        tab.at(i, n + i) = 1.0;
        tab.at(i, n + m) = sign * p.b[i];
        tab.basis()[i] = n + i;
    }
    // phase 1 reduced costs: minimize the sum of artificials
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += tab.at(i, j);
        tab.cost_ref(j) = -s;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += tab.rhs(i);
    tab.cost_ref(n + m) = -total;

    std::vector<bool> allowed(n + m, true);
    tab.optimize(allowed, eps);
    if (-tab.cost(n + m) > tol.lp) return {LpStatus::Infeasible, {}, 0.0};

    // push artificials out of the basis; rows where that is impossible are redundant
    for (std::size_t i = 0; i < tab.rows();) {
        if (tab.basis()[i] < n) {
            ++i;
            continue;
        }
        std::size_t c = n;
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(tab.at(i, j)) > 1e-9) {
                c = j;
                break;
            }
        if (c == n) {
            tab.drop_row(i);
        } else {
            tab.pivot(i, c);
            ++i;
        }
    }

    // phase 2 costs from the original objective
    for (std::size_t j = 0; j <= n + m; ++j) tab.cost_ref(j) = j < n ? p.objective[j] : 0.0;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        const double cb = tab.cost(tab.basis()[i]);
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= n + m; ++j) tab.cost_ref(j) -= cb * tab.at(i, j);
    }
    for (std::size_t j = n; j < n + m; ++j) allowed[j] = false;
    if (!tab.optimize(allowed, eps)) return {LpStatus::Unbounded, {}, 0.0};

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.point.assign(n, 0.0);
    for (std::size_t i = 0; i < tab.rows(); ++i)
        if (tab.basis()[i] < n) sol.point[tab.basis()[i]] = std::max(0.0, tab.rhs(i));
    sol.objective = dot(p.objective, sol.point);
    return sol;
}

}  // namespace pa
