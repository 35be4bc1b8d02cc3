#pragma once

#include <optional>
#include <vector>

#include "lp.hpp"

namespace pa {

// Row `state` of a basis matrix equals weights . (other rows, in index order).
struct ConvexCertificate {
    std::size_t state = 0;
    Vec weights;
};

inline std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (i != skip) idx.push_back(i);
    return idx;
}

inline double convex_residual(const Matrix& rows, const ConvexCertificate& c) {
    const auto others = all_but(rows.rows(), c.state);
    Vec mix(rows.cols(), 0.0);
    for (std::size_t k = 0; k < others.size(); ++k)
        for (std::size_t j = 0; j < rows.cols(); ++j) mix[j] += c.weights[k] * rows(others[k], j);
    return norm_abs(mix - rows.row(c.state));
}

inline bool valid_certificate(const Matrix& rows, const ConvexCertificate& c, const Tolerances& tol) {
    if (c.state >= rows.rows() || c.weights.size() + 1 != rows.rows()) return false;
    if (!is_distribution(c.weights, tol)) return false;
    return convex_residual(rows, c) <= tol.lp * std::max(1.0, norm_abs(rows));
}

// Is row s a convex combination of the others? Variables: weights x over the other
// rows and slacks y over the columns; x W' + y = W_s, sum x + sum y = 1, minimize sum y.
// Zero optimum means yes. Rows are tried from the highest index down.
inline std::optional<ConvexCertificate> find_convex_row(const Matrix& rows, const Tolerances& tol = {}) {
    const std::size_t n = rows.rows();
    const std::size_t r = rows.cols();
    if (n < 2) return std::nullopt;
    for (std::size_t s = n; s-- > 0;) {
        const auto others = all_but(n, s);
        const std::size_t m = others.size();
        LpProblem lp;
        lp.objective.assign(m + r, 0.0);
        for (std::size_t j = 0; j < r; ++j) lp.objective[m + j] = 1.0;
        lp.a_eq = Matrix(r + 1, m + r);
        lp.b.assign(r + 1, 0.0);
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < m; ++k) lp.a_eq(j, k) = rows(others[k], j);
            lp.a_eq(j, m + j) = 1.0;
            lp.b[j] = rows(s, j);
        }
        for (std::size_t k = 0; k < m + r; ++k) lp.a_eq(r, k) = 1.0;
        lp.b[r] = 1.0;
        const auto sol = lp_solve(lp, tol);
        if (sol.status != LpStatus::Optimal || sol.objective > tol.lp) continue;
        ConvexCertificate c{s, Vec(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(m))};
        if (valid_certificate(rows, c, tol)) return c;
    }
    return std::nullopt;
}

}  // namespace pa
