#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace pa {

// 0/1 matrix; product uses 1 + 1 = 1.
struct BoolPattern {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> bits;

    BoolPattern() = default;
    BoolPattern(std::size_t r, std::size_t c, bool fill = false)
        : rows(r), cols(c), bits(r * c, fill ? 1 : 0) {}

    bool operator()(std::size_t i, std::size_t j) const { return bits[i * cols + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { bits[i * cols + j] = v ? 1 : 0; }

    bool all_ones() const {
        for (auto b : bits)
            if (!b) return false;
        return true;
    }

    static BoolPattern identity(std::size_t n) {
        BoolPattern p(n, n);
        for (std::size_t i = 0; i < n; ++i) p.set(i, i, true);
        return p;
    }

    friend bool operator==(const BoolPattern&, const BoolPattern&) = default;
    friend auto operator<=>(const BoolPattern&, const BoolPattern&) = default;
};

inline BoolPattern bool_pattern(const Matrix& a, const Tolerances& tol = {}) {
    BoolPattern p(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) p.set(i, j, std::fabs(a(i, j)) > tol.zero);
    return p;
}

inline BoolPattern bool_mul(const BoolPattern& p, const BoolPattern& q) {
    if (p.cols != q.rows) throw std::invalid_argument("bool_mul: dimension mismatch");
    BoolPattern r(p.rows, q.cols);
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t k = 0; k < p.cols; ++k) {
            if (!p(i, k)) continue;
            for (std::size_t j = 0; j < q.cols; ++j)
                if (q(k, j)) r.set(i, j, true);
        }
    return r;
}

// Some power is all-ones; Wielandt: it suffices to look up to (d-1)^2 + 1.
inline bool is_primitive(const BoolPattern& p) {
    if (p.rows != p.cols) throw std::invalid_argument("is_primitive: pattern must be square");
    if (p.rows == 0) throw std::invalid_argument("is_primitive: empty pattern");
    const std::size_t d = p.rows;
    const std::size_t limit = (d - 1) * (d - 1) + 1;
    BoolPattern power = p;
    for (std::size_t k = 1; k <= limit; ++k) {
        if (power.all_ones()) return true;
        power = bool_mul(power, p);
    }
    return false;
}

}  // namespace pa
