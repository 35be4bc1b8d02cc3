#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pa/pa.hpp"

namespace pa::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick_count(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Alphabet letters(std::size_t k, char first = 'a') {
    Alphabet a;
    for (std::size_t i = 0; i < k; ++i) a.push_back(std::string(1, static_cast<char>(first + i)));
    return a;
}

// with probability `sparsity` an entry is zeroed before normalizing (at least one survives)
inline Vec random_distribution(Rng& rng, std::size_t n, double sparsity = 0.0) {
    Vec v(n);
    double s = 0.0;
    for (auto& x : v) {
        x = uniform(rng) < sparsity ? 0.0 : uniform(rng, 0.05, 1.0);
        s += x;
    }
    if (s == 0.0) {
        v[pick_count(rng, 0, n - 1)] = 1.0;
        return v;
    }
    for (auto& x : v) x /= s;
    return v;
}

inline Matrix random_stochastic(Rng& rng, std::size_t rows, std::size_t cols, double sparsity = 0.0) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) m.set_row(i, random_distribution(rng, cols, sparsity));
    return m;
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
    return m;
}

inline Vec random_vec(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    Vec v(n);
    for (auto& x : v) x = uniform(rng, lo, hi);
    return v;
}

inline MoorePA random_moore(Rng& rng, std::size_t n, std::size_t k, double sparsity = 0.0) {
    MoorePA a = make_moore_pa(letters(k), n);
    for (auto& m : a.trans) m = random_stochastic(rng, n, n, sparsity);
    a.initial = random_distribution(rng, n);
    a.lambda = random_vec(rng, n, 0.0, 1.0);
    return a;
}

// joint kernel: for each (x, s) a distribution over (y, s') pairs
inline GeneralPA random_general(Rng& rng, std::size_t n, std::size_t kx, std::size_t ky, double sparsity = 0.0) {
    GeneralPA a = make_general_pa(letters(kx, 'a'), letters(ky, 'p'), n);
    for (Symbol x = 0; x < kx; ++x)
        for (std::size_t s = 0; s < n; ++s) {
            const Vec d = random_distribution(rng, ky * n, sparsity);
            for (Symbol y = 0; y < ky; ++y)
                for (std::size_t t = 0; t < n; ++t) a.at(x, y)(s, t) = d[y * n + t];
        }
    a.initial = random_distribution(rng, n);
    return a;
}

inline LinearAutomaton random_la(Rng& rng, std::size_t n, std::size_t k, double scale = 0.8) {
    LinearAutomaton l = make_la(letters(k), n);
    l.initial = random_vec(rng, n);
    for (auto& m : l.trans) m = random_matrix(rng, n, n, -scale, scale);
    l.output = random_vec(rng, n);
    return l;
}

inline StringFunctionTable random_table(Rng& rng, const Alphabet& x, std::size_t depth) {
    StringFunctionTable t(x, depth);
    for (auto& v : t.values) v = uniform(rng, -1.0, 1.0);
    return t;
}

inline MoorePA cantor() {
    MoorePA a = make_moore_pa({"0", "2"}, 2);
    a.trans[0] = Matrix{{1.0, 0.0}, {2.0 / 3.0, 1.0 / 3.0}};
    a.trans[1] = Matrix{{1.0 / 3.0, 2.0 / 3.0}, {0.0, 1.0}};
    a.initial = {1.0, 0.0};
    a.lambda = {0.0, 1.0};
    return a;
}

inline GeneralPA rabin() {
    GeneralPA a = make_general_pa({"x"}, {"y", "z"}, 2);
    a.at(0, 0) = Matrix{{0.5, 0.25}, {0.0, 0.5}};
    a.at(0, 1) = Matrix{{0.25, 0.0}, {0.25, 0.25}};
    a.initial = {1.0, 0.0};
    return a;
}

inline MoorePA mixing() {
    MoorePA a = make_moore_pa({"x"}, 2);
    a.trans[0] = Matrix{{0.9, 0.1}, {0.1, 0.9}};
    a.initial = {1.0, 0.0};
    a.lambda = {1.0, 0.0};
    return a;
}

inline LinearAutomaton geometric(double q = 0.5) {
    LinearAutomaton l = make_la({"x"}, 1);
    l.initial = {1.0};
    l.trans[0] = Matrix{{q}};
    l.output = {1.0};
    return l;
}

// f = chi_x over the given alphabet
inline LinearAutomaton chi_letter(const Alphabet& x, Symbol letter) {
    LinearAutomaton l = make_la(x, 2);
    l.initial = {1.0, 0.0};
    l.trans[letter] = Matrix{{0.0, 1.0}, {0.0, 0.0}};
    l.output = {0.0, 1.0};
    return l;
}

// DFA over {0, 2} accepting the words that end in 2
inline Dfa ends_in_2() {
    Dfa d;
    d.inputs = {"0", "2"};
    d.start = 0;
    d.delta = {{0, 1}, {0, 1}};
    d.accepting = {false, true};
    return d;
}

inline double max_table_gap(const StringFunctionTable& a, const StringFunctionTable& b) {
    double gap = 0.0;
    const std::size_t n = std::min(a.values.size(), b.values.size());
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::fabs(a.values[i] - b.values[i]));
    return gap;
}

// Independent oracle for "row s is a convex combination of the other rows":
// brute force over a grid on the simplex of weights (two other rows only).
inline double grid_convex_residual(const Matrix& rows, std::size_t s, double step = 1e-3) {
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < rows.rows(); ++i)
        if (i != s) others.push_back(i);
    if (others.size() != 2) throw std::invalid_argument("grid oracle handles three rows");
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / step));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= steps; ++i) {
        const double w = static_cast<double>(i) / static_cast<double>(steps);
        double r = 0.0;
        for (std::size_t j = 0; j < rows.cols(); ++j)
            r = std::max(r, std::fabs(w * rows(others[0], j) + (1.0 - w) * rows(others[1], j) - rows(s, j)));
        best = std::min(best, r);
    }
    return best;
}

}  // namespace pa::testing
