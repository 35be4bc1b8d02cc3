#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfa.hpp"
#include "general_pa.hpp"

namespace pa {

// Moore automaton with numeric output: (initial, {A^x}, lambda).
struct MoorePA {
    Alphabet inputs;
    std::size_t states = 0;
    std::vector<Matrix> trans;
    Vec initial;
    Vec lambda;

    friend bool operator==(const MoorePA&, const MoorePA&) = default;
};

inline MoorePA make_moore_pa(Alphabet x, std::size_t n) {
    MoorePA a;
    a.inputs = std::move(x);
    a.states = n;
    a.trans.assign(a.inputs.size(), Matrix(n, n));
    a.initial.assign(n, 0.0);
    if (n) a.initial[0] = 1.0;
    a.lambda.assign(n, 0.0);
    return a;
}

inline void validate(const MoorePA& a, const Tolerances& tol = {}) {
    if (a.inputs.empty()) throw std::invalid_argument("empty input alphabet");
    if (a.states == 0) throw std::invalid_argument("automaton has no states");
    if (a.trans.size() != a.inputs.size()) throw std::invalid_argument("expected one matrix per input symbol");
    for (std::size_t x = 0; x < a.trans.size(); ++x) {
        const auto& m = a.trans[x];
        if (m.rows() != a.states || m.cols() != a.states)
            throw std::invalid_argument("transition matrix has wrong size");
        if (!is_stochastic(m, tol))
            throw std::invalid_argument("transition matrix for '" + a.inputs[x] + "' is not stochastic");
    }
    if (a.initial.size() != a.states || !is_distribution(a.initial, tol))
        throw std::invalid_argument("initial vector is not a distribution");
    if (a.lambda.size() != a.states) throw std::invalid_argument("output column has wrong size");
    for (double v : a.lambda)
        if (!std::isfinite(v)) throw std::invalid_argument("output column has non-finite entries");
}

inline Matrix word_matrix(const MoorePA& a, const Word& u) {
    Matrix m = Matrix::identity(a.states);
    for (Symbol x : u) {
        if (x >= a.inputs.size()) throw std::invalid_argument("word_matrix: symbol out of range");
        m = m * a.trans[x];
    }
    return m;
}

inline double avg_reaction(const MoorePA& a, const Vec& xi, const Word& u) {
    Vec row = xi;
    for (Symbol x : u) {
        if (x >= a.inputs.size()) throw std::invalid_argument("avg_reaction: symbol out of range");
        row = row * a.trans[x];
    }
    return dot(row, a.lambda);
}

inline double avg_reaction(const MoorePA& a, const Word& u) { return avg_reaction(a, a.initial, u); }

// rows xi0 A^u for every |u| <= depth, shortlex
inline std::vector<Vec> state_rows(const std::vector<Matrix>& trans, const Vec& initial, std::size_t depth) {
    const std::size_t total = words_up_to(trans.size(), depth);
    std::vector<Vec> rows;
    rows.reserve(total);
    rows.push_back(initial);
    for (std::size_t i = 0; rows.size() < total; ++i)
        for (const auto& m : trans) rows.push_back(rows[i] * m);
    return rows;
}

inline StringFunctionTable avg_table(const MoorePA& a, std::size_t depth) {
    StringFunctionTable t(a.inputs, depth);
    const auto rows = state_rows(a.trans, a.initial, depth);
    for (std::size_t i = 0; i < rows.size(); ++i) t.values[i] = dot(rows[i], a.lambda);
    return t;
}

struct AvgBasisMatrix {
    Matrix columns;          // states x rank, column j is A^{u_j} lambda
    std::vector<Word> tags;
    std::size_t sweeps = 0;
};

inline AvgBasisMatrix avg_basis_matrix(const MoorePA& a, const Tolerances& tol = {}) {
    auto span = grow_span(
        a.lambda, a.inputs.size(), [&](Symbol x, const Vec& v) { return a.trans[x] * v; },
        TagOrder::Prepend, tol.rank);
    AvgBasisMatrix b;
    b.columns = span.vectors.empty() ? Matrix(a.states, 0) : Matrix::from_cols(span.vectors);
    b.tags = std::move(span.tags);
    b.sweeps = span.sweeps;
    return b;
}

inline bool avg_distributions_equivalent(const MoorePA& a, const Vec& xi1, const Vec& xi2,
                                         const Tolerances& tol = {}) {
    const auto b = avg_basis_matrix(a, tol);
    if (b.columns.cols() == 0) return true;
    return rows_agree(xi1 * b.columns, xi2 * b.columns, norm_abs(b.columns), tol);
}

inline bool avg_equivalent(const MoorePA& a1, const MoorePA& a2, const Tolerances& tol = {}) {
    if (a1.inputs != a2.inputs) throw std::invalid_argument("automata have different input alphabets");
    MoorePA c = make_moore_pa(a1.inputs, a1.states + a2.states);
    for (std::size_t x = 0; x < c.inputs.size(); ++x) c.trans[x] = block_diag(a1.trans[x], a2.trans[x]);
    c.lambda = concat(a1.lambda, a2.lambda);
    const Vec xi1 = concat(a1.initial, Vec(a2.states, 0.0));
    const Vec xi2 = concat(Vec(a1.states, 0.0), a2.initial);
    c.initial = xi1;
    return avg_distributions_equivalent(c, xi1, xi2, tol);
}

inline MoorePA restrict_states(const MoorePA& a, const std::vector<std::size_t>& keep) {
    MoorePA r = make_moore_pa(a.inputs, keep.size());
    for (std::size_t x = 0; x < a.inputs.size(); ++x) r.trans[x] = submatrix(a.trans[x], keep, keep);
    r.initial = pick(a.initial, keep);
    r.lambda = pick(a.lambda, keep);
    return r;
}

inline MoorePA reachable_part(const MoorePA& a, const Tolerances& tol = {}) {
    const auto keep = reachable_states(a.trans, a.initial, tol);
    if (keep.size() == a.states) return a;
    return restrict_states(a, keep);
}

inline std::optional<ConvexCertificate> find_convex_state(const MoorePA& a, const Tolerances& tol = {}) {
    const auto b = avg_basis_matrix(a, tol);
    if (b.columns.cols() == 0) {
        if (a.states < 2) return std::nullopt;
        // every row is zero: the last state is any mixture of the others
        ConvexCertificate c{a.states - 1, Vec(a.states - 1, 0.0)};
        c.weights[0] = 1.0;
        return c;
    }
    return find_convex_row(b.columns, tol);
}

// With s moved last and M = (E; weights): initial xi0 M, B^x = (E 0) A^x M, lambda_B = (E 0) lambda.
inline MoorePA remove_convex_state(const MoorePA& a, const ConvexCertificate& c, const Tolerances& tol = {}) {
    const auto b = avg_basis_matrix(a, tol);
    if (b.columns.cols() > 0 && !valid_certificate(b.columns, c, tol))
        throw std::invalid_argument("remove_convex_state: certificate does not reproduce the basis row");
    const auto others = all_but(a.states, c.state);
    const Matrix m = merge_matrix(a.states, c);
    MoorePA r = make_moore_pa(a.inputs, others.size());
    for (std::size_t x = 0; x < a.inputs.size(); ++x) r.trans[x] = select_rows(a.trans[x] * m, others);
    r.initial = a.initial * m;
    r.lambda = pick(a.lambda, others);
    return r;
}

inline MoorePA reduce_avg(MoorePA a, const Tolerances& tol = {}) {
    for (;;) {
        a = reachable_part(a, tol);
        const auto c = find_convex_state(a, tol);
        if (!c) return a;
        a = remove_convex_state(a, *c, tol);
    }
}

// ---------------------------------------------------------------------------

enum class PaClass { Mealy, MooreDetOut, General };

inline const char* to_string(PaClass c) {
    switch (c) {
        case PaClass::Mealy: return "mealy";
        case PaClass::MooreDetOut: return "moore-deterministic-output";
        case PaClass::General: return "general";
    }
    return "general";
}

// delta(s,x,s') = sum_y P, out(s,x,y) = sum_s' P; Mealy iff P = delta * out.
inline PaClass classify(const GeneralPA& a, const Tolerances& tol = {}) {
    const std::size_t n = a.states, nx = a.inputs.size(), ny = a.outputs.size();
    std::vector<Matrix> out(nx, Matrix(n, ny));
    for (Symbol x = 0; x < nx; ++x) {
        Matrix delta(n, n);
        for (Symbol y = 0; y < ny; ++y) delta += a.at(x, y);
        for (Symbol y = 0; y < ny; ++y)
            for (std::size_t s = 0; s < n; ++s) {
                double o = 0.0;
                for (std::size_t t = 0; t < n; ++t) o += a.at(x, y)(s, t);
                out[x](s, y) = o;
            }
        for (Symbol y = 0; y < ny; ++y)
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < n; ++t)
                    if (std::fabs(a.at(x, y)(s, t) - delta(s, t) * out[x](s, y)) > tol.sum) return PaClass::General;
    }
    for (Symbol x = 1; x < nx; ++x)
        if (norm_abs(out[x] - out[0]) > tol.sum) return PaClass::Mealy;
    for (std::size_t s = 0; s < n; ++s)
        for (Symbol y = 0; y < ny; ++y) {
            const double o = out[0](s, y);
            if (std::fabs(o) > tol.sum && std::fabs(o - 1.0) > tol.sum) return PaClass::Mealy;
        }
    return PaClass::MooreDetOut;
}

inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Outputs become the distinct lambda values, written with 12 significant digits;
// a state emits its own label whatever the input.
inline GeneralPA moore_as_general(const MoorePA& a) {
    Alphabet ys;
    std::vector<Symbol> label(a.states);
    for (std::size_t s = 0; s < a.states; ++s) {
        const std::string name = format_real(a.lambda[s]);
        auto it = std::find(ys.begin(), ys.end(), name);
        label[s] = static_cast<Symbol>(it - ys.begin());
        if (it == ys.end()) ys.push_back(name);
    }
    GeneralPA g = make_general_pa(a.inputs, ys, a.states);
    for (Symbol x = 0; x < a.inputs.size(); ++x)
        for (std::size_t s = 0; s < a.states; ++s)
            for (std::size_t t = 0; t < a.states; ++t) g.at(x, label[s])(s, t) = a.trans[x](s, t);
    g.initial = a.initial;
    return g;
}

inline MoorePA dfa_to_pa(const Dfa& d) {
    validate(d);
    if (!is_total(d)) throw std::invalid_argument("dfa_to_pa: dfa must be total");
    MoorePA a = make_moore_pa(d.inputs, d.states());
    for (std::size_t s = 0; s < d.states(); ++s) {
        for (Symbol x = 0; x < d.inputs.size(); ++x) a.trans[x](s, d.delta[s][x]) = 1.0;
        a.lambda[s] = d.accepting[s] ? 1.0 : 0.0;
    }
    a.initial = unit(d.states(), d.start);
    return a;
}

}  // namespace pa
