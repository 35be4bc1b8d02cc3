#pragma once

#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "convex.hpp"
#include "span.hpp"
#include "tables.hpp"

namespace pa {

// Input/output probabilistic automaton: trans[x * |Y| + y] holds A^{xy}.
struct GeneralPA {
    Alphabet inputs;
    Alphabet outputs;
    std::size_t states = 0;
    std::vector<Matrix> trans;
    Vec initial;

    std::size_t pair_letters() const { return inputs.size() * outputs.size(); }
    std::size_t pair(Symbol x, Symbol y) const { return x * outputs.size() + y; }
    const Matrix& at(Symbol x, Symbol y) const { return trans.at(pair(x, y)); }
    Matrix& at(Symbol x, Symbol y) { return trans.at(pair(x, y)); }

    friend bool operator==(const GeneralPA&, const GeneralPA&) = default;
};

inline GeneralPA make_general_pa(Alphabet x, Alphabet y, std::size_t n) {
    GeneralPA a;
    a.inputs = std::move(x);
    a.outputs = std::move(y);
    a.states = n;
    a.trans.assign(a.pair_letters(), Matrix(n, n));
    a.initial.assign(n, 0.0);
    if (n) a.initial[0] = 1.0;
    return a;
}

inline void validate(const GeneralPA& a, const Tolerances& tol = {}) {
    if (a.inputs.empty() || a.outputs.empty()) throw std::invalid_argument("empty alphabet");
    if (a.states == 0) throw std::invalid_argument("automaton has no states");
    if (a.trans.size() != a.pair_letters())
        throw std::invalid_argument("expected one matrix per (input, output) pair");
    for (const auto& m : a.trans) {
        if (m.rows() != a.states || m.cols() != a.states)
            throw std::invalid_argument("transition matrix has wrong size");
        if (!all_finite(m)) throw std::invalid_argument("transition matrix has non-finite entries");
        if (min_entry(m) < -tol.nonneg) throw std::invalid_argument("negative transition probability");
    }
    for (Symbol x = 0; x < a.inputs.size(); ++x) {
        Matrix total(a.states, a.states);
        for (Symbol y = 0; y < a.outputs.size(); ++y) total += a.at(x, y);
        if (!is_stochastic(total, tol))
            throw std::invalid_argument("rows of sum over outputs for input '" + a.inputs[x] +
                                        "' are not distributions");
    }
    if (a.initial.size() != a.states || !is_distribution(a.initial, tol))
        throw std::invalid_argument("initial vector is not a distribution");
}

inline Matrix word_matrix(const GeneralPA& a, const Word& u, const Word& v) {
    if (u.size() != v.size()) return Matrix(a.states, a.states);
    Matrix m = Matrix::identity(a.states);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] >= a.inputs.size() || v[i] >= a.outputs.size())
            throw std::invalid_argument("word_matrix: symbol out of range");
        m = m * a.at(u[i], v[i]);
    }
    return m;
}

inline double reaction(const GeneralPA& a, const Vec& xi, const Word& u, const Word& v) {
    if (xi.size() != a.states) throw std::invalid_argument("reaction: distribution has wrong size");
    if (u.size() != v.size()) return 0.0;
    Vec row = xi;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] >= a.inputs.size() || v[i] >= a.outputs.size())
            throw std::invalid_argument("reaction: symbol out of range");
        row = row * a.at(u[i], v[i]);
    }
    return sum(row);
}

inline double reaction(const GeneralPA& a, const Word& u, const Word& v) {
    return reaction(a, a.initial, u, v);
}

inline ReactionTable reaction_table(const GeneralPA& a, const Vec& xi, std::size_t depth) {
    ReactionTable t(a.inputs, a.outputs, depth);
    const std::size_t k = a.pair_letters();
    std::vector<Vec> rows;
    rows.reserve(t.values.size());
    rows.push_back(xi);
    for (std::size_t i = 0; rows.size() < t.values.size(); ++i)
        for (Symbol p = 0; p < k; ++p) rows.push_back(rows[i] * a.trans[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) t.values[i] = sum(rows[i]);
    return t;
}

inline ReactionTable reaction_table(const GeneralPA& a, std::size_t depth) {
    return reaction_table(a, a.initial, depth);
}

struct BasisMatrix {
    Matrix columns;                               // states x rank
    std::vector<std::pair<Word, Word>> tags;      // column j is A^{u_j, v_j} I
    std::size_t sweeps = 0;
};

inline BasisMatrix basis_matrix(const GeneralPA& a, const Tolerances& tol = {}) {
    const Vec ones(a.states, 1.0);
    auto span = grow_span(
        ones, a.pair_letters(), [&](Symbol p, const Vec& v) { return a.trans[p] * v; },
        TagOrder::Prepend, tol.rank);
    BasisMatrix b;
    b.columns = Matrix::from_cols(span.vectors);
    b.sweeps = span.sweeps;
    ReactionTable shape(a.inputs, a.outputs, 0);
    for (const auto& t : span.tags) b.tags.push_back(shape.split(t));
    return b;
}

inline bool rows_agree(const Vec& r1, const Vec& r2, double scale, const Tolerances& tol) {
    return norm_abs(r1 - r2) <= tol.rank * std::max(1.0, scale);
}

inline bool distributions_equivalent(const GeneralPA& a, const Vec& xi1, const Vec& xi2,
                                     const Tolerances& tol = {}) {
    if (xi1.size() != a.states || xi2.size() != a.states)
        throw std::invalid_argument("distributions_equivalent: wrong vector size");
    const auto b = basis_matrix(a, tol);
    return rows_agree(xi1 * b.columns, xi2 * b.columns, norm_abs(b.columns), tol);
}

inline GeneralPA disjoint_union(const GeneralPA& a1, const GeneralPA& a2) {
    if (a1.inputs != a2.inputs || a1.outputs != a2.outputs)
        throw std::invalid_argument("automata have different alphabets");
    GeneralPA c = make_general_pa(a1.inputs, a1.outputs, a1.states + a2.states);
    for (std::size_t p = 0; p < c.pair_letters(); ++p) c.trans[p] = block_diag(a1.trans[p], a2.trans[p]);
    c.initial = concat(a1.initial, Vec(a2.states, 0.0));
    return c;
}

inline bool equivalent(const GeneralPA& a1, const GeneralPA& a2, const Tolerances& tol = {}) {
    const GeneralPA c = disjoint_union(a1, a2);
    const Vec xi1 = concat(a1.initial, Vec(a2.states, 0.0));
    const Vec xi2 = concat(Vec(a1.states, 0.0), a2.initial);
    return distributions_equivalent(c, xi1, xi2, tol);
}

inline GeneralPA restrict_states(const GeneralPA& a, const std::vector<std::size_t>& keep) {
    GeneralPA r = make_general_pa(a.inputs, a.outputs, keep.size());
    for (std::size_t p = 0; p < a.pair_letters(); ++p) r.trans[p] = submatrix(a.trans[p], keep, keep);
    r.initial = pick(a.initial, keep);
    return r;
}

// states reachable from the support of the initial distribution, in original order
inline std::vector<std::size_t> reachable_states(const std::vector<Matrix>& trans, const Vec& initial,
                                                 const Tolerances& tol) {
    const std::size_t n = initial.size();
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    for (std::size_t s = 0; s < n; ++s)
        if (initial[s] > tol.zero) {
            seen[s] = true;
            q.push(s);
        }
    while (!q.empty()) {
        const std::size_t s = q.front();
        q.pop();
        for (const auto& m : trans)
            for (std::size_t t = 0; t < n; ++t)
                if (!seen[t] && m(s, t) > tol.zero) {
                    seen[t] = true;
                    q.push(t);
                }
    }
    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < n; ++s)
        if (seen[s]) keep.push_back(s);
    return keep;
}

inline GeneralPA reachable_part(const GeneralPA& a, const Tolerances& tol = {}) {
    const auto keep = reachable_states(a.trans, a.initial, tol);
    if (keep.size() == a.states) return a;
    return restrict_states(a, keep);
}

inline std::optional<ConvexCertificate> find_convex_state(const GeneralPA& a, const Tolerances& tol = {}) {
    return find_convex_row(basis_matrix(a, tol).columns, tol);
}

// Matrix sending state s to the mixture `weights` over the remaining states:
// identity on the others, row s = weights.
inline Matrix merge_matrix(std::size_t n, const ConvexCertificate& c) {
    const auto others = all_but(n, c.state);
    Matrix m(n, others.size());
    for (std::size_t k = 0; k < others.size(); ++k) {
        m(others[k], k) = 1.0;
        m(c.state, k) = c.weights[k];
    }
    return m;
}

inline GeneralPA remove_convex_state(const GeneralPA& a, const ConvexCertificate& c,
                                     const Tolerances& tol = {}) {
    if (!valid_certificate(basis_matrix(a, tol).columns, c, tol))
        throw std::invalid_argument("remove_convex_state: certificate does not reproduce the basis row");
    const auto others = all_but(a.states, c.state);
    const Matrix m = merge_matrix(a.states, c);
    GeneralPA r = make_general_pa(a.inputs, a.outputs, others.size());
    for (std::size_t p = 0; p < a.pair_letters(); ++p) {
        r.trans[p] = select_rows(a.trans[p] * m, others);
    }
    r.initial = a.initial * m;
    return r;
}

inline GeneralPA reduce(GeneralPA a, const Tolerances& tol = {}) {
    for (;;) {
        a = reachable_part(a, tol);
        const auto c = find_convex_state(a, tol);
        if (!c) return a;
        a = remove_convex_state(a, *c, tol);
    }
}

// ---------------------------------------------------------------------------
// reactions given by tables

inline bool is_probabilistic_response(const ReactionTable& f, const Tolerances& tol = {}) {
    if (f.values.empty() || std::fabs(f.values[0] - 1.0) > tol.sum) return false;
    for (double v : f.values)
        if (!std::isfinite(v) || v < -tol.nonneg) return false;
    const std::size_t k = f.pair_letters();
    const std::size_t ny = f.outputs.size();
    const std::size_t inner = words_up_to(k, f.depth == 0 ? 0 : f.depth - 1);
    for (std::size_t i = 0; f.depth > 0 && i < inner; ++i) {
        const Word w = word_at(k, i);
        for (Symbol x = 0; x < f.inputs.size(); ++x) {
            double s = 0.0;
            for (Symbol y = 0; y < ny; ++y) {
                Word ext = w;
                ext.push_back(x * ny + y);
                s += f.at_pair(ext);
            }
            if (std::fabs(s - f.values[i]) > tol.sum) return false;
        }
    }
    return true;
}

// f_{u,v}(u', v') = f(uu', vv') / f(u, v), on the remaining depth
inline ReactionTable residual_pair(const ReactionTable& f, const Word& w, const Tolerances& tol = {}) {
    if (w.size() > f.depth) throw std::out_of_range("residual: word longer than table depth");
    const double base = f.at_pair(w);
    if (!(base > tol.zero)) throw std::domain_error("residual: reaction value is zero");
    ReactionTable g(f.inputs, f.outputs, f.depth - w.size());
    const std::size_t k = f.pair_letters();
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = f.at_pair(concat(w, word_at(k, i))) / base;
    return g;
}

inline ReactionTable residual(const ReactionTable& f, const Word& u, const Word& v, const Tolerances& tol = {}) {
    return residual_pair(f, f.pair_word(u, v), tol);
}

inline bool tables_agree(const ReactionTable& a, const ReactionTable& b, std::size_t depth, double tol) {
    const std::size_t count = words_up_to(a.pair_letters(), depth);
    for (std::size_t i = 0; i < count; ++i)
        if (std::fabs(a.values[i] - b.values[i]) > tol) return false;
    return true;
}

// Residuals of f explored breadth-first. A new residual is identified with an
// earlier one when they agree on a common depth of at least 1; a residual left
// at depth 0 without such a match means the table does not show closure.
inline std::optional<GeneralPA> residual_automaton(const ReactionTable& f, const Tolerances& tol = {}) {
    if (f.depth < 1) return std::nullopt;
    const std::size_t k = f.pair_letters();
    std::vector<ReactionTable> found{f};
    std::vector<std::vector<std::pair<std::size_t, double>>> edges;  // per state, per pair letter
    for (std::size_t s = 0; s < found.size(); ++s) {
        edges.emplace_back(k, std::pair<std::size_t, double>{0, 0.0});
        for (Symbol p = 0; p < k; ++p) {
            const double weight = found[s].at_pair(Word{p});
            if (weight <= tol.zero) continue;
            ReactionTable g = residual_pair(found[s], Word{p}, tol);
            std::optional<std::size_t> match;
            for (std::size_t t = 0; t < found.size() && !match; ++t) {
                const std::size_t common = std::min(g.depth, found[t].depth);
                if (common >= 1 && tables_agree(g, found[t], common, tol.zero)) match = t;
            }
            if (!match) {
                if (g.depth < 2) return std::nullopt;
                found.push_back(std::move(g));
                match = found.size() - 1;
            }
            edges[s][p] = {*match, weight};
        }
    }
    GeneralPA a = make_general_pa(f.inputs, f.outputs, found.size());
    for (std::size_t s = 0; s < found.size(); ++s)
        for (Symbol p = 0; p < k; ++p) {
            const auto [t, w] = edges[s][p];
            if (w > 0.0) a.trans[p](s, t) += w;
        }
    return a;
}

// Cone of reactions closed under shifts: member i shifted by (x, y) equals
// sum_j shifts[x * |Y| + y](i, j) * member j.
struct ConeSpec {
    Alphabet inputs;
    Alphabet outputs;
    std::vector<ReactionTable> members;
    Vec weights;
    std::vector<Matrix> shifts;
};

inline void validate(const ConeSpec& c, const Tolerances& tol = {}) {
    const std::size_t n = c.members.size();
    if (n == 0) throw std::invalid_argument("cone has no members");
    if (c.weights.size() != n || !is_distribution(c.weights, tol))
        throw std::invalid_argument("cone weights must form a distribution");
    const std::size_t k = c.inputs.size() * c.outputs.size();
    if (c.shifts.size() != k) throw std::invalid_argument("cone needs one shift matrix per pair");
    for (const auto& m : c.shifts) {
        if (m.rows() != n || m.cols() != n) throw std::invalid_argument("shift matrix has wrong size");
        if (min_entry(m) < -tol.nonneg) throw std::invalid_argument("negative shift coefficient");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (Symbol x = 0; x < c.inputs.size(); ++x) {
            double s = 0.0;
            for (Symbol y = 0; y < c.outputs.size(); ++y)
                for (std::size_t j = 0; j < n; ++j) s += c.shifts[x * c.outputs.size() + y](i, j);
            if (std::fabs(s - 1.0) > tol.sum) throw std::invalid_argument("shift coefficients do not sum to 1");
        }
    for (const auto& f : c.members) {
        if (f.inputs != c.inputs || f.outputs != c.outputs) throw std::invalid_argument("member alphabet mismatch");
        if (!is_probabilistic_response(f, tol)) throw std::invalid_argument("member is not a probabilistic reaction");
    }
    std::size_t depth = c.members.front().depth;
    for (const auto& f : c.members) depth = std::min(depth, f.depth);
    if (depth == 0) return;
    const std::size_t inner = words_up_to(k, depth - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (Symbol p = 0; p < k; ++p)
            for (std::size_t w = 0; w < inner; ++w) {
                const Word tail = word_at(k, w);
                double mix = 0.0;
                for (std::size_t j = 0; j < n; ++j) mix += c.shifts[p](i, j) * c.members[j].at_pair(tail);
                Word full{p};
                full.insert(full.end(), tail.begin(), tail.end());
                if (std::fabs(c.members[i].at_pair(full) - mix) > tol.sum)
                    throw std::invalid_argument("cone is not closed under shifts");
            }
}

inline GeneralPA pa_from_cone(const ConeSpec& c, const Tolerances& tol = {}) {
    validate(c, tol);
    GeneralPA a = make_general_pa(c.inputs, c.outputs, c.members.size());
    a.trans = c.shifts;
    a.initial = c.weights;
    return a;
}

}  // namespace pa
