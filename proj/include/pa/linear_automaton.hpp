#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dfa.hpp"
#include "moore_pa.hpp"
#include "span.hpp"
#include "tables.hpp"

namespace pa {

// Weighted automaton (initial row, {L^x}, output column). f_L(u) = initial L^u output.
struct LinearAutomaton {
    Alphabet inputs;
    std::size_t dim = 0;
    Vec initial;
    std::vector<Matrix> trans;
    Vec output;

    friend bool operator==(const LinearAutomaton&, const LinearAutomaton&) = default;
};

inline LinearAutomaton make_la(Alphabet x, std::size_t n) {
    LinearAutomaton l;
    l.inputs = std::move(x);
    l.dim = n;
    l.initial.assign(n, 0.0);
    l.trans.assign(l.inputs.size(), Matrix(n, n));
    l.output.assign(n, 0.0);
    return l;
}

inline void validate(const LinearAutomaton& l) {
    if (l.inputs.empty()) throw std::invalid_argument("empty input alphabet");
    if (l.dim == 0) throw std::invalid_argument("linear automaton has dimension 0");
    if (l.initial.size() != l.dim || l.output.size() != l.dim)
        throw std::invalid_argument("initial row or output column has wrong size");
    if (l.trans.size() != l.inputs.size()) throw std::invalid_argument("expected one matrix per input symbol");
    for (const auto& m : l.trans) {
        if (m.rows() != l.dim || m.cols() != l.dim) throw std::invalid_argument("transition matrix has wrong size");
        if (!all_finite(m)) throw std::invalid_argument("transition matrix has non-finite entries");
    }
    for (double v : concat(l.initial, l.output))
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite entry in initial row or output column");
}

inline LinearAutomaton as_linear(const MoorePA& a) {
    LinearAutomaton l = make_la(a.inputs, a.states);
    l.initial = a.initial;
    l.trans = a.trans;
    l.output = a.lambda;
    return l;
}

inline Matrix word_matrix(const LinearAutomaton& l, const Word& u) {
    Matrix m = Matrix::identity(l.dim);
    for (Symbol x : u) {
        if (x >= l.inputs.size()) throw std::invalid_argument("word_matrix: symbol out of range");
        m = m * l.trans[x];
    }
    return m;
}

inline double la_reaction(const LinearAutomaton& l, const Word& u) {
    Vec row = l.initial;
    for (Symbol x : u) {
        if (x >= l.inputs.size()) throw std::invalid_argument("la_reaction: symbol out of range");
        row = row * l.trans[x];
    }
    return dot(row, l.output);
}

inline StringFunctionTable la_table(const LinearAutomaton& l, std::size_t depth) {
    StringFunctionTable t(l.inputs, depth);
    const auto rows = state_rows(l.trans, l.initial, depth);
    for (std::size_t i = 0; i < rows.size(); ++i) t.values[i] = dot(rows[i], l.output);
    return t;
}

// ---------------------------------------------------------------------------
// operations on automata

enum class LaBinary { Sum, Product, Convolution };

inline LinearAutomaton la_combine(LaBinary op, const LinearAutomaton& l1, const LinearAutomaton& l2) {
    if (l1.inputs != l2.inputs) throw std::invalid_argument("linear automata have different alphabets");
    const std::size_t n1 = l1.dim, n2 = l2.dim;
    LinearAutomaton r;
    r.inputs = l1.inputs;
    switch (op) {
        case LaBinary::Sum:
            r.dim = n1 + n2;
            r.initial = concat(l1.initial, l2.initial);
            for (std::size_t x = 0; x < r.inputs.size(); ++x) r.trans.push_back(block_diag(l1.trans[x], l2.trans[x]));
            r.output = concat(l1.output, l2.output);
            break;
        case LaBinary::Product:
            r.dim = n1 * n2;
            r.initial = kron(l1.initial, l2.initial);
            for (std::size_t x = 0; x < r.inputs.size(); ++x) r.trans.push_back(kron(l1.trans[x], l2.trans[x]));
            r.output = kron(l1.output, l2.output);
            break;
        case LaBinary::Convolution: {
            const Matrix m = Matrix::col_vector(l1.output) * Matrix::row_vector(l2.initial);
            r.dim = n1 + n2;
            r.initial = concat(l1.initial, l1.initial * m);
            for (std::size_t x = 0; x < r.inputs.size(); ++x)
                r.trans.push_back(blocks(l1.trans[x], l1.trans[x] * m, Matrix(n2, n1), l2.trans[x]));
            r.output = concat(Vec(n1, 0.0), l2.output);
            break;
        }
    }
    return r;
}

inline LinearAutomaton la_scale(double a, LinearAutomaton l) {
    for (auto& v : l.output) v *= a;
    return l;
}

inline LinearAutomaton la_reverse(LinearAutomaton l) {
    std::swap(l.initial, l.output);
    for (auto& m : l.trans) m = m.transpose();
    return l;
}

// L^x (E + output initial); requires f_L(eps) = 0
inline LinearAutomaton la_iterate(LinearAutomaton l, const Tolerances& tol = {}) {
    if (std::fabs(dot(l.initial, l.output)) > tol.zero)
        throw std::domain_error("la_iterate: value at the empty word is not zero");
    const Matrix e = Matrix::identity(l.dim) + Matrix::col_vector(l.output) * Matrix::row_vector(l.initial);
    for (auto& m : l.trans) m = m * e;
    return l;
}

// ---------------------------------------------------------------------------
// the ring of string functions, on tables

namespace detail {

inline std::size_t common_depth(const StringFunctionTable& f, const StringFunctionTable& g) {
    if (f.alphabet != g.alphabet) throw std::invalid_argument("tables have different alphabets");
    return std::min(f.depth, g.depth);
}

template <class Op>
StringFunctionTable pointwise(const StringFunctionTable& f, const StringFunctionTable& g, Op op) {
    StringFunctionTable r(f.alphabet, common_depth(f, g));
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = op(f.values[i], g.values[i]);
    return r;
}

}  // namespace detail

inline StringFunctionTable chi_word(const Alphabet& x, const Word& w, std::size_t depth) {
    StringFunctionTable t(x, depth);
    if (w.size() <= depth) t[w] = 1.0;
    return t;
}
inline StringFunctionTable chi_eps(const Alphabet& x, std::size_t depth) { return chi_word(x, {}, depth); }

inline StringFunctionTable sf_sum(const StringFunctionTable& f, const StringFunctionTable& g) {
    return detail::pointwise(f, g, [](double a, double b) { return a + b; });
}
inline StringFunctionTable sf_difference(const StringFunctionTable& f, const StringFunctionTable& g) {
    return detail::pointwise(f, g, [](double a, double b) { return a - b; });
}
inline StringFunctionTable sf_product(const StringFunctionTable& f, const StringFunctionTable& g) {
    return detail::pointwise(f, g, [](double a, double b) { return a * b; });
}
inline StringFunctionTable sf_scale(double c, StringFunctionTable f) {
    for (auto& v : f.values) v *= c;
    return f;
}

// (f o g)(u) = sum over u = u1 u2 of f(u1) g(u2)
inline StringFunctionTable sf_convolution(const StringFunctionTable& f, const StringFunctionTable& g) {
    StringFunctionTable r(f.alphabet, detail::common_depth(f, g));
    const std::size_t k = r.letters();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        const Word u = word_at(k, i);
        double s = 0.0;
        for (std::size_t cut = 0; cut <= u.size(); ++cut)
            s += f(Word(u.begin(), u.begin() + cut)) * g(Word(u.begin() + cut, u.end()));
        r.values[i] = s;
    }
    return r;
}

// g with f o g = chi_eps, solved word by word in shortlex order
inline StringFunctionTable sf_inverse(const StringFunctionTable& f, const Tolerances& tol = {}) {
    const double f0 = f.values.at(0);
    if (std::fabs(f0) <= tol.zero) throw std::domain_error("sf_inverse: value at the empty word is zero");
    StringFunctionTable g(f.alphabet, f.depth);
    const std::size_t k = f.letters();
    g.values[0] = 1.0 / f0;
    for (std::size_t i = 1; i < g.values.size(); ++i) {
        const Word u = word_at(k, i);
        double s = 0.0;
        for (std::size_t cut = 1; cut <= u.size(); ++cut)
            s += f(Word(u.begin(), u.begin() + cut)) * g(Word(u.begin() + cut, u.end()));
        g.values[i] = -s / f0;
    }
    return g;
}

// f+ = (chi_eps - f)^{-1} - chi_eps
inline StringFunctionTable sf_iteration(const StringFunctionTable& f, const Tolerances& tol = {}) {
    const auto e = chi_eps(f.alphabet, f.depth);
    return sf_difference(sf_inverse(sf_difference(e, f), tol), e);
}

// ---------------------------------------------------------------------------
// Hankel matrices

using WordFunction = std::function<double(const Word&)>;

inline WordFunction as_function(const StringFunctionTable& f) {
    return [&f](const Word& u) { return f(u); };
}

inline Matrix hankel_block(const WordFunction& f, const std::vector<Word>& rows, const std::vector<Word>& cols,
                           const Word& middle = {}) {
    Matrix h(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) h(i, j) = f(concat(concat(rows[i], middle), cols[j]));
    return h;
}

// rows: all words of length <= row_len, columns: length <= col_len, both shortlex
inline Matrix hankel_block(const WordFunction& f, std::size_t letters, std::size_t row_len, std::size_t col_len) {
    return hankel_block(f, all_words(letters, row_len), all_words(letters, col_len));
}

inline Matrix hankel_block(const StringFunctionTable& f, std::size_t row_len, std::size_t col_len) {
    if (row_len + col_len > f.depth) throw std::invalid_argument("hankel_block: table is too shallow");
    return hankel_block(as_function(f), f.letters(), row_len, col_len);
}

struct HankelBasis {
    std::vector<Word> rows;  // U, rows[0] is the empty word
    std::vector<Word> cols;  // V, cols[0] is the empty word
    Matrix core;             // f(u_i v_j)
    std::vector<Matrix> per_letter;  // f(u_i x v_j)
};

// rank of the largest square-ish Hankel block the table supports
inline std::size_t e_f_dimension(const StringFunctionTable& f, const Tolerances& tol = {}) {
    const std::size_t r = f.depth / 2;
    return rank(hankel_block(f, r, f.depth - r), tol.rank);
}

inline std::size_t e_f_dimension(const StringFunctionTable& f, std::size_t depth, const Tolerances& tol = {}) {
    if (depth > f.depth) throw std::invalid_argument("e_f_dimension: depth exceeds table depth");
    StringFunctionTable cut(f.alphabet, depth);
    std::copy_n(f.values.begin(), cut.values.size(), cut.values.begin());
    return e_f_dimension(cut, tol);
}

// Greedy selection of independent Hankel rows, then columns, among tags of
// length <= min(rank_bound - 1, (depth - 1) / 2). Empty for the zero function.
inline HankelBasis hankel_basis(const StringFunctionTable& f, std::size_t rank_bound, const Tolerances& tol = {}) {
    if (rank_bound == 0) throw std::invalid_argument("hankel_basis: rank bound must be positive");
    if (f.depth == 0) throw std::invalid_argument("hankel_basis: table depth must be at least 1");
    const std::size_t k = f.letters();
    const std::size_t len = std::min(rank_bound - 1, (f.depth - 1) / 2);
    const auto cand = all_words(k, len);
    const Matrix full = hankel_block(as_function(f), cand, cand);

    HankelBasis b;
    Subspace row_span(cand.size(), tol.rank);
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < cand.size(); ++i)
        if (row_span.try_add(full.row(i))) {
            picked.push_back(i);
            b.rows.push_back(cand[i]);
        }
    const std::size_t r = picked.size();
    if (r > rank_bound) throw std::domain_error("hankel_basis: Hankel rank exceeds the bound");
    if (r == 0) return b;
    if (f.depth < 2 * r - 1)
        throw std::domain_error("hankel_basis: table depth " + std::to_string(f.depth) + " cannot certify rank " +
                                std::to_string(r));

    const Matrix sub = select_rows(full, picked);
    Subspace col_span(r, tol.rank);
    for (std::size_t j = 0; j < cand.size() && b.cols.size() < r; ++j)
        if (col_span.try_add(sub.col(j))) b.cols.push_back(cand[j]);
    if (b.cols.size() != r) throw std::domain_error("hankel_basis: column selection fell short of the row rank");

    const auto fn = as_function(f);
    b.core = hankel_block(fn, b.rows, b.cols);
    for (Symbol x = 0; x < k; ++x) b.per_letter.push_back(hankel_block(fn, b.rows, b.cols, {x}));
    return b;
}

inline LinearAutomaton zero_la(const Alphabet& x) {
    LinearAutomaton l = make_la(x, 1);
    l.initial[0] = 1.0;
    return l;
}

// (e1, {H^x H^{-1}}, H e1)
inline LinearAutomaton realize(const HankelBasis& b, const Alphabet& x, const Tolerances& tol = {}) {
    const std::size_t r = b.rows.size();
    if (r == 0) return zero_la(x);
    const Matrix inv = inverse(b.core, tol.rank);
    LinearAutomaton l = make_la(x, r);
    l.initial = unit(r, 0);
    for (std::size_t s = 0; s < x.size(); ++s) l.trans[s] = b.per_letter[s] * inv;
    l.output = b.core.col(0);
    return l;
}

inline LinearAutomaton realize(const StringFunctionTable& f, std::size_t rank_bound, const Tolerances& tol = {}) {
    return realize(hankel_basis(f, rank_bound, tol), f.alphabet, tol);
}

// ---------------------------------------------------------------------------
// degrees

inline std::size_t reach_degree(const LinearAutomaton& l, const Tolerances& tol = {}) {
    return grow_span(
               l.initial, l.inputs.size(), [&](Symbol x, const Vec& v) { return v * l.trans[x]; },
               TagOrder::Append, tol.rank)
        .sweeps;
}

inline std::size_t disting_degree(const LinearAutomaton& l, const Tolerances& tol = {}) {
    return grow_span(
               l.output, l.inputs.size(), [&](Symbol x, const Vec& v) { return l.trans[x] * v; },
               TagOrder::Prepend, tol.rank)
        .sweeps;
}

// ---------------------------------------------------------------------------
// rational expressions over {chi_eps, chi_x}; a null pointer is the zero function

struct RationalExpr;
using Expr = std::shared_ptr<const RationalExpr>;

struct RationalExpr {
    enum class Kind { Eps, Chi, Sum, Conv, Plus, Scale };
    Kind kind = Kind::Eps;
    Symbol letter = 0;
    double coef = 1.0;
    Expr left, right;
};

namespace rx {

inline Expr node(RationalExpr e) { return std::make_shared<const RationalExpr>(std::move(e)); }

inline Expr eps() { return node({RationalExpr::Kind::Eps, 0, 1.0, nullptr, nullptr}); }
inline Expr chi(Symbol x) { return node({RationalExpr::Kind::Chi, x, 1.0, nullptr, nullptr}); }

inline Expr sum(Expr a, Expr b) {
    if (!a) return b;
    if (!b) return a;
    return node({RationalExpr::Kind::Sum, 0, 1.0, std::move(a), std::move(b)});
}

inline Expr conv(Expr a, Expr b) {
    if (!a || !b) return nullptr;
    if (a->kind == RationalExpr::Kind::Eps) return b;
    if (b->kind == RationalExpr::Kind::Eps) return a;
    return node({RationalExpr::Kind::Conv, 0, 1.0, std::move(a), std::move(b)});
}

inline Expr plus(Expr a) {
    if (!a) return nullptr;
    return node({RationalExpr::Kind::Plus, 0, 1.0, std::move(a), nullptr});
}

inline Expr scale(double c, Expr a) {
    if (!a || c == 0.0) return nullptr;
    if (c == 1.0) return a;
    if (a->kind == RationalExpr::Kind::Scale) return scale(c * a->coef, a->left);
    return node({RationalExpr::Kind::Scale, 0, c, std::move(a), nullptr});
}

// eps + a+
inline Expr star(Expr a) { return sum(eps(), plus(std::move(a))); }

}  // namespace rx

// Solves b = A b + output * chi_eps by eliminating the last unknown first,
// where A_ij = sum_x L^x_ij chi_x, and returns sum_i initial_i b_i.
inline Expr la_to_rational_expr(const LinearAutomaton& l, const Tolerances& tol = {}) {
    validate(l);
    const std::size_t n = l.dim;
    std::vector<std::vector<Expr>> a(n, std::vector<Expr>(n));
    std::vector<Expr> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (Symbol x = 0; x < l.inputs.size(); ++x) {
                const double w = l.trans[x](i, j);
                if (std::fabs(w) > tol.zero) a[i][j] = rx::sum(a[i][j], rx::scale(w, rx::chi(x)));
            }
        if (std::fabs(l.output[i]) > tol.zero) c[i] = rx::scale(l.output[i], rx::eps());
    }

    // stored[m] = (a_mm*, row a_m0..a_m(m-1), c_m) at the time m is eliminated
    std::vector<Expr> loop(n);
    std::vector<std::vector<Expr>> row(n);
    std::vector<Expr> rhs(n);
    for (std::size_t m = n; m-- > 0;) {
        loop[m] = rx::star(a[m][m]);
        row[m].assign(a[m].begin(), a[m].begin() + m);
        rhs[m] = c[m];
        for (std::size_t i = 0; i < m; ++i) {
            if (!a[i][m]) continue;
            const Expr via = rx::conv(a[i][m], loop[m]);
            for (std::size_t j = 0; j < m; ++j) a[i][j] = rx::sum(a[i][j], rx::conv(via, a[m][j]));
            c[i] = rx::sum(c[i], rx::conv(via, c[m]));
        }
    }
    std::vector<Expr> b(n);
    for (std::size_t m = 0; m < n; ++m) {
        Expr t = rhs[m];
        for (std::size_t j = 0; j < m; ++j) t = rx::sum(t, rx::conv(row[m][j], b[j]));
        b[m] = rx::conv(loop[m], t);
    }
    Expr f;
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(l.initial[i]) > tol.zero) f = rx::sum(f, rx::scale(l.initial[i], b[i]));
    return f;
}

inline StringFunctionTable eval_expr(const Expr& e, const Alphabet& x, std::size_t depth, const Tolerances& tol = {}) {
    std::unordered_map<const RationalExpr*, StringFunctionTable> memo;
    std::function<StringFunctionTable(const Expr&)> go = [&](const Expr& n) -> StringFunctionTable {
        if (!n) return StringFunctionTable(x, depth);
        if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
        StringFunctionTable t;
        switch (n->kind) {
            case RationalExpr::Kind::Eps: t = chi_eps(x, depth); break;
            case RationalExpr::Kind::Chi:
                if (n->letter >= x.size()) throw std::invalid_argument("eval_expr: letter outside the alphabet");
                t = chi_word(x, {n->letter}, depth);
                break;
            case RationalExpr::Kind::Sum: t = sf_sum(go(n->left), go(n->right)); break;
            case RationalExpr::Kind::Conv: t = sf_convolution(go(n->left), go(n->right)); break;
            case RationalExpr::Kind::Plus: t = sf_iteration(go(n->left), tol); break;
            case RationalExpr::Kind::Scale: t = sf_scale(n->coef, go(n->left)); break;
        }
        memo.emplace(n.get(), t);
        return t;
    };
    return go(e);
}

inline std::string to_sexpr(const Expr& e, const Alphabet& x) {
    if (!e) return "(scale 0 eps)";
    switch (e->kind) {
        case RationalExpr::Kind::Eps: return "eps";
        case RationalExpr::Kind::Chi: return "(chi " + x.at(e->letter) + ")";
        case RationalExpr::Kind::Sum: return "(sum " + to_sexpr(e->left, x) + " " + to_sexpr(e->right, x) + ")";
        case RationalExpr::Kind::Conv: return "(conv " + to_sexpr(e->left, x) + " " + to_sexpr(e->right, x) + ")";
        case RationalExpr::Kind::Plus: return "(plus " + to_sexpr(e->left, x) + ")";
        case RationalExpr::Kind::Scale: return "(scale " + format_real(e->coef) + " " + to_sexpr(e->left, x) + ")";
    }
    return "";
}

inline Expr parse_sexpr(const std::string& text, const Alphabet& x) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto atom = [&] {
        skip();
        const std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
               text[pos] != ')')
            ++pos;
        if (start == pos) throw std::invalid_argument("sexpr: expected a token at offset " + std::to_string(start));
        return text.substr(start, pos - start);
    };
    auto expect = [&](char ch) {
        skip();
        if (pos >= text.size() || text[pos] != ch)
            throw std::invalid_argument(std::string("sexpr: expected '") + ch + "' at offset " + std::to_string(pos));
        ++pos;
    };
    std::function<Expr()> parse = [&]() -> Expr {
        skip();
        if (pos < text.size() && text[pos] != '(') {
            const auto a = atom();
            if (a != "eps") throw std::invalid_argument("sexpr: unknown atom '" + a + "'");
            return rx::eps();
        }
        expect('(');
        const auto head = atom();
        Expr r;
        if (head == "chi") {
            r = rx::chi(symbol_of(x, atom()));
        } else if (head == "sum" || head == "conv") {
            Expr p = parse();
            Expr q = parse();
            r = head == "sum" ? rx::sum(p, q) : rx::conv(p, q);
        } else if (head == "plus") {
            r = rx::plus(parse());
        } else if (head == "scale") {
            const auto c = atom();
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(c, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != c.size()) throw std::invalid_argument("sexpr: bad coefficient '" + c + "'");
            r = rx::scale(v, parse());
        } else {
            throw std::invalid_argument("sexpr: unknown operator '" + head + "'");
        }
        expect(')');
        return r;
    };
    Expr e = parse();
    skip();
    if (pos != text.size()) throw std::invalid_argument("sexpr: trailing text at offset " + std::to_string(pos));
    return e;
}

// ---------------------------------------------------------------------------
// embeddings into probabilistic automata

struct AffineEmbedding {
    MoorePA automaton;
    double scale = 1.0;  // f_A(u) = scale^{|u|+1} f_L(u) + 1/states
};

namespace detail {

// orthonormal completion: vectors of an orthonormal basis of R^n whose span contains `first`,
// with `first` itself left out of the returned list
inline std::vector<Vec> completion(const std::vector<Vec>& first, std::size_t n, double tol_rank) {
    Subspace s(n, tol_rank);
    for (const auto& v : first) s.try_add(v);
    const std::size_t skip = s.size();
    for (std::size_t i = 0; i < n && s.size() < n; ++i) s.try_add(unit(n, i));
    return {s.basis().begin() + static_cast<std::ptrdiff_t>(skip), s.basis().end()};
}

inline LinearAutomaton change_basis(const LinearAutomaton& l, const Matrix& p, const Tolerances& tol) {
    const Matrix q = inverse(p, tol.rank);
    LinearAutomaton r = l;
    r.initial = l.initial * p;
    for (auto& m : r.trans) m = q * m * p;
    r.output = q * l.output;
    return r;
}

}  // namespace detail

inline AffineEmbedding la_to_pa_affine(const LinearAutomaton& l, const Tolerances& tol = {}) {
    validate(l);
    const std::size_t n = l.dim, m = n + 2;
    const double u = 1.0 / static_cast<double>(m);
    AffineEmbedding out;
    MoorePA& a = out.automaton;
    a = make_moore_pa(l.inputs, m);
    a.initial.assign(m, u);
    a.lambda = unit(m, 0);

    if (norm_abs(l.output) <= tol.zero) {
        for (auto& t : a.trans) t = Matrix(m, m, u);
        out.scale = 1.0;
        return out;
    }

    std::vector<Vec> cols{l.output};
    for (auto& v : detail::completion({l.output}, n, tol.rank)) cols.push_back(std::move(v));
    const LinearAutomaton norm = detail::change_basis(l, Matrix::from_cols(cols), tol);

    std::vector<Matrix> pad;
    double big = 0.0;
    for (const auto& lx : norm.trans) {
        Matrix p(m, m);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                p(i, j) = lx(i, j);
                p(i, n) -= lx(i, j);
                p(n + 1, j) -= lx(i, j);
                total += lx(i, j);
            }
        p(n + 1, n) = total;
        big = std::max(big, norm_abs(p));
        pad.push_back(std::move(p));
    }
    Vec start(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) start[i] = norm.initial[i];
    start[n] = -sum(norm.initial);
    big = std::max(big, norm_abs(start));

    out.scale = u / (1.0 + big);
    for (std::size_t i = 0; i < m; ++i) a.initial[i] = out.scale * start[i] + u;
    for (std::size_t x = 0; x < pad.size(); ++x) a.trans[x] = out.scale * pad[x] + Matrix(m, m, u);
    return out;
}

struct LanguageEmbedding {
    MoorePA automaton;
    double cut = 0.0;  // u is in the cut language of L at a iff f_A(u) > cut
};

// Shifts f_L by -a, reshapes it so that the value at the empty word is 1 (f_L(eps) > a)
// or 0 (otherwise), then applies the affine embedding: n + 4 states, cut 1/(n+4).
inline LanguageEmbedding la_language_pa(const LinearAutomaton& l, double level, const Tolerances& tol = {}) {
    validate(l);
    const std::size_t n = l.dim;
    LinearAutomaton shifted = make_la(l.inputs, n + 1);
    shifted.initial = concat(l.initial, {1.0});
    for (std::size_t x = 0; x < l.inputs.size(); ++x) shifted.trans[x] = block_diag(l.trans[x], Matrix{{1.0}});
    shifted.output = concat(l.output, {-level});
    const double at_eps = dot(shifted.initial, shifted.output);

    const std::size_t m = n + 2;
    LinearAutomaton one = make_la(l.inputs, m);
    one.initial = concat(shifted.initial, {1.0});
    for (std::size_t x = 0; x < l.inputs.size(); ++x) one.trans[x] = block_diag(shifted.trans[x], Matrix{{0.0}});
    one.output = concat(shifted.output, {at_eps > 0 ? 1.0 - at_eps : -at_eps});

    LinearAutomaton two = one;
    if (norm_abs(one.output) > tol.zero) {
        std::vector<Vec> cols{one.output};
        if (at_eps > 0) {
            for (auto& v : detail::completion({one.initial}, m, tol.rank)) cols.push_back(std::move(v));
        } else {
            for (auto& v : detail::completion({one.initial, one.output}, m, tol.rank)) cols.push_back(std::move(v));
            const double len2 = dot(one.initial, one.initial);
            cols.push_back((1.0 / len2) * one.initial);
        }
        two = detail::change_basis(one, Matrix::from_cols(cols), tol);
    }
    LanguageEmbedding out;
    out.automaton = la_to_pa_affine(two, tol).automaton;
    out.cut = 1.0 / static_cast<double>(out.automaton.states);
    return out;
}

// Block-diagonal 0/1 automaton taking value a_i on the language of the i-th DFA.
// The DFAs must partition X^*; checked on every word of length <= depth.
inline LinearAutomaton laf_from_level_dfas(const std::vector<std::pair<double, Dfa>>& levels, std::size_t depth) {
    if (levels.empty()) throw std::invalid_argument("laf_from_level_dfas: no levels given");
    const Alphabet& x = levels.front().second.inputs;
    std::size_t n = 0;
    for (const auto& [value, d] : levels) {
        validate(d);
        if (!is_total(d)) throw std::invalid_argument("laf_from_level_dfas: every dfa must be total");
        if (d.inputs != x) throw std::invalid_argument("laf_from_level_dfas: dfas have different alphabets");
        n += d.states();
    }
    for (const auto& w : all_words(x.size(), depth)) {
        std::size_t hits = 0;
        for (const auto& lv : levels) hits += lv.second.accepts(w) ? 1 : 0;
        if (hits != 1)
            throw std::domain_error("laf_from_level_dfas: word '" + format_word(x, w) + "' is accepted by " +
                                    std::to_string(hits) + " dfas");
    }
    LinearAutomaton l = make_la(x, n);
    std::size_t off = 0;
    for (const auto& [value, d] : levels) {
        l.initial[off + d.start] = 1.0;
        for (std::size_t s = 0; s < d.states(); ++s) {
            for (Symbol c = 0; c < x.size(); ++c) l.trans[c](off + s, off + d.delta[s][c]) = 1.0;
            l.output[off + s] = d.accepting[s] ? value : 0.0;
        }
        off += d.states();
    }
    return l;
}

}  // namespace pa
