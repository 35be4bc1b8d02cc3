#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfa.hpp"
#include "moore_pa.hpp"
#include "pattern.hpp"

namespace pa {

struct CutLanguage {
    MoorePA automaton;
    double cutpoint = 0.0;
};

inline void validate(const CutLanguage& c, const Tolerances& tol = {}) {
    validate(c.automaton, tol);
    if (!(c.cutpoint >= 0.0 && c.cutpoint < 1.0)) throw std::invalid_argument("cut-point must lie in [0, 1)");
}

inline bool member(const MoorePA& a, double cut, const Word& u) { return avg_reaction(a, u) > cut; }

inline std::vector<Word> enumerate(const MoorePA& a, double cut, std::size_t max_len) {
    std::vector<Word> out;
    const auto t = avg_table(a, max_len);
    for (std::size_t i = 0; i < t.values.size(); ++i)
        if (t.values[i] > cut) out.push_back(word_at(a.inputs.size(), i));
    return out;
}

// ---------------------------------------------------------------------------
// constructions preserving the cut language

// point initial distribution: B = (e1, [[0, xi A^x], [0, A^x]], (xi lambda; lambda))
inline MoorePA fold_initial(const MoorePA& a) {
    const std::size_t n = a.states;
    MoorePA b = make_moore_pa(a.inputs, n + 1);
    b.initial = unit(n + 1, 0);
    for (std::size_t x = 0; x < a.inputs.size(); ++x) {
        const Vec first = a.initial * a.trans[x];
        for (std::size_t j = 0; j < n; ++j) {
            b.trans[x](0, j + 1) = first[j];
            for (std::size_t i = 0; i < n; ++i) b.trans[x](i + 1, j + 1) = a.trans[x](i, j);
        }
    }
    b.lambda = concat({dot(a.initial, a.lambda)}, a.lambda);
    return b;
}

// 0/1 outputs: state s splits into (s, 1) and (s, 0), entered with weights lambda_s and 1 - lambda_s
inline MoorePA binarize_output(const MoorePA& a, const Tolerances& tol = {}) {
    for (double v : a.lambda)
        if (v < -tol.nonneg || v > 1.0 + tol.nonneg) throw std::invalid_argument("binarize_output: outputs must lie in [0, 1]");
    const std::size_t n = a.states;
    MoorePA b = make_moore_pa(a.inputs, 2 * n);
    for (std::size_t t = 0; t < n; ++t) {
        const double hi = std::clamp(a.lambda[t], 0.0, 1.0);
        b.initial[2 * t] = a.initial[t] * hi;
        b.initial[2 * t + 1] = a.initial[t] * (1.0 - hi);
        b.lambda[2 * t] = 1.0;
        b.lambda[2 * t + 1] = 0.0;
        for (std::size_t x = 0; x < a.inputs.size(); ++x)
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t half = 0; half < 2; ++half) {
                    b.trans[x](2 * s + half, 2 * t) = a.trans[x](s, t) * hi;
                    b.trans[x](2 * s + half, 2 * t + 1) = a.trans[x](s, t) * (1.0 - hi);
                }
    }
    return b;
}

// B with {f_A > from} = {f_B > to}, both cut-points in [0, 1)
inline MoorePA shift_cutpoint(const MoorePA& a, double from, double to) {
    if (!(from >= 0.0 && from < 1.0 && to >= 0.0 && to < 1.0))
        throw std::invalid_argument("shift_cutpoint: cut-points must lie in [0, 1)");
    if (from == to) return a;
    const std::size_t n = a.states;
    if (to < from) {
        if (to == 0.0) throw std::domain_error("shift_cutpoint: cannot move a positive cut-point to 0");
        const double alpha = to / from;
        MoorePA b = make_moore_pa(a.inputs, 2 * n);
        b.initial = concat(alpha * a.initial, (1.0 - alpha) * a.initial);
        for (std::size_t x = 0; x < a.inputs.size(); ++x) b.trans[x] = block_diag(a.trans[x], a.trans[x]);
        b.lambda = concat(a.lambda, Vec(n, 0.0));
        return b;
    }
    const double alpha = (to - from) / (1.0 - from);
    MoorePA b = make_moore_pa(a.inputs, n + 1);
    b.initial = concat({alpha}, (1.0 - alpha) * a.initial);
    for (std::size_t x = 0; x < a.inputs.size(); ++x) b.trans[x] = block_diag(Matrix{{1.0}}, a.trans[x]);
    b.lambda = concat({1.0}, a.lambda);
    return b;
}

// probability that a general automaton emits y as the last output on input u (0 on the empty word)
inline double last_output_probability(const GeneralPA& a, Symbol y, const Word& u) {
    if (u.empty()) return 0.0;
    if (y >= a.outputs.size()) throw std::invalid_argument("unknown output symbol");
    Vec row = a.initial;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        Vec next(a.states, 0.0);
        for (Symbol w = 0; w < a.outputs.size(); ++w) next = next + row * a.at(u[i], w);
        row = std::move(next);
    }
    return sum(row * a.at(u.back(), y));
}

// Moore automaton whose second block records that the last output was y
inline MoorePA general_language_pa(const GeneralPA& a, Symbol y) {
    if (y >= a.outputs.size()) throw std::invalid_argument("general_language_pa: unknown output symbol");
    const std::size_t n = a.states;
    MoorePA b = make_moore_pa(a.inputs, 2 * n);
    b.initial = concat(a.initial, Vec(n, 0.0));
    for (Symbol x = 0; x < a.inputs.size(); ++x) {
        Matrix other(n, n);
        for (Symbol w = 0; w < a.outputs.size(); ++w)
            if (w != y) other += a.at(x, w);
        const Matrix& hit = a.at(x, y);
        b.trans[x] = blocks(other, hit, other, hit);
    }
    b.lambda = concat(Vec(n, 0.0), Vec(n, 1.0));
    return b;
}

// ---------------------------------------------------------------------------
// isolation

struct IsolationReport {
    bool refuted = false;
    std::optional<Word> witness;  // first u with |f(u) - a| <= delta
    double delta = 0.0;
    std::size_t max_len = 0;
    double min_distance = 0.0;  // over the scanned words
};

inline IsolationReport isolation_scan(const MoorePA& a, double cut, double delta, std::size_t max_len,
                                      const Tolerances& tol = {}) {
    if (!(delta > 0.0)) throw std::invalid_argument("isolation_scan: delta must be positive");
    IsolationReport r;
    r.delta = delta;
    r.max_len = max_len;
    r.min_distance = std::numeric_limits<double>::infinity();
    const auto t = avg_table(a, max_len);
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        const double d = std::fabs(t.values[i] - cut);
        r.min_distance = std::min(r.min_distance, d);
        if (d < delta - tol.zero) {
            r.refuted = true;
            r.witness = word_at(a.inputs.size(), i);
            return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// regular languages from isolated cut-points

struct DfaExtraction {
    Dfa raw;
    Dfa minimal;
    double radius = 0.0;
    double bound = 0.0;  // (1 + 1/delta)^(n-1)
    bool within_bound = false;
};

// Breadth-first walk over state rows xi A^u; a new row joins the first
// representative within `radius` in max-abs distance.
inline DfaExtraction extract_dfa(const MoorePA& a, double cut, double delta, std::size_t max_states = 1000000) {
    if (!(delta > 0.0)) throw std::invalid_argument("extract_dfa: delta must be positive");
    const std::size_t n = a.states;
    DfaExtraction out;
    out.radius = 2.0 * delta / (static_cast<double>(n * n) * std::max(1.0, norm_abs(a.lambda)));
    out.bound = std::pow(1.0 + 1.0 / delta, static_cast<double>(n - 1));

    std::vector<Vec> reps{a.initial};
    Dfa& d = out.raw;
    d.inputs = a.inputs;
    d.start = 0;
    auto find = [&](const Vec& v) -> std::size_t {
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (norm_abs(v - reps[i]) <= out.radius) return i;
        return Dfa::none;
    };
    for (std::size_t i = 0; i < reps.size(); ++i) {
        std::vector<std::size_t> row(a.inputs.size());
        for (Symbol x = 0; x < a.inputs.size(); ++x) {
            Vec v = reps[i] * a.trans[x];
            std::size_t j = find(v);
            if (j == Dfa::none) {
                if (reps.size() >= max_states) throw std::runtime_error("extract_dfa: state limit reached");
                j = reps.size();
                reps.push_back(std::move(v));
            }
            row[x] = j;
        }
        d.delta.push_back(std::move(row));
    }
    for (const auto& v : reps) d.accepting.push_back(dot(v, a.lambda) > cut);
    out.minimal = minimize(d);
    out.within_bound = static_cast<double>(out.minimal.states()) <= out.bound;
    return out;
}

// ---------------------------------------------------------------------------
// ergodicity, contraction, definiteness, stability

struct ErgodicReport {
    bool ergodic = false;
    std::optional<Word> witness;  // word whose pattern is not primitive
};

// Breadth-first over the monoid of boolean patterns of A^u, u nonempty.
inline ErgodicReport ergodic_test(const MoorePA& a, const Tolerances& tol = {}) {
    std::vector<BoolPattern> letters;
    for (const auto& m : a.trans) letters.push_back(bool_pattern(m, tol));
    std::set<BoolPattern> seen;
    std::deque<std::pair<BoolPattern, Word>> queue;
    for (Symbol x = 0; x < letters.size(); ++x)
        if (seen.insert(letters[x]).second) queue.push_back({letters[x], {x}});
    while (!queue.empty()) {
        auto [p, w] = std::move(queue.front());
        queue.pop_front();
        if (!is_primitive(p)) return {false, w};
        for (Symbol x = 0; x < letters.size(); ++x) {
            BoolPattern q = bool_mul(p, letters[x]);
            if (seen.insert(q).second) queue.push_back({std::move(q), concat(w, Word{x})});
        }
    }
    return {true, std::nullopt};
}

inline double contraction_value(double c, std::size_t len) {
    if (len == 0) return 1.0;
    return std::pow(std::max(0.0, 1.0 - 2.0 * c), static_cast<double>(len - 1));
}

struct ContractionReport {
    double c = 0.0;  // smallest transition entry
    bool holds = true;
    std::optional<Word> violation;
    std::size_t checked_len = 0;
};

// checks ||A^u|| <= (1 - 2c)^(|u|-1) for 1 <= |u| <= max_len
inline ContractionReport contraction_bound(const MoorePA& a, std::size_t max_len = 5, double slack = 1e-12) {
    ContractionReport r;
    r.c = std::numeric_limits<double>::infinity();
    for (const auto& m : a.trans) r.c = std::min(r.c, min_entry(m));
    r.checked_len = max_len;
    const std::size_t k = a.inputs.size();
    std::vector<Matrix> layer{Matrix::identity(a.states)};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Matrix> next;
        next.reserve(layer.size() * k);
        for (const auto& m : layer)
            for (const auto& ax : a.trans) next.push_back(m * ax);
        layer = std::move(next);
        const double limit = contraction_value(r.c, len) + slack;
        for (std::size_t i = 0; i < layer.size(); ++i)
            if (norm_spread(layer[i]) > limit) {
                r.holds = false;
                r.violation = word_at(k, words_up_to(k, len - 1) + i);
                return r;
            }
    }
    return r;
}

struct DefiniteRep {
    std::size_t k = 1;
    std::vector<bool> suffix;  // indexed by the shortlex rank within X^k
    std::vector<bool> short_words;  // indexed by shortlex index, |u| < k
    bool checked = false;
    std::optional<Word> counterexample;

    bool accepts(std::size_t letters, const Word& u) const {
        if (u.size() < k) return short_words[word_index(letters, u)];
        const Word tail(u.end() - static_cast<std::ptrdiff_t>(k), u.end());
        return suffix[word_index(letters, tail) - words_up_to(letters, k - 1)];
    }
};

namespace detail {

inline std::optional<std::size_t> definite_length(const MoorePA& a, double threshold, const Tolerances& tol,
                                                  std::size_t max_words) {
    double c = std::numeric_limits<double>::infinity();
    for (const auto& m : a.trans) c = std::min(c, min_entry(m));
    if (c > tol.zero) {
        const double q = 1.0 - 2.0 * c;
        std::size_t k = 1;
        while (!(contraction_value(c, k) < threshold)) {
            if (q <= 0.0 || k > 100000) return std::nullopt;
            ++k;
        }
        return k;
    }
    if (!ergodic_test(a, tol).ergodic) return std::nullopt;
    std::vector<Matrix> layer{Matrix::identity(a.states)};
    for (std::size_t k = 1; layer.size() * a.inputs.size() <= max_words; ++k) {
        std::vector<Matrix> next;
        for (const auto& m : layer)
            for (const auto& ax : a.trans) next.push_back(m * ax);
        layer = std::move(next);
        double worst = 0.0;
        for (const auto& m : layer) worst = std::max(worst, norm_spread(m));
        if (worst < threshold) return k;
    }
    return std::nullopt;
}

}  // namespace detail

// Suffix length k from (1 - 2c)^(k-1) < 2 delta / (n |lambda|) for positive matrices,
// or from the measured decay of ||A^u|| for ergodic ones; absent otherwise.
inline std::optional<DefiniteRep> definite_rep(const MoorePA& a, double cut, double delta, const Tolerances& tol = {},
                                               std::size_t max_words = std::size_t{1} << 20) {
    if (!(delta > 0.0)) throw std::invalid_argument("definite_rep: delta must be positive");
    const std::size_t n = a.states, letters = a.inputs.size();
    std::optional<std::size_t> k;
    if (n == 1 || norm_spread(a.lambda) <= tol.zero) {
        k = 1;
    } else {
        const double threshold = 2.0 * delta / (static_cast<double>(n) * norm_abs(a.lambda));
        k = detail::definite_length(a, threshold, tol, max_words);
    }
    if (!k) return std::nullopt;
    if (words_up_to(letters, *k) > max_words) throw std::domain_error("definite_rep: suffix table too large");

    DefiniteRep rep;
    rep.k = *k;
    const auto table = avg_table(a, rep.k);
    const std::size_t shorter = words_up_to(letters, rep.k - 1);
    for (std::size_t i = 0; i < table.values.size(); ++i)
        (i < shorter ? rep.short_words : rep.suffix).push_back(table.values[i] > cut);

    if (words_up_to(letters, rep.k + 2) <= max_words) {
        rep.checked = true;
        const auto longer = avg_table(a, rep.k + 2);
        for (std::size_t i = shorter; i < longer.values.size(); ++i) {
            const Word u = word_at(letters, i);
            if ((longer.values[i] > cut) != rep.accepts(letters, u)) {
                rep.counterexample = u;
                break;
            }
        }
    }
    return rep;
}

enum class StabilityKind { StableAll, PositiveWordStable, Unknown };

struct Stability {
    StabilityKind kind = StabilityKind::Unknown;
    std::size_t length = 0;  // l for PositiveWordStable
};

inline std::string to_string(const Stability& s) {
    switch (s.kind) {
        case StabilityKind::StableAll: return "stable-all";
        case StabilityKind::PositiveWordStable: return "positive-word-stable " + std::to_string(s.length);
        case StabilityKind::Unknown: return "unknown";
    }
    return "unknown";
}

inline Stability stability_check(const MoorePA& a, const Tolerances& tol = {}) {
    double worst = 0.0;
    for (const auto& m : a.trans) worst = std::max(worst, norm_spread(m));
    if (worst < 1.0 - tol.zero) return {StabilityKind::StableAll, 0};

    std::vector<BoolPattern> letters;
    for (const auto& m : a.trans) letters.push_back(bool_pattern(m, tol));
    std::set<BoolPattern> layer(letters.begin(), letters.end());
    const std::size_t limit = a.states * a.states;
    for (std::size_t l = 1; l <= limit; ++l) {
        bool positive = true;
        for (const auto& p : layer) positive = positive && p.all_ones();
        if (positive) return {StabilityKind::PositiveWordStable, l};
        std::set<BoolPattern> next;
        for (const auto& p : layer)
            for (const auto& q : letters) next.insert(bool_mul(p, q));
        layer = std::move(next);
    }
    return {StabilityKind::Unknown, 0};
}

}  // namespace pa
