#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "general_pa.hpp"

namespace pa {

inline bool is_random_sequence(const RandomSequence& z, const Tolerances& tol = {}) {
    if (z.values.empty() || std::fabs(z.values[0] - 1.0) > tol.sum) return false;
    for (double v : z.values)
        if (!std::isfinite(v) || v < -tol.nonneg) return false;
    if (z.depth == 0) return true;
    const std::size_t k = z.letters();
    const std::size_t inner = words_up_to(k, z.depth - 1);
    for (std::size_t i = 0; i < inner; ++i) {
        Word w = word_at(k, i);
        double s = 0.0;
        w.push_back(0);
        for (Symbol x = 0; x < k; ++x) {
            w.back() = x;
            s += z(w);
        }
        if (std::fabs(s - z.values[i]) > tol.sum) return false;
    }
    return true;
}

inline bool is_paired_sequence(const PairedSequence& eta, const Tolerances& tol = {}) {
    if (eta.values.empty() || std::fabs(eta.values[0] - 1.0) > tol.sum) return false;
    for (double v : eta.values)
        if (!std::isfinite(v) || v < -tol.nonneg) return false;
    if (eta.depth == 0) return true;
    const std::size_t k = eta.pair_letters();
    const std::size_t inner = words_up_to(k, eta.depth - 1);
    for (std::size_t i = 0; i < inner; ++i) {
        Word w = word_at(k, i);
        double s = 0.0;
        w.push_back(0);
        for (Symbol p = 0; p < k; ++p) {
            w.back() = p;
            s += eta.at_pair(w);
        }
        if (std::fabs(s - eta.values[i]) > tol.sum) return false;
    }
    return true;
}

inline RandomSequence rs_residual(const RandomSequence& z, const Word& u, const Tolerances& tol = {}) {
    const double base = z(u);
    if (!(base > tol.zero)) throw std::domain_error("rs_residual: word has zero probability");
    RandomSequence r(z.alphabet, z.depth - u.size());
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = z(concat(u, word_at(z.letters(), i))) / base;
    return r;
}

// The sequence seen as a reaction of an automaton with the one-letter input {e}.
inline ReactionTable as_reaction(const RandomSequence& z) {
    ReactionTable t({"e"}, z.alphabet, z.depth);
    t.values = z.values;
    return t;
}

inline std::optional<GeneralPA> rs_automaton(const RandomSequence& z, const Tolerances& tol = {}) {
    return residual_automaton(as_reaction(z), tol);
}

// Finite Markov chain whose states carry signal labels.
struct MarkovChain {
    Alphabet signals;
    Matrix transition;
    std::vector<Symbol> labels;
    Vec initial;

    friend bool operator==(const MarkovChain&, const MarkovChain&) = default;
};

inline void validate(const MarkovChain& m, const Tolerances& tol = {}) {
    const std::size_t n = m.transition.rows();
    if (n == 0 || !m.transition.square()) throw std::invalid_argument("transition matrix must be square");
    if (!is_stochastic(m.transition, tol)) throw std::invalid_argument("transition matrix is not stochastic");
    if (m.labels.size() != n) throw std::invalid_argument("every state needs a label");
    for (auto l : m.labels)
        if (l >= m.signals.size()) throw std::invalid_argument("label outside the signal alphabet");
    if (m.initial.size() != n || !is_distribution(m.initial, tol))
        throw std::invalid_argument("initial vector is not a distribution");
}

// xi0 E^{x0} M E^{x1} ... M E^{xk} I, with E^x selecting the states labelled x
inline double mc_function(const MarkovChain& m, const Word& u) {
    if (u.empty()) return 1.0;
    const std::size_t n = m.transition.rows();
    Vec row = m.initial;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] >= m.signals.size()) throw std::invalid_argument("mc_function: unknown signal");
        if (i) row = row * m.transition;
        for (std::size_t s = 0; s < n; ++s)
            if (m.labels[s] != u[i]) row[s] = 0.0;
    }
    return sum(row);
}

inline RandomSequence mc_table(const MarkovChain& m, std::size_t depth) {
    RandomSequence z(m.signals, depth);
    for (std::size_t i = 0; i < z.values.size(); ++i) z.values[i] = mc_function(m, word_at(m.signals.size(), i));
    return z;
}

// eta(u, v) = zeta(u) * f_A(u, v)
inline PairedSequence pair_from(const RandomSequence& z, const GeneralPA& a) {
    if (z.alphabet != a.inputs) throw std::invalid_argument("pair_from: sequence alphabet differs from automaton inputs");
    PairedSequence eta = reaction_table(a, z.depth);
    const std::size_t k = eta.pair_letters();
    for (std::size_t i = 0; i < eta.values.size(); ++i) eta.values[i] *= z(eta.split(word_at(k, i)).first);
    return eta;
}

inline std::pair<RandomSequence, RandomSequence> marginals(const PairedSequence& eta) {
    RandomSequence over_x(eta.inputs, eta.depth), over_y(eta.outputs, eta.depth);
    const std::size_t k = eta.pair_letters();
    for (std::size_t i = 0; i < eta.values.size(); ++i) {
        const auto [u, v] = eta.split(word_at(k, i));
        over_x[u] += eta.values[i];
        over_y[v] += eta.values[i];
    }
    return {over_x, over_y};
}

inline RandomSequence transform(const RandomSequence& z, const GeneralPA& a) {
    return marginals(pair_from(z, a)).second;
}

}  // namespace pa
