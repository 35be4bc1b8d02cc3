#pragma once

#include <algorithm>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "words.hpp"

namespace pa {

// Deterministic automaton with 0/1 output. delta[s][x] == Dfa::none marks a missing move.
struct Dfa {
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    Alphabet inputs;
    std::size_t start = 0;
    std::vector<std::vector<std::size_t>> delta;
    std::vector<bool> accepting;

    std::size_t states() const { return delta.size(); }

    std::size_t run(const Word& u) const {
        std::size_t s = start;
        for (Symbol x : u) {
            s = delta.at(s).at(x);
            if (s == none) throw std::domain_error("dfa: missing transition");
        }
        return s;
    }
    bool accepts(const Word& u) const { return accepting[run(u)]; }

    friend bool operator==(const Dfa&, const Dfa&) = default;
};

inline bool is_total(const Dfa& d) {
    for (const auto& row : d.delta) {
        if (row.size() != d.inputs.size()) return false;
        for (auto t : row)
            if (t == Dfa::none) return false;
    }
    return true;
}

inline void validate(const Dfa& d) {
    const std::size_t n = d.states();
    if (n == 0) throw std::invalid_argument("dfa has no states");
    if (d.start >= n) throw std::invalid_argument("dfa start state out of range");
    if (d.accepting.size() != n) throw std::invalid_argument("dfa accepting flags have wrong size");
    for (const auto& row : d.delta) {
        if (row.size() != d.inputs.size()) throw std::invalid_argument("dfa transition row has wrong size");
        for (auto t : row)
            if (t != Dfa::none && t >= n) throw std::invalid_argument("dfa transition target out of range");
    }
}

struct ReachableDfa {
    Dfa dfa;
    std::size_t rounds = 0;  // k with S_k = S_{k+1}
};

// S_0 = {start}, S_{k+1} = S_k + delta(S_k, X) until stable
inline ReachableDfa dfa_reachable_part(const Dfa& d) {
    validate(d);
    std::vector<bool> in(d.states(), false);
    in[d.start] = true;
    std::vector<std::size_t> layer{d.start};
    std::size_t rounds = 0;
    for (;;) {
        std::vector<std::size_t> next;
        for (auto s : layer)
            for (auto t : d.delta[s])
                if (t != Dfa::none && !in[t]) {
                    in[t] = true;
                    next.push_back(t);
                }
        if (next.empty()) break;
        ++rounds;
        layer = std::move(next);
    }
    std::vector<std::size_t> remap(d.states(), Dfa::none);
    Dfa r;
    r.inputs = d.inputs;
    for (std::size_t s = 0; s < d.states(); ++s)
        if (in[s]) {
            remap[s] = r.accepting.size();
            r.accepting.push_back(d.accepting[s]);
        }
    for (std::size_t s = 0; s < d.states(); ++s) {
        if (!in[s]) continue;
        std::vector<std::size_t> row;
        for (auto t : d.delta[s]) row.push_back(t == Dfa::none ? Dfa::none : remap[t]);
        r.delta.push_back(std::move(row));
    }
    r.start = remap[d.start];
    return {r, rounds};
}

// Renumber states in breadth-first order from the start, letters in alphabet order.
inline Dfa canonical(const Dfa& d) {
    std::vector<std::size_t> order{d.start};
    std::vector<std::size_t> id(d.states(), Dfa::none);
    id[d.start] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto t : d.delta[order[i]])
            if (t != Dfa::none && id[t] == Dfa::none) {
                id[t] = order.size();
                order.push_back(t);
            }
    Dfa c;
    c.inputs = d.inputs;
    c.start = 0;
    for (auto s : order) {
        std::vector<std::size_t> row;
        for (auto t : d.delta[s]) row.push_back(t == Dfa::none ? Dfa::none : id[t]);
        c.delta.push_back(std::move(row));
        c.accepting.push_back(d.accepting[s]);
    }
    return c;
}

// Hopcroft partition refinement on the reachable part of a total DFA.
inline Dfa minimize(const Dfa& input) {
    if (!is_total(input)) throw std::invalid_argument("minimize: dfa must be total");
    const Dfa d = dfa_reachable_part(input).dfa;
    const std::size_t n = d.states();
    const std::size_t k = d.inputs.size();

    std::vector<std::vector<std::vector<std::size_t>>> pre(k, std::vector<std::vector<std::size_t>>(n));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t x = 0; x < k; ++x) pre[x][d.delta[s][x]].push_back(s);

    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> block_of(n);
    {
        std::vector<std::size_t> acc, rej;
        for (std::size_t s = 0; s < n; ++s) (d.accepting[s] ? acc : rej).push_back(s);
        for (auto* b : {&acc, &rej})
            if (!b->empty()) {
                for (auto s : *b) block_of[s] = blocks.size();
                blocks.push_back(*b);
            }
    }
    std::set<std::pair<std::size_t, std::size_t>> work;
    if (blocks.size() == 2) {
        const std::size_t smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
        for (std::size_t x = 0; x < k; ++x) work.insert({smaller, x});
    }
    while (!work.empty()) {
        const auto [a, x] = *work.begin();
        work.erase(work.begin());
        std::vector<bool> hit(n, false);
        for (auto t : blocks[a])
            for (auto s : pre[x][t]) hit[s] = true;
        const std::size_t count = blocks.size();
        for (std::size_t b = 0; b < count; ++b) {
            std::vector<std::size_t> in, out;
            for (auto s : blocks[b]) (hit[s] ? in : out).push_back(s);
            if (in.empty() || out.empty()) continue;
            const std::size_t nb = blocks.size();
            blocks[b] = in;
            blocks.push_back(out);
            for (auto s : out) block_of[s] = nb;
            for (std::size_t y = 0; y < k; ++y) {
                if (work.count({b, y}))
                    work.insert({nb, y});
                else
                    work.insert({in.size() <= out.size() ? b : nb, y});
            }
        }
    }
    Dfa q;
    q.inputs = d.inputs;
    q.start = block_of[d.start];
    for (const auto& b : blocks) {
        std::vector<std::size_t> row;
        for (std::size_t x = 0; x < k; ++x) row.push_back(block_of[d.delta[b.front()][x]]);
        q.delta.push_back(std::move(row));
        q.accepting.push_back(d.accepting[b.front()]);
    }
    return canonical(q);
}

// first word (shortlex) of length <= max_len on which the two automata disagree
inline std::optional<Word> dfa_difference(const Dfa& a, const Dfa& b, std::size_t max_len) {
    if (a.inputs.size() != b.inputs.size()) throw std::invalid_argument("dfa alphabets differ");
    for (const auto& w : all_words(a.inputs.size(), max_len))
        if (a.accepts(w) != b.accepts(w)) return w;
    return std::nullopt;
}

inline std::string to_dot(const Dfa& d, const std::string& name = "dfa") {
    std::string out = "digraph " + name + " {\n  rankdir=LR;\n  init [shape=point];\n";
    for (std::size_t s = 0; s < d.states(); ++s)
        out += "  q" + std::to_string(s) + " [shape=" + (d.accepting[s] ? "doublecircle" : "circle") + "];\n";
    out += "  init -> q" + std::to_string(d.start) + ";\n";
    for (std::size_t s = 0; s < d.states(); ++s)
        for (std::size_t x = 0; x < d.inputs.size(); ++x) {
            const auto t = d.delta[s][x];
            if (t == Dfa::none) continue;
            out += "  q" + std::to_string(s) + " -> q" + std::to_string(t) + " [label=\"" + d.inputs[x] + "\"];\n";
        }
    out += "}\n";
    return out;
}

}  // namespace pa
