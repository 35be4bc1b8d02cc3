#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "words.hpp"

namespace pa {

// Values of a function X^{<=depth} -> R, stored in shortlex order.
struct StringFunctionTable {
    Alphabet alphabet;
    std::size_t depth = 0;
    std::vector<double> values;

    StringFunctionTable() = default;
    StringFunctionTable(Alphabet x, std::size_t d, double fill = 0.0)
        : alphabet(std::move(x)), depth(d), values(words_up_to(alphabet.size(), d), fill) {}

    std::size_t letters() const { return alphabet.size(); }
    bool covers(const Word& u) const { return u.size() <= depth; }

    double operator()(const Word& u) const {
        if (!covers(u)) throw std::out_of_range("word longer than table depth");
        return values[word_index(letters(), u)];
    }
    double& operator[](const Word& u) {
        if (!covers(u)) throw std::out_of_range("word longer than table depth");
        return values[word_index(letters(), u)];
    }

    friend bool operator==(const StringFunctionTable&, const StringFunctionTable&) = default;
};

// A random sequence is a string-function table with the sequence invariants.
using RandomSequence = StringFunctionTable;

// Values f(u, v) for |u| = |v| <= depth. A pair of words is stored as one word
// over the product alphabet, letter (x, y) having index x * |Y| + y.
struct ReactionTable {
    Alphabet inputs;
    Alphabet outputs;
    std::size_t depth = 0;
    std::vector<double> values;

    ReactionTable() = default;
    ReactionTable(Alphabet x, Alphabet y, std::size_t d, double fill = 0.0)
        : inputs(std::move(x)), outputs(std::move(y)), depth(d),
          values(words_up_to(inputs.size() * outputs.size(), d), fill) {}

    std::size_t pair_letters() const { return inputs.size() * outputs.size(); }

    Word pair_word(const Word& u, const Word& v) const {
        if (u.size() != v.size()) throw std::invalid_argument("input and output words differ in length");
        Word w(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] * outputs.size() + v[i];
        return w;
    }
    std::pair<Word, Word> split(const Word& w) const {
        Word u(w.size()), v(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            u[i] = w[i] / outputs.size();
            v[i] = w[i] % outputs.size();
        }
        return {u, v};
    }

    double at_pair(const Word& w) const {
        if (w.size() > depth) throw std::out_of_range("word longer than table depth");
        return values[word_index(pair_letters(), w)];
    }
    double& at_pair(const Word& w) {
        if (w.size() > depth) throw std::out_of_range("word longer than table depth");
        return values[word_index(pair_letters(), w)];
    }
    double operator()(const Word& u, const Word& v) const { return at_pair(pair_word(u, v)); }
    double& operator()(const Word& u, const Word& v) { return at_pair(pair_word(u, v)); }

    friend bool operator==(const ReactionTable&, const ReactionTable&) = default;
};

using PairedSequence = ReactionTable;

}  // namespace pa
