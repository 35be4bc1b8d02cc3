#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pa {

using Symbol = std::size_t;
using Word = std::vector<Symbol>;
using Alphabet = std::vector<std::string>;

// Words over a k-letter alphabet are numbered in shortlex order:
// all words of length 0, then length 1 in lexicographic order, and so on.
inline std::size_t words_of_length(std::size_t k, std::size_t len) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < len; ++i) c *= k;
    return c;
}

inline std::size_t words_up_to(std::size_t k, std::size_t len) {
    std::size_t c = 0;
    for (std::size_t i = 0; i <= len; ++i) c += words_of_length(k, i);
    return c;
}

inline std::size_t word_index(std::size_t k, const Word& w) {
    std::size_t idx = 0;
    for (Symbol s : w) idx = idx * k + s;
    return (w.empty() ? 0 : words_up_to(k, w.size() - 1)) + idx;
}

inline Word word_at(std::size_t k, std::size_t index) {
    std::size_t len = 0;
    while (index >= words_of_length(k, len)) {
        index -= words_of_length(k, len);
        ++len;
    }
    Word w(len);
    for (std::size_t i = len; i-- > 0;) {
        w[i] = index % k;
        index /= k;
    }
    return w;
}

// shortlex list of every word with length <= max_len
inline std::vector<Word> all_words(std::size_t k, std::size_t max_len) {
    std::vector<Word> out;
    out.reserve(words_up_to(k, max_len));
    out.emplace_back();
    for (std::size_t first = 0; first < out.size(); ++first) {
        if (out[first].size() == max_len) continue;
        for (Symbol s = 0; s < k; ++s) {
            Word w = out[first];
            w.push_back(s);
            out.push_back(std::move(w));
        }
    }
    return out;
}

inline std::vector<Word> words_exactly(std::size_t k, std::size_t len) {
    std::vector<Word> out;
    out.reserve(words_of_length(k, len));
    Word w(len, 0);
    for (std::size_t n = 0; n < words_of_length(k, len); ++n) {
        out.push_back(w);
        for (std::size_t i = len; i-- > 0;) {
            if (++w[i] < k) break;
            w[i] = 0;
        }
    }
    return out;
}

inline Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

inline bool single_char_symbols(const Alphabet& a) {
    return std::all_of(a.begin(), a.end(), [](const std::string& s) { return s.size() == 1; });
}

inline Symbol symbol_of(const Alphabet& a, const std::string& name) {
    auto it = std::find(a.begin(), a.end(), name);
    if (it == a.end()) throw std::invalid_argument("unknown symbol '" + name + "'");
    return static_cast<Symbol>(it - a.begin());
}

// Single-character alphabets are written without separators ("202"),
// others as comma-separated names ("up,down").
inline Word parse_word(const Alphabet& a, const std::string& text) {
    Word w;
    if (text.empty()) return w;
    if (single_char_symbols(a)) {
        for (char c : text) w.push_back(symbol_of(a, std::string(1, c)));
        return w;
    }
    std::size_t start = 0;
    for (;;) {
        auto comma = text.find(',', start);
        w.push_back(symbol_of(a, text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return w;
}

inline std::string format_word(const Alphabet& a, const Word& w, const std::string& empty = "ε") {
    if (w.empty()) return empty;
    const bool compact = single_char_symbols(a);
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!compact && i) out += ',';
        out += a.at(w[i]);
    }
    return out;
}

}  // namespace pa
