#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfa.hpp"
#include "general_pa.hpp"
#include "linear_automaton.hpp"
#include "moore_pa.hpp"
#include "sequences.hpp"

namespace pa::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decimal or "p/q".
inline double parse_real(const std::string& text) {
    auto number = [&](const std::string& s) {
        const char* begin = s.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (s.empty() || end != begin + s.size()) throw std::invalid_argument("not a number: '" + text + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return number(text);
    const double den = number(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return number(text.substr(0, slash)) / den;
}

namespace detail {

class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& what) const { throw FormatError(path_ + ": " + what); }

    const json& raw() const { return j_; }
    const std::string& path() const { return path_; }

    Reader operator[](const char* key) const {
        if (!j_.is_object()) fail("expected an object");
        if (!j_.contains(key)) fail(std::string("missing field \"") + key + "\"");
        return {j_.at(key), path_ + "." + key};
    }
    Reader at(std::size_t i) const { return {j_.at(i), path_ + "[" + std::to_string(i) + "]"}; }
    Reader member(const std::string& key) const {
        if (!j_.is_object()) fail("expected an object");
        if (!j_.contains(key)) fail("missing key \"" + key + "\"");
        return {j_.at(key), path_ + "[\"" + key + "\"]"};
    }
    bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

    std::size_t size() const {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }

    double real() const {
        try {
            if (j_.is_number()) return j_.get<double>();
            if (j_.is_string()) return parse_real(j_.get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        fail("expected a number");
    }
    std::size_t index() const {
        if (!j_.is_number_integer() && !j_.is_number_unsigned()) fail("expected a non-negative integer");
        const auto v = j_.get<long long>();
        if (v < 0) fail("expected a non-negative integer");
        return static_cast<std::size_t>(v);
    }
    std::string text() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }
    bool flag() const {
        if (!j_.is_boolean()) fail("expected true or false");
        return j_.get<bool>();
    }

    Alphabet alphabet() const {
        Alphabet a;
        for (std::size_t i = 0; i < size(); ++i) a.push_back(at(i).text());
        if (a.empty()) fail("alphabet is empty");
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (a[i] == a[j]) fail("duplicate symbol \"" + a[i] + "\"");
        return a;
    }
    Vec vec(std::size_t expected) const {
        if (size() != expected) fail("expected " + std::to_string(expected) + " entries, got " + std::to_string(size()));
        Vec v(expected);
        for (std::size_t i = 0; i < expected; ++i) v[i] = at(i).real();
        return v;
    }
    Matrix matrix(std::size_t rows, std::size_t cols) const {
        if (size() != rows) fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(size()));
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) m.set_row(i, at(i).vec(cols));
        return m;
    }

private:
    const json& j_;
    std::string path_;
};

inline json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rows;
}

inline void expect_kind(const Reader& r, const std::string& kind) {
    const auto version = r["schema"];
    if (version.index() != static_cast<std::size_t>(schema_version))
        version.fail("unsupported schema version " + std::to_string(version.index()));
    const auto k = r["kind"].text();
    if (k != kind) r["kind"].fail("expected kind \"" + kind + "\", got \"" + k + "\"");
}

template <class F>
void validated(const Reader& r, F&& check) {
    try {
        check();
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    } catch (const std::domain_error& e) {
        r.fail(e.what());
    }
}

inline json header(const char* kind) { return json{{"schema", schema_version}, {"kind", kind}}; }

}  // namespace detail

inline std::string kind_of(const json& j) {
    const detail::Reader r(j, "$");
    return r["kind"].text();
}

// --- general_pa ------------------------------------------------------------

inline json to_json(const GeneralPA& a) {
    json j = detail::header("general_pa");
    j["inputs"] = a.inputs;
    j["outputs"] = a.outputs;
    j["states"] = a.states;
    json trans = json::object();
    for (Symbol x = 0; x < a.inputs.size(); ++x)
        for (Symbol y = 0; y < a.outputs.size(); ++y)
            trans[a.inputs[x] + "|" + a.outputs[y]] = detail::matrix_json(a.at(x, y));
    j["trans"] = trans;
    j["initial"] = a.initial;
    return j;
}

inline GeneralPA general_pa_from_json(const json& j, const Tolerances& tol = {}) {
    const detail::Reader r(j, "$");
    detail::expect_kind(r, "general_pa");
    GeneralPA a = make_general_pa(r["inputs"].alphabet(), r["outputs"].alphabet(), r["states"].index());
    const auto trans = r["trans"];
    if (!trans.raw().is_object()) trans.fail("expected an object keyed \"x|y\"");
    if (trans.raw().size() != a.pair_letters())
        trans.fail("expected " + std::to_string(a.pair_letters()) + " matrices, got " + std::to_string(trans.raw().size()));
    for (Symbol x = 0; x < a.inputs.size(); ++x)
        for (Symbol y = 0; y < a.outputs.size(); ++y)
            a.at(x, y) = trans.member(a.inputs[x] + "|" + a.outputs[y]).matrix(a.states, a.states);
    a.initial = r["initial"].vec(a.states);
    detail::validated(r, [&] { validate(a, tol); });
    return a;
}

// --- moore_pa and linear_automaton (same layout, different checks) ---------

namespace detail {

inline json weighted_json(const char* kind, const Alphabet& inputs, std::size_t n, const std::vector<Matrix>& trans,
                          const Vec& initial, const Vec& lambda) {
    json j = header(kind);
    j["inputs"] = inputs;
    j["states"] = n;
    json t = json::object();
    for (std::size_t x = 0; x < inputs.size(); ++x) t[inputs[x]] = matrix_json(trans[x]);
    j["trans"] = t;
    j["initial"] = initial;
    j["lambda"] = lambda;
    return j;
}

struct Weighted {
    Alphabet inputs;
    std::size_t n = 0;
    std::vector<Matrix> trans;
    Vec initial, lambda;
};

inline Weighted weighted_from(const Reader& r, const std::string& kind) {
    expect_kind(r, kind);
    Weighted w;
    w.inputs = r["inputs"].alphabet();
    w.n = r["states"].index();
    if (w.n == 0) r["states"].fail("must be positive");
    const auto trans = r["trans"];
    if (!trans.raw().is_object()) trans.fail("expected an object keyed by input symbol");
    if (trans.raw().size() != w.inputs.size())
        trans.fail("expected " + std::to_string(w.inputs.size()) + " matrices, got " + std::to_string(trans.raw().size()));
    for (const auto& x : w.inputs) w.trans.push_back(trans.member(x).matrix(w.n, w.n));
    w.initial = r["initial"].vec(w.n);
    w.lambda = r["lambda"].vec(w.n);
    return w;
}

}  // namespace detail

inline json to_json(const MoorePA& a) {
    return detail::weighted_json("moore_pa", a.inputs, a.states, a.trans, a.initial, a.lambda);
}

inline MoorePA moore_pa_from_json(const json& j, const Tolerances& tol = {}) {
    const detail::Reader r(j, "$");
    auto w = detail::weighted_from(r, "moore_pa");
    MoorePA a{w.inputs, w.n, w.trans, w.initial, w.lambda};
    detail::validated(r, [&] { validate(a, tol); });
    return a;
}

inline json to_json(const LinearAutomaton& l) {
    return detail::weighted_json("linear_automaton", l.inputs, l.dim, l.trans, l.initial, l.output);
}

inline LinearAutomaton la_from_json(const json& j) {
    const detail::Reader r(j, "$");
    auto w = detail::weighted_from(r, "linear_automaton");
    LinearAutomaton l{w.inputs, w.n, w.initial, w.trans, w.lambda};
    detail::validated(r, [&] { validate(l); });
    return l;
}

// --- markov_chain ----------------------------------------------------------

inline json to_json(const MarkovChain& m) {
    json j = detail::header("markov_chain");
    j["signals"] = m.signals;
    j["matrix"] = detail::matrix_json(m.transition);
    json labels = json::array();
    for (auto l : m.labels) labels.push_back(m.signals.at(l));
    j["labels"] = labels;
    j["initial"] = m.initial;
    return j;
}

inline MarkovChain markov_chain_from_json(const json& j, const Tolerances& tol = {}) {
    const detail::Reader r(j, "$");
    detail::expect_kind(r, "markov_chain");
    MarkovChain m;
    m.signals = r["signals"].alphabet();
    const auto rows = r["matrix"];
    const std::size_t n = rows.size();
    if (n == 0) rows.fail("matrix is empty");
    m.transition = rows.matrix(n, n);
    const auto labels = r["labels"];
    if (labels.size() != n) labels.fail("expected one label per state");
    for (std::size_t i = 0; i < n; ++i) {
        const auto name = labels.at(i).text();
        const auto it = std::find(m.signals.begin(), m.signals.end(), name);
        if (it == m.signals.end()) labels.at(i).fail("unknown signal \"" + name + "\"");
        m.labels.push_back(static_cast<Symbol>(it - m.signals.begin()));
    }
    m.initial = r["initial"].vec(n);
    detail::validated(r, [&] { validate(m, tol); });
    return m;
}

// --- dfa -------------------------------------------------------------------

inline json to_json(const Dfa& d) {
    json j = detail::header("dfa");
    j["inputs"] = d.inputs;
    j["states"] = d.states();
    j["start"] = d.start;
    json delta = json::object();
    for (std::size_t x = 0; x < d.inputs.size(); ++x) {
        json targets = json::array();
        for (std::size_t s = 0; s < d.states(); ++s) {
            const auto t = d.delta[s][x];
            if (t == Dfa::none)
                targets.push_back(nullptr);
            else
                targets.push_back(t);
        }
        delta[d.inputs[x]] = targets;
    }
    j["delta"] = delta;
    json acc = json::array();
    for (std::size_t s = 0; s < d.states(); ++s)
        if (d.accepting[s]) acc.push_back(s);
    j["accepting"] = acc;
    return j;
}

inline Dfa dfa_from_json(const json& j) {
    const detail::Reader r(j, "$");
    detail::expect_kind(r, "dfa");
    Dfa d;
    d.inputs = r["inputs"].alphabet();
    const std::size_t n = r["states"].index();
    if (n == 0) r["states"].fail("must be positive");
    d.start = r["start"].index();
    d.delta.assign(n, std::vector<std::size_t>(d.inputs.size(), Dfa::none));
    d.accepting.assign(n, false);
    const auto delta = r["delta"];
    for (std::size_t x = 0; x < d.inputs.size(); ++x) {
        const auto row = delta.member(d.inputs[x]);
        if (row.size() != n) row.fail("expected one target per state");
        for (std::size_t s = 0; s < n; ++s) {
            const auto t = row.at(s);
            if (t.raw().is_null()) continue;
            d.delta[s][x] = t.index();
        }
    }
    const auto acc = r["accepting"];
    for (std::size_t i = 0; i < acc.size(); ++i) {
        const auto s = acc.at(i).index();
        if (s >= n) acc.at(i).fail("state out of range");
        d.accepting[s] = true;
    }
    detail::validated(r, [&] { validate(d); });
    return d;
}

// --- string_function / random_sequence -------------------------------------

inline json to_json(const StringFunctionTable& t, const char* kind = "string_function") {
    json j = detail::header(kind);
    j["alphabet"] = t.alphabet;
    j["depth"] = t.depth;
    j["values"] = t.values;
    return j;
}

inline StringFunctionTable table_from_json(const json& j, const Tolerances& tol = {}) {
    const detail::Reader r(j, "$");
    const auto kind = r["kind"].text();
    if (kind != "string_function" && kind != "random_sequence")
        r["kind"].fail("expected \"string_function\" or \"random_sequence\", got \"" + kind + "\"");
    detail::expect_kind(r, kind);
    StringFunctionTable t(r["alphabet"].alphabet(), r["depth"].index());
    t.values = r["values"].vec(t.values.size());
    if (kind == "random_sequence" && !is_random_sequence(t, tol))
        r.fail("values do not form a random sequence (non-negative, consistent, 1 at the empty word)");
    return t;
}

// --- files -----------------------------------------------------------------

inline json parse_text(const std::string& text, const std::string& name) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw FormatError(name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                          e.what() + ")");
    }
}

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

inline void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError(path + ": cannot write file");
    out << j.dump(2) << '\n';
}

}  // namespace pa::io
