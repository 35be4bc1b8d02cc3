#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pa/pa.hpp"
#include "pa/serialize.hpp"

namespace {

using pa::io::json;

constexpr int exit_ok = 0;
constexpr int exit_refuted = 1;
constexpr int exit_input = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

pa::Tolerances tol;

std::string num(double v) { return pa::format_real(v); }

double real_arg(const std::string& text, const char* what) {
    try {
        return pa::io::parse_real(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

// "1e-9" sets every tolerance; "zero=1e-10" sets one.
void apply_tolerance(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        const double v = real_arg(spec, "--tolerance");
        tol = {v, v, v, v, v};
        return;
    }
    const auto key = spec.substr(0, eq);
    const double v = real_arg(spec.substr(eq + 1), "--tolerance");
    if (key == "zero") tol.zero = v;
    else if (key == "sum") tol.sum = v;
    else if (key == "rank") tol.rank = v;
    else if (key == "lp") tol.lp = v;
    else if (key == "nonneg") tol.nonneg = v;
    else throw InputError("--tolerance: unknown key '" + key + "'");
}

struct Loaded {
    std::string path;
    json doc;
    std::string kind;
};

Loaded load(const std::string& path) {
    Loaded l{path, pa::io::load_file(path), ""};
    try {
        l.kind = pa::io::kind_of(l.doc);
    } catch (const pa::io::FormatError& e) {
        throw pa::io::FormatError(path + ": " + e.what());
    }
    return l;
}

template <class F>
auto in_file(const Loaded& l, F&& read) {
    try {
        return read(l.doc);
    } catch (const pa::io::FormatError& e) {
        throw pa::io::FormatError(l.path + ": " + e.what());
    }
}

pa::MoorePA moore(const Loaded& l) {
    if (l.kind != "moore_pa") throw InputError(l.path + ": expected a moore_pa file, got " + l.kind);
    return in_file(l, [](const json& j) { return pa::io::moore_pa_from_json(j, tol); });
}
pa::GeneralPA general(const Loaded& l) {
    if (l.kind != "general_pa") throw InputError(l.path + ": expected a general_pa file, got " + l.kind);
    return in_file(l, [](const json& j) { return pa::io::general_pa_from_json(j, tol); });
}
pa::LinearAutomaton linear(const Loaded& l) {
    if (l.kind == "moore_pa") return pa::as_linear(moore(l));
    if (l.kind != "linear_automaton") throw InputError(l.path + ": expected a linear_automaton file, got " + l.kind);
    return in_file(l, [](const json& j) { return pa::io::la_from_json(j); });
}
pa::StringFunctionTable table(const Loaded& l) {
    return in_file(l, [](const json& j) { return pa::io::table_from_json(j, tol); });
}

pa::Word word_arg(const pa::Alphabet& a, const std::string& text) {
    try {
        return pa::parse_word(a, text);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("word '") + text + "': " + e.what());
    }
}

std::string word(const pa::Alphabet& a, const pa::Word& w) { return pa::format_word(a, w); }

void save(const std::string& path, const json& j) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    pa::io::save_file(path, j);
}

double cutpoint(const std::string& text) {
    const double a = real_arg(text, "--cutpoint");
    if (!(a >= 0.0 && a < 1.0)) throw InputError("--cutpoint must lie in [0, 1)");
    return a;
}

double positive(const std::string& text, const char* what) {
    const double d = real_arg(text, what);
    if (!(d > 0.0)) throw InputError(std::string(what) + " must be positive");
    return d;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& path) {
    const auto l = load(path);
    if (l.kind == "general_pa") general(l);
    else if (l.kind == "moore_pa") moore(l);
    else if (l.kind == "linear_automaton") linear(l);
    else if (l.kind == "markov_chain") in_file(l, [](const json& j) { return pa::io::markov_chain_from_json(j, tol); });
    else if (l.kind == "dfa") in_file(l, [](const json& j) { return pa::io::dfa_from_json(j); });
    else if (l.kind == "string_function" || l.kind == "random_sequence") table(l);
    else throw InputError(path + ": unknown kind '" + l.kind + "'");
    std::cout << "valid " << l.kind << '\n';
    return exit_ok;
}

struct ReactArgs {
    std::string file, input, output;
    std::optional<std::size_t> max_len;
};

int cmd_react(const ReactArgs& r) {
    const auto l = load(r.file);
    if (l.kind == "general_pa") {
        const auto a = general(l);
        if (r.max_len) {
            const std::size_t k = a.inputs.size(), m = a.outputs.size();
            const auto t = pa::reaction_table(a, *r.max_len);
            for (std::size_t i = 0; i < t.values.size(); ++i) {
                const auto [u, v] = t.split(pa::word_at(k * m, i));
                std::cout << word(a.inputs, u) << '\t' << word(a.outputs, v) << '\t' << num(t.values[i]) << '\n';
            }
            return exit_ok;
        }
        const auto u = word_arg(a.inputs, r.input);
        if (!r.output.empty() || u.empty()) {
            const auto v = word_arg(a.outputs, r.output);
            std::cout << num(pa::reaction(a, u, v)) << '\n';
            return exit_ok;
        }
        for (const auto& v : pa::words_exactly(a.outputs.size(), u.size()))
            std::cout << word(a.outputs, v) << '\t' << num(pa::reaction(a, u, v)) << '\n';
        return exit_ok;
    }
    std::function<double(const pa::Word&)> f;
    pa::Alphabet x;
    if (l.kind == "markov_chain") {
        auto m = in_file(l, [](const json& j) { return pa::io::markov_chain_from_json(j, tol); });
        x = m.signals;
        f = [m](const pa::Word& u) { return pa::mc_function(m, u); };
    } else if (l.kind == "string_function" || l.kind == "random_sequence") {
        auto t = table(l);
        x = t.alphabet;
        f = [t](const pa::Word& u) {
            if (!t.covers(u)) throw InputError("word longer than the table depth");
            return t(u);
        };
    } else {
        auto la = linear(l);
        x = la.inputs;
        f = [la](const pa::Word& u) { return pa::la_reaction(la, u); };
    }
    if (r.max_len) {
        for (const auto& u : pa::all_words(x.size(), *r.max_len)) std::cout << word(x, u) << '\t' << num(f(u)) << '\n';
        return exit_ok;
    }
    if (!r.output.empty()) throw InputError("--output applies to general_pa files only");
    std::cout << num(f(word_arg(x, r.input))) << '\n';
    return exit_ok;
}

int cmd_reduce(const std::string& file, const std::string& out) {
    const auto l = load(file);
    if (l.kind == "general_pa") {
        const auto a = general(l);
        const auto b = pa::reduce(a, tol);
        save(out, pa::io::to_json(b));
        std::cerr << "states " << a.states << " -> " << b.states << '\n';
        return exit_ok;
    }
    const auto a = moore(l);
    const auto b = pa::reduce_avg(a, tol);
    save(out, pa::io::to_json(b));
    std::cerr << "states " << a.states << " -> " << b.states << '\n';
    return exit_ok;
}

int cmd_equiv(const std::string& f1, const std::string& f2) {
    const auto l1 = load(f1), l2 = load(f2);
    if (l1.kind != l2.kind) throw InputError("files have different kinds: " + l1.kind + " and " + l2.kind);
    bool same = false;
    if (l1.kind == "general_pa") {
        const auto a = general(l1), b = general(l2);
        if (a.inputs != b.inputs || a.outputs != b.outputs) throw InputError("automata have different alphabets");
        same = pa::equivalent(a, b, tol);
    } else if (l1.kind == "moore_pa") {
        const auto a = moore(l1), b = moore(l2);
        if (a.inputs != b.inputs) throw InputError("automata have different input alphabets");
        same = pa::avg_equivalent(a, b, tol);
    } else if (l1.kind == "dfa") {
        const auto a = in_file(l1, [](const json& j) { return pa::io::dfa_from_json(j); });
        const auto b = in_file(l2, [](const json& j) { return pa::io::dfa_from_json(j); });
        if (!pa::is_total(a) || !pa::is_total(b)) throw InputError("equiv on dfa files needs total automata");
        same = pa::minimize(a) == pa::minimize(b);
    } else {
        throw InputError("equiv supports general_pa, moore_pa and dfa files");
    }
    std::cout << (same ? "equivalent" : "not equivalent") << '\n';
    return same ? exit_ok : exit_refuted;
}

struct LangArgs {
    std::string file, cut, input, from, to, out, output_symbol;
    std::size_t max_len = 4;
};

int cmd_lang_member(const LangArgs& a) {
    const auto l = load(a.file);
    if (l.kind == "general_pa") {
        const auto g = general(l);
        const auto y = pa::symbol_of(g.outputs, a.output_symbol);
        const double p = pa::last_output_probability(g, y, word_arg(g.inputs, a.input));
        const bool in = !word_arg(g.inputs, a.input).empty() && p > cutpoint(a.cut);
        std::cout << (in ? "member" : "not member") << '\t' << num(p) << '\n';
        return in ? exit_ok : exit_refuted;
    }
    const auto m = moore(l);
    const auto u = word_arg(m.inputs, a.input);
    const double f = pa::avg_reaction(m, u);
    const bool in = f > cutpoint(a.cut);
    std::cout << (in ? "member" : "not member") << '\t' << num(f) << '\n';
    return in ? exit_ok : exit_refuted;
}

int cmd_lang_enum(const LangArgs& a) {
    const auto m = moore(load(a.file));
    for (const auto& u : pa::enumerate(m, cutpoint(a.cut), a.max_len)) std::cout << word(m.inputs, u) << '\n';
    return exit_ok;
}

int cmd_lang_shift(const LangArgs& a) {
    const auto m = moore(load(a.file));
    const auto b = pa::shift_cutpoint(m, cutpoint(a.from), cutpoint(a.to));
    save(a.out, pa::io::to_json(b));
    return exit_ok;
}

int cmd_lang_fold(const LangArgs& a) {
    save(a.out, pa::io::to_json(pa::fold_initial(moore(load(a.file)))));
    return exit_ok;
}

int cmd_lang_binarize(const LangArgs& a) {
    save(a.out, pa::io::to_json(pa::binarize_output(moore(load(a.file)), tol)));
    return exit_ok;
}

int cmd_lang_general(const LangArgs& a) {
    const auto g = general(load(a.file));
    save(a.out, pa::io::to_json(pa::general_language_pa(g, pa::symbol_of(g.outputs, a.output_symbol))));
    return exit_ok;
}

struct CutArgs {
    std::string file, cut, delta, dot, out;
    std::size_t max_len = 8;
};

int cmd_isolate(const CutArgs& a) {
    const auto m = moore(load(a.file));
    const auto r = pa::isolation_scan(m, cutpoint(a.cut), positive(a.delta, "--delta"), a.max_len, tol);
    if (r.refuted) {
        std::cout << "refuted\t" << word(m.inputs, *r.witness) << '\t' << num(pa::avg_reaction(m, *r.witness)) << '\n';
        return exit_refuted;
    }
    std::cout << "clear up to " << r.max_len << "\tmin distance " << num(r.min_distance) << '\n';
    return exit_ok;
}

void print_dfa(const pa::Dfa& d) {
    std::cout << "start q" << d.start << '\n';
    for (std::size_t s = 0; s < d.states(); ++s)
        for (std::size_t x = 0; x < d.inputs.size(); ++x)
            std::cout << "q" << s << ' ' << d.inputs[x] << " -> q" << d.delta[s][x] << '\n';
    std::cout << "accepting";
    for (std::size_t s = 0; s < d.states(); ++s)
        if (d.accepting[s]) std::cout << " q" << s;
    std::cout << '\n';
}

int cmd_extract(const CutArgs& a) {
    const auto m = moore(load(a.file));
    const auto r = pa::extract_dfa(m, cutpoint(a.cut), positive(a.delta, "--delta"));
    std::cout << "raw states " << r.raw.states() << '\n'
              << "minimal states " << r.minimal.states() << '\n'
              << "bound " << num(r.bound) << '\n'
              << "within bound " << (r.within_bound ? "yes" : "no") << '\n';
    print_dfa(r.minimal);
    if (!a.dot.empty()) {
        std::ofstream dot(a.dot);
        if (!dot) throw InputError(a.dot + ": cannot write file");
        dot << pa::to_dot(r.minimal);
    }
    if (!a.out.empty()) pa::io::save_file(a.out, pa::io::to_json(r.minimal));
    return r.within_bound ? exit_ok : exit_refuted;
}

int cmd_ergodic(const std::string& file) {
    const auto m = moore(load(file));
    const auto r = pa::ergodic_test(m, tol);
    if (r.ergodic) {
        std::cout << "ergodic\n";
        return exit_ok;
    }
    std::cout << "not ergodic\twitness " << word(m.inputs, *r.witness) << '\n';
    return exit_refuted;
}

int cmd_stable(const std::string& file) {
    const auto s = pa::stability_check(moore(load(file)), tol);
    std::cout << pa::to_string(s) << '\n';
    return s.kind == pa::StabilityKind::Unknown ? exit_refuted : exit_ok;
}

int cmd_contract(const std::string& file, std::size_t max_len) {
    const auto m = moore(load(file));
    const auto r = pa::contraction_bound(m, max_len);
    std::cout << "c " << num(r.c) << '\n';
    if (!r.holds) {
        std::cout << "violated at " << word(m.inputs, *r.violation) << '\n';
        return exit_refuted;
    }
    std::cout << "holds up to " << r.checked_len << '\n';
    return exit_ok;
}

int cmd_definite(const CutArgs& a) {
    const auto m = moore(load(a.file));
    const auto r = pa::definite_rep(m, cutpoint(a.cut), positive(a.delta, "--delta"), tol);
    if (!r) {
        std::cout << "no definite representation (matrices neither positive nor ergodic)\n";
        return exit_refuted;
    }
    const std::size_t k = m.inputs.size();
    std::cout << "k " << r->k << '\n';
    for (std::size_t i = 0; i < r->short_words.size(); ++i)
        std::cout << "short\t" << word(m.inputs, pa::word_at(k, i)) << '\t' << (r->short_words[i] ? 1 : 0) << '\n';
    const std::size_t base = pa::words_up_to(k, r->k - 1);
    for (std::size_t i = 0; i < r->suffix.size(); ++i)
        std::cout << "suffix\t" << word(m.inputs, pa::word_at(k, base + i)) << '\t' << (r->suffix[i] ? 1 : 0) << '\n';
    if (r->counterexample) {
        std::cout << "counterexample " << word(m.inputs, *r->counterexample) << '\n';
        return exit_refuted;
    }
    std::cout << (r->checked ? "checked up to " + std::to_string(r->k + 2) : std::string("not checked")) << '\n';
    return exit_ok;
}

struct LaArgs {
    std::string op, a, b, by, cut, out;
    std::size_t rank_bound = 16;
    std::optional<std::size_t> depth;
};

int cmd_la_op(const LaArgs& a) {
    const auto l1 = linear(load(a.a));
    pa::LinearAutomaton r;
    if (a.op == "sum" || a.op == "prod" || a.op == "conv") {
        if (a.b.empty()) throw InputError("la op " + a.op + " needs two files");
        const auto l2 = linear(load(a.b));
        if (l1.inputs != l2.inputs) throw InputError("automata have different alphabets");
        const auto kind = a.op == "sum" ? pa::LaBinary::Sum : a.op == "prod" ? pa::LaBinary::Product : pa::LaBinary::Convolution;
        r = pa::la_combine(kind, l1, l2);
    } else if (a.op == "scale") {
        r = pa::la_scale(real_arg(a.by, "--by"), l1);
    } else if (a.op == "rev") {
        r = pa::la_reverse(l1);
    } else if (a.op == "iter") {
        r = pa::la_iterate(l1, tol);
    } else {
        throw InputError("unknown la op '" + a.op + "'");
    }
    save(a.out, pa::io::to_json(r));
    return exit_ok;
}

int cmd_la_realize(const LaArgs& a) {
    const auto t = table(load(a.a));
    save(a.out, pa::io::to_json(pa::realize(t, a.rank_bound, tol)));
    return exit_ok;
}

int cmd_la_rank(const LaArgs& a) {
    const auto l = load(a.a);
    pa::StringFunctionTable t;
    if (l.kind == "string_function" || l.kind == "random_sequence") {
        t = table(l);
    } else {
        const auto la = linear(l);
        t = pa::la_table(la, a.depth.value_or(2 * la.dim));
    }
    const std::size_t d = a.depth.value_or(t.depth);
    std::cout << pa::e_f_dimension(t, d, tol) << '\n';
    return exit_ok;
}

int cmd_la_expr(const LaArgs& a) {
    const auto l = linear(load(a.a));
    std::cout << pa::to_sexpr(pa::la_to_rational_expr(l, tol), l.inputs) << '\n';
    return exit_ok;
}

int cmd_la_embed(const LaArgs& a) {
    const auto e = pa::la_to_pa_affine(linear(load(a.a)), tol);
    std::cerr << "scale " << num(e.scale) << '\n';
    save(a.out, pa::io::to_json(e.automaton));
    return exit_ok;
}

int cmd_la_lang(const LaArgs& a) {
    const auto e = pa::la_language_pa(linear(load(a.a)), real_arg(a.cut, "--cutpoint"), tol);
    std::cerr << "cutpoint " << num(e.cut) << '\n';
    save(a.out, pa::io::to_json(e.automaton));
    return exit_ok;
}

int cmd_mc_eval(const std::string& file, const std::string& input) {
    const auto l = load(file);
    if (l.kind != "markov_chain") throw InputError(file + ": expected a markov_chain file, got " + l.kind);
    const auto m = in_file(l, [](const json& j) { return pa::io::markov_chain_from_json(j, tol); });
    std::cout << num(pa::mc_function(m, word_arg(m.signals, input))) << '\n';
    return exit_ok;
}

int cmd_rs_transform(const std::string& seq, const std::string& automaton, const std::string& out) {
    const auto z = table(load(seq));
    if (!pa::is_random_sequence(z, tol)) throw InputError(seq + ": values do not form a random sequence");
    const auto g = general(load(automaton));
    if (z.alphabet != g.inputs) throw InputError("sequence alphabet differs from the automaton inputs");
    save(out, pa::io::to_json(pa::transform(z, g), "random_sequence"));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic and linear automata toolkit"};
    app.require_subcommand(1);
    std::vector<std::string> tolerances;
    app.add_option("--tolerance", tolerances, "VALUE for every tolerance, or NAME=VALUE (zero, sum, rank, lp, nonneg)");

    std::function<int()> run;

    std::string file, file2, out;
    auto* validate = app.add_subcommand("validate", "Check a JSON file against its schema and invariants");
    validate->add_option("file", file)->required();
    validate->callback([&] { run = [&] { return cmd_validate(file); }; });

    ReactArgs react;
    auto* react_cmd = app.add_subcommand("react", "Evaluate the reaction on a word");
    react_cmd->add_option("file", react.file)->required();
    react_cmd->add_option("--input,-u", react.input, "input word (empty for the empty word)");
    react_cmd->add_option("--output,-v", react.output, "output word (general_pa)");
    react_cmd->add_option("--max-len", react.max_len, "print every word up to this length instead");
    react_cmd->callback([&] { run = [&] { return cmd_react(react); }; });

    auto* reduce = app.add_subcommand("reduce", "Remove unreachable and convex-combination states");
    reduce->add_option("file", file)->required();
    reduce->add_option("-o,--out", out, "output file (stdout if omitted)");
    reduce->callback([&] { run = [&] { return cmd_reduce(file, out); }; });

    auto* equiv = app.add_subcommand("equiv", "Decide equivalence of two automata");
    equiv->add_option("a", file)->required();
    equiv->add_option("b", file2)->required();
    equiv->callback([&] { run = [&] { return cmd_equiv(file, file2); }; });

    LangArgs lang;
    auto* lang_cmd = app.add_subcommand("lang", "Cut-point languages");
    lang_cmd->require_subcommand(1);
    auto lang_sub = [&](const char* name, const char* help, int (*fn)(const LangArgs&)) {
        auto* c = lang_cmd->add_subcommand(name, help);
        c->add_option("file", lang.file)->required();
        c->callback([&, fn] { run = [&, fn] { return fn(lang); }; });
        return c;
    };
    auto* member = lang_sub("member", "Membership of one word", cmd_lang_member);
    member->add_option("--cutpoint,-a", lang.cut)->required();
    member->add_option("--input,-u", lang.input);
    member->add_option("--output-symbol,-y", lang.output_symbol, "last output symbol (general_pa)");
    auto* enumerate = lang_sub("enum", "List members up to a length", cmd_lang_enum);
    enumerate->add_option("--cutpoint,-a", lang.cut)->required();
    enumerate->add_option("--max-len", lang.max_len);
    auto* shift = lang_sub("shift", "Move the cut-point", cmd_lang_shift);
    shift->add_option("--from", lang.from)->required();
    shift->add_option("--to", lang.to)->required();
    shift->add_option("-o,--out", lang.out);
    lang_sub("fold", "Point initial distribution", cmd_lang_fold)->add_option("-o,--out", lang.out);
    lang_sub("binarize", "0/1 output column", cmd_lang_binarize)->add_option("-o,--out", lang.out);
    auto* gen = lang_sub("general", "Moore automaton for a last-output language", cmd_lang_general);
    gen->add_option("--output-symbol,-y", lang.output_symbol)->required();
    gen->add_option("-o,--out", lang.out);

    CutArgs cut;
    auto cut_cmd = [&](const char* name, const char* help, int (*fn)(const CutArgs&)) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("file", cut.file)->required();
        c->add_option("--cutpoint,-a", cut.cut)->required();
        c->add_option("--delta,-d", cut.delta)->required();
        c->callback([&, fn] { run = [&, fn] { return fn(cut); }; });
        return c;
    };
    cut_cmd("isolate", "Scan for isolation violations", cmd_isolate)->add_option("--max-len", cut.max_len);
    auto* extract = cut_cmd("extract-dfa", "DFA of an isolated cut-point language", cmd_extract);
    extract->add_option("--dot", cut.dot, "write the minimal DFA in DOT format");
    extract->add_option("-o,--out", cut.out, "write the minimal DFA as JSON");
    cut_cmd("definite", "Suffix-table representation", cmd_definite);

    auto* ergodic = app.add_subcommand("ergodic", "Ergodicity via boolean patterns");
    ergodic->add_option("file", file)->required();
    ergodic->callback([&] { run = [&] { return cmd_ergodic(file); }; });

    auto* stable = app.add_subcommand("stable", "Stability classification");
    stable->add_option("file", file)->required();
    stable->callback([&] { run = [&] { return cmd_stable(file); }; });

    std::size_t contract_len = 5;
    auto* contract = app.add_subcommand("contract", "Check the contraction bound");
    contract->add_option("file", file)->required();
    contract->add_option("--max-len", contract_len);
    contract->callback([&] { run = [&] { return cmd_contract(file, contract_len); }; });

    LaArgs la;
    auto* la_cmd = app.add_subcommand("la", "Linear automata");
    la_cmd->require_subcommand(1);
    auto* op = la_cmd->add_subcommand("op", "sum | prod | conv | scale | rev | iter");
    op->add_option("op", la.op)->required()->check(CLI::IsMember({"sum", "prod", "conv", "scale", "rev", "iter"}));
    op->add_option("a", la.a)->required();
    op->add_option("b", la.b);
    op->add_option("--by", la.by, "factor for scale");
    op->add_option("-o,--out", la.out);
    op->callback([&] { run = [&] { return cmd_la_op(la); }; });
    auto la_sub = [&](const char* name, const char* help, int (*fn)(const LaArgs&)) {
        auto* c = la_cmd->add_subcommand(name, help);
        c->add_option("file", la.a)->required();
        c->callback([&, fn] { run = [&, fn] { return fn(la); }; });
        return c;
    };
    auto* realize = la_sub("realize", "Minimal automaton from a table", cmd_la_realize);
    realize->add_option("--rank-bound", la.rank_bound);
    realize->add_option("-o,--out", la.out);
    la_sub("rank", "Hankel rank", cmd_la_rank)->add_option("--depth", la.depth);
    la_sub("expr", "Rational expression", cmd_la_expr);
    la_sub("embed-pa", "Affine embedding into a probabilistic automaton", cmd_la_embed)->add_option("-o,--out", la.out);
    auto* lang_pa = la_sub("lang-pa", "Probabilistic automaton with the same cut language", cmd_la_lang);
    lang_pa->add_option("--cutpoint,-a", la.cut)->required();
    lang_pa->add_option("-o,--out", la.out);

    std::string input;
    auto* mc = app.add_subcommand("mc", "Markov chains");
    mc->require_subcommand(1);
    auto* mc_eval = mc->add_subcommand("eval", "Probability of a signal word");
    mc_eval->add_option("file", file)->required();
    mc_eval->add_option("--input,-u", input);
    mc_eval->callback([&] { run = [&] { return cmd_mc_eval(file, input); }; });

    auto* rs = app.add_subcommand("rs", "Random sequences");
    rs->require_subcommand(1);
    auto* transform = rs->add_subcommand("transform", "Output sequence of an automaton fed a random sequence");
    transform->add_option("sequence", file)->required();
    transform->add_option("automaton", file2)->required();
    transform->add_option("-o,--out", out);
    transform->callback([&] { run = [&] { return cmd_rs_transform(file, file2, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        for (const auto& t : tolerances) apply_tolerance(t);
        return run ? run() : exit_input;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const pa::io::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return exit_input;
}
