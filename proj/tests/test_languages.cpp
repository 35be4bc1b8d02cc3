#include <gtest/gtest.h>

#include "support.hpp"

using namespace pa;
using namespace pa::testing;

namespace {

double ternary_value(const Word& u) {
    double v = 0.0, scale = 1.0 / 3.0;
    for (auto it = u.rbegin(); it != u.rend(); ++it, scale /= 3.0) v += (*it == 1 ? 2.0 : 0.0) * scale;
    return v;
}

MoorePA single_state(double out, std::size_t letters = 1) {
    MoorePA a = make_moore_pa(pa::testing::letters(letters, 'x'), 1);
    for (auto& m : a.trans) m = Matrix{{1.0}};
    a.lambda = {out};
    return a;
}

MoorePA one_letter(const Matrix& m, Vec lambda) {
    MoorePA a = make_moore_pa({"x"}, m.rows());
    a.trans[0] = m;
    a.lambda = std::move(lambda);
    return a;
}

MoorePA cyclic3() {
    return one_letter(Matrix{{0, 1, 0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0, 0.5}}, {1, 0, 0});
}

// the level `cut` kept at least `gap` away from every value on the words up to `len`
bool clear_of_values(const MoorePA& a, double cut, std::size_t len, double gap) {
    const auto t = avg_table(a, len);
    return std::all_of(t.values.begin(), t.values.end(), [&](double v) { return std::fabs(v - cut) >= gap; });
}

}  // namespace

TEST(Membership, CantorAtOneHalf) {
    const auto a = cantor();
    EXPECT_TRUE(member(a, 0.5, {1}));
    EXPECT_FALSE(member(a, 0.5, {0}));
    EXPECT_FALSE(member(a, 0.5, {}));
    for (const auto& u : all_words(2, 7)) EXPECT_EQ(member(a, 0.5, u), ternary_value(u) > 0.5);
}

TEST(Membership, DfaImageAtZero) {
    const auto d = ends_in_2();
    const auto a = dfa_to_pa(d);
    for (const auto& u : all_words(2, 6)) EXPECT_EQ(member(a, 0.0, u), d.accepts(u));
}

TEST(Membership, EnumerateIsShortlexAndBounded) {
    const auto words = enumerate(cantor(), 0.5, 4);
    ASSERT_FALSE(words.empty());
    EXPECT_EQ(words.front(), Word{1});
    for (std::size_t i = 1; i < words.size(); ++i)
        EXPECT_LT(word_index(2, words[i - 1]), word_index(2, words[i]));
    for (const auto& w : words) {
        EXPECT_LE(w.size(), 4u);
        EXPECT_TRUE(member(cantor(), 0.5, w));
    }
    std::size_t expected = 0;
    for (const auto& u : all_words(2, 4)) expected += ternary_value(u) > 0.5;
    EXPECT_EQ(words.size(), expected);
}

TEST(CutLanguageCheck, RangeOfCutpoint) {
    EXPECT_NO_THROW(validate(CutLanguage{cantor(), 0.0}));
    EXPECT_THROW(validate(CutLanguage{cantor(), 1.0}), std::invalid_argument);
    EXPECT_THROW(validate(CutLanguage{cantor(), -0.1}), std::invalid_argument);
}

TEST(FoldInitial, Examples) {
    const auto b = fold_initial(single_state(0.7));
    EXPECT_EQ(b.states, 2u);
    EXPECT_EQ(b.initial, (Vec{1.0, 0.0}));
    EXPECT_DOUBLE_EQ(avg_reaction(b, {0}), 0.7);
    EXPECT_DOUBLE_EQ(avg_reaction(b, {}), 0.7);

    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_moore(rng, pick_count(rng, 1, 3), 2, 0.3);
        const auto f = fold_initial(a);
        EXPECT_NO_THROW(validate(f));
        for (const auto& u : all_words(2, 4)) EXPECT_NEAR(avg_reaction(f, u), avg_reaction(a, u), 1e-12);
    }
}

TEST(BinarizeOutput, Examples) {
    const auto b = binarize_output(single_state(0.5));
    EXPECT_EQ(b.states, 2u);
    EXPECT_EQ(b.trans[0], (Matrix{{0.5, 0.5}, {0.5, 0.5}}));
    EXPECT_DOUBLE_EQ(avg_reaction(b, {0}), 0.5);

    const auto d = dfa_to_pa(ends_in_2());
    const auto bd = binarize_output(d);
    for (const auto& u : all_words(2, 4)) EXPECT_EQ(avg_reaction(bd, u), avg_reaction(d, u));

    Rng rng(62);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_moore(rng, pick_count(rng, 1, 3), 2, 0.3);
        const auto bin = binarize_output(a);
        EXPECT_EQ(bin.states, 2 * a.states);
        for (double v : bin.lambda) EXPECT_TRUE(v == 0.0 || v == 1.0);
        for (const auto& u : all_words(2, 4)) EXPECT_NEAR(avg_reaction(bin, u), avg_reaction(a, u), 1e-12);
    }
    EXPECT_THROW(binarize_output(single_state(1.5)), std::invalid_argument);
}

TEST(ShiftCutpoint, Examples) {
    const auto lowered = shift_cutpoint(single_state(1.0), 0.5, 0.25);
    for (const auto& u : all_words(1, 4)) EXPECT_DOUBLE_EQ(avg_reaction(lowered, u), 0.5);

    const auto raised = shift_cutpoint(cantor(), 0.5, 0.75);
    for (const auto& u : all_words(2, 5)) EXPECT_EQ(member(raised, 0.75, u), member(cantor(), 0.5, u));

    EXPECT_EQ(shift_cutpoint(cantor(), 0.3, 0.3), cantor());
    EXPECT_THROW(shift_cutpoint(cantor(), 0.5, 0.0), std::domain_error);
    EXPECT_THROW(shift_cutpoint(cantor(), 0.5, 1.0), std::invalid_argument);
}

TEST(ShiftCutpoint, RandomMembershipPreserved) {
    Rng rng(63);
    for (int t = 0; t < 30; ++t) {
        const auto a = random_moore(rng, pick_count(rng, 1, 3), 2, 0.3);
        const double from = uniform(rng, 0.05, 0.95), to = uniform(rng, 0.05, 0.95);
        if (!clear_of_values(a, from, 4, 1e-6)) continue;
        const auto b = shift_cutpoint(a, from, to);
        EXPECT_NO_THROW(validate(b));
        for (const auto& u : all_words(2, 4)) EXPECT_EQ(member(b, to, u), member(a, from, u));
    }
}

TEST(GeneralLanguage, Examples) {
    GeneralPA g = make_general_pa({"x"}, {"y", "z"}, 1);
    g.at(0, 0) = Matrix{{0.3}};
    g.at(0, 1) = Matrix{{0.7}};
    const auto b = general_language_pa(g, 0);
    EXPECT_TRUE(member(b, 0.25, {0}));
    EXPECT_FALSE(member(b, 0.0, {}));
    EXPECT_DOUBLE_EQ(avg_reaction(b, {0}), 0.3);
    EXPECT_THROW(general_language_pa(g, 2), std::invalid_argument);

    Rng rng(64);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_general(rng, pick_count(rng, 1, 3), 2, 2, 0.3);
        const auto m = general_language_pa(a, 1);
        EXPECT_NO_THROW(validate(m));
        for (const auto& u : all_words(2, 3)) {
            // xi A^{u'} I' A^{x y} I, with u = u' x and I' summing over every output
            double direct = 0.0;
            if (!u.empty()) {
                Vec row = a.initial;
                for (std::size_t i = 0; i + 1 < u.size(); ++i) row = row * (a.at(u[i], 0) + a.at(u[i], 1));
                direct = sum(row * a.at(u.back(), 1));
            }
            EXPECT_NEAR(avg_reaction(m, u), direct, 1e-12);
            EXPECT_NEAR(last_output_probability(a, 1, u), direct, 1e-12);
        }
    }
}

TEST(Isolation, CantorScans) {
    const auto clear = isolation_scan(cantor(), 0.5, 1.0 / 6, 8);
    EXPECT_FALSE(clear.refuted);
    EXPECT_EQ(clear.max_len, 8u);
    EXPECT_NEAR(clear.min_distance, 1.0 / 6, 1e-12);

    const auto hit = isolation_scan(cantor(), 2.0 / 3, 0.01, 8);
    EXPECT_TRUE(hit.refuted);
    ASSERT_TRUE(hit.witness.has_value());
    EXPECT_EQ(*hit.witness, Word{1});

    EXPECT_THROW(isolation_scan(cantor(), 0.5, 0.0, 3), std::invalid_argument);
    EXPECT_THROW(isolation_scan(cantor(), 0.5, -1.0, 3), std::invalid_argument);
}

TEST(ExtractDfa, CantorEndsInTwo) {
    const auto ex = extract_dfa(cantor(), 0.5, 1.0 / 6);
    EXPECT_EQ(ex.minimal.states(), 2u);
    EXPECT_EQ(ex.raw.states(), 4u);
    EXPECT_NEAR(ex.bound, 7.0, 1e-12);
    EXPECT_TRUE(ex.within_bound);
    EXPECT_EQ(canonical(ex.minimal), canonical(ends_in_2()));
    const std::size_t len = std::max<std::size_t>(6, 2 * ex.raw.states());
    for (const auto& u : all_words(2, len)) EXPECT_EQ(ex.minimal.accepts(u), member(cantor(), 0.5, u));
}

TEST(ExtractDfa, DfaImagesRoundTrip) {
    Dfa d{{"a", "b"}, 0, {{1, 0}, {2, 0}, {2, 2}, {0, 3}}, {false, false, true, true}};
    const auto ex = extract_dfa(dfa_to_pa(d), 0.0, 0.5);
    const auto reach = dfa_reachable_part(d).dfa;
    EXPECT_FALSE(dfa_difference(ex.minimal, reach, 6).has_value());
    EXPECT_EQ(ex.minimal.states(), minimize(d).states());
}

TEST(ExtractDfa, RandomIsolatedInstancesAgreeWithMembership) {
    Rng rng(65);
    int used = 0;
    for (int t = 0; t < 200 && used < 15; ++t) {
        const auto a = random_moore(rng, 2, 2, 0.4);
        const double cut = uniform(rng, 0.2, 0.8);
        if (!clear_of_values(a, cut, 10, 0.05)) continue;
        ++used;
        const auto ex = extract_dfa(a, cut, 0.05, 20000);
        EXPECT_TRUE(ex.within_bound);
        const std::size_t len = std::min<std::size_t>(10, std::max<std::size_t>(6, 2 * ex.minimal.states()));
        for (const auto& u : all_words(2, len)) EXPECT_EQ(ex.minimal.accepts(u), member(a, cut, u));
    }
    EXPECT_GT(used, 0);
}

TEST(Ergodic, Examples) {
    EXPECT_TRUE(ergodic_test(one_letter(Matrix{{0.5, 0.5}, {0.5, 0.5}}, {1, 0})).ergodic);
    const auto id = ergodic_test(one_letter(Matrix::identity(2), {1, 0}));
    EXPECT_FALSE(id.ergodic);
    EXPECT_EQ(id.witness, Word{0});
    const auto c = ergodic_test(cantor());
    EXPECT_FALSE(c.ergodic);
    EXPECT_EQ(c.witness, Word{0});
    EXPECT_TRUE(ergodic_test(cyclic3()).ergodic);
}

TEST(Ergodic, DecaySmoke) {
    Rng rng(66);
    for (int t = 0; t < 30; ++t) {
        const auto a = random_moore(rng, 3, 2, 0.4);
        if (!ergodic_test(a).ergodic) continue;
        for (int s = 0; s < 5; ++s) {
            Word u(8);
            for (auto& x : u) x = pick_count(rng, 0, 1);
            const Word head(u.begin(), u.begin() + 2);
            EXPECT_LT(norm_spread(word_matrix(a, u)), norm_spread(word_matrix(a, head)) + 1e-12);
        }
    }
}

TEST(Contraction, MixingAndVacuous) {
    const auto r = contraction_bound(mixing());
    EXPECT_DOUBLE_EQ(r.c, 0.1);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(norm_spread(word_matrix(mixing(), {0, 0})), 0.64, 1e-15);
    EXPECT_NEAR(contraction_value(0.1, 2), 0.8, 1e-15);
    EXPECT_EQ(contraction_value(0.0, 7), 1.0);
    EXPECT_EQ(contraction_bound(cantor()).c, 0.0);
    EXPECT_TRUE(contraction_bound(cantor()).holds);

    Rng rng(67);
    for (int t = 0; t < 20; ++t) EXPECT_TRUE(contraction_bound(random_moore(rng, 3, 2)).holds);
}

TEST(Definite, MixingNeedsTwelve) {
    const auto rep = definite_rep(mixing(), 0.4, 0.1);
    ASSERT_TRUE(rep.has_value());
    EXPECT_EQ(rep->k, 12u);
    EXPECT_TRUE(std::all_of(rep->suffix.begin(), rep->suffix.end(), [](bool b) { return b; }));
    EXPECT_TRUE(rep->checked);
    EXPECT_FALSE(rep->counterexample.has_value());
}

TEST(Definite, ConstantAndNonErgodic) {
    const auto c = definite_rep(single_state(0.9, 2), 0.5, 0.1);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->k, 1u);
    EXPECT_FALSE(definite_rep(cantor(), 0.5, 1.0 / 6).has_value());
    EXPECT_THROW(definite_rep(mixing(), 0.4, 0.0), std::invalid_argument);
}

TEST(Definite, SuffixDeterminesMembership) {
    Rng rng(68);
    int used = 0;
    for (int t = 0; t < 200 && used < 10; ++t) {
        const auto a = random_moore(rng, 2, 2);
        const double cut = uniform(rng, 0.2, 0.8);
        if (!clear_of_values(a, cut, 8, 0.1)) continue;
        const auto rep = definite_rep(a, cut, 0.1);
        ASSERT_TRUE(rep.has_value());
        if (rep->k > 8) continue;
        ++used;
        EXPECT_FALSE(rep->counterexample.has_value());
        for (const auto& u : all_words(2, rep->k + 2)) EXPECT_EQ(rep->accepts(2, u), member(a, cut, u));
    }
    EXPECT_GT(used, 0);
}

TEST(Stability, Kinds) {
    EXPECT_EQ(to_string(stability_check(mixing())), "stable-all");
    EXPECT_EQ(stability_check(one_letter(Matrix::identity(2), {1, 0})).kind, StabilityKind::Unknown);
    const auto s = stability_check(cyclic3());
    EXPECT_EQ(s.kind, StabilityKind::PositiveWordStable);
    EXPECT_EQ(s.length, 2u);
    EXPECT_EQ(to_string(s), "positive-word-stable 2");
    EXPECT_EQ(stability_check(one_letter(Matrix{{0, 1}, {0.5, 0.5}}, {1, 0})).kind, StabilityKind::StableAll);
}
