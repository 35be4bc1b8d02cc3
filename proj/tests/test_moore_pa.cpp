#include <gtest/gtest.h>

#include "support.hpp"

using namespace pa;
using namespace pa::testing;

namespace {

// 0.x_k ... x_1 in base 3 for the word x_1 ... x_k over {0, 2}
double ternary_value(const Word& u) {
    double v = 0.0, scale = 1.0 / 3.0;
    for (auto it = u.rbegin(); it != u.rend(); ++it, scale /= 3.0) v += (*it == 1 ? 2.0 : 0.0) * scale;
    return v;
}

MoorePA constant_half() {
    MoorePA a = make_moore_pa({"x"}, 1);
    a.trans[0] = Matrix{{1.0}};
    a.lambda = {0.5};
    return a;
}

MoorePA split_half() {
    MoorePA a = make_moore_pa({"x"}, 2);
    a.trans[0] = Matrix::identity(2);
    a.initial = {0.5, 0.5};
    a.lambda = {1.0, 0.0};
    return a;
}

MoorePA three_state() {
    MoorePA a = make_moore_pa({"x"}, 3);
    a.trans[0] = Matrix::identity(3);
    a.initial = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    a.lambda = {0.0, 1.0, 0.5};
    return a;
}

// state s gets row / lambda equal to the mixture w of states 0 and 1, plus an unreachable extra state
MoorePA with_planted_mixture(Rng& rng) {
    MoorePA base = random_moore(rng, 3, 2);
    MoorePA a = make_moore_pa(base.inputs, 5);
    const double w = uniform(rng, 0.1, 0.9);
    for (std::size_t x = 0; x < 2; ++x) {
        Matrix m(5, 5);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = base.trans[x](i, j);
        for (std::size_t j = 0; j < 3; ++j) m(3, j) = w * base.trans[x](0, j) + (1 - w) * base.trans[x](1, j);
        m.set_row(4, random_distribution(rng, 5));
        a.trans[x] = m;
    }
    a.lambda = {base.lambda[0], base.lambda[1], base.lambda[2], w * base.lambda[0] + (1 - w) * base.lambda[1], 0.3};
    a.initial = {0.2, 0.2, 0.2, 0.4, 0.0};
    return a;
}

}  // namespace

TEST(AvgReaction, CantorTernaryExpansion) {
    const auto a = cantor();
    EXPECT_NO_THROW(validate(a));
    EXPECT_NEAR(avg_reaction(a, {1}), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(avg_reaction(a, {1, 0}), 2.0 / 9.0, 1e-15);
    EXPECT_EQ(avg_reaction(a, {}), 0.0);
    for (const auto& u : all_words(2, 8)) EXPECT_NEAR(avg_reaction(a, u), ternary_value(u), 1e-12);
    EXPECT_THROW(avg_reaction(a, {2}), std::invalid_argument);
}

TEST(AvgReaction, ConstantOutput) {
    Rng rng(31);
    MoorePA a = random_moore(rng, 3, 2);
    a.lambda = {0.7, 0.7, 0.7};
    for (const auto& u : all_words(2, 4)) EXPECT_NEAR(avg_reaction(a, u), 0.7, 1e-12);
    EXPECT_EQ(avg_basis_matrix(a).columns.cols(), 1u);
}

TEST(AvgBasis, RankAndTags) {
    const auto b = avg_basis_matrix(cantor());
    EXPECT_EQ(b.columns.cols(), 2u);
    Rng rng(32);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = pick_count(rng, 1, 5);
        const auto a = random_moore(rng, n, 2, 0.4);
        const auto basis = avg_basis_matrix(a);
        EXPECT_LE(basis.columns.cols(), n);
        EXPECT_LE(basis.sweeps, n);
        for (std::size_t j = 0; j < basis.tags.size(); ++j) {
            const Vec col = word_matrix(a, basis.tags[j]) * a.lambda;
            for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(basis.columns(i, j), col[i], 1e-12);
        }
    }
}

TEST(AvgEquivalence, Examples) {
    EXPECT_TRUE(avg_equivalent(constant_half(), split_half()));
    MoorePA one = make_moore_pa({"0", "2"}, 1);
    one.trans = {Matrix{{1.0}}, Matrix{{1.0}}};
    one.lambda = {0.0};
    EXPECT_FALSE(avg_equivalent(cantor(), one));
    EXPECT_TRUE(avg_equivalent(cantor(), cantor()));
    EXPECT_THROW(avg_equivalent(cantor(), constant_half()), std::invalid_argument);
}

TEST(ReduceAvg, ThreeStateInstance) {
    const auto a = three_state();
    const auto rows = avg_basis_matrix(a).columns;
    EXPECT_LT(grid_convex_residual(rows, 2), 1e-12);
    const auto c = find_convex_state(a);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->state, 2u);
    EXPECT_NEAR(c->weights[0], 0.5, 1e-9);

    const auto r = reduce_avg(a);
    EXPECT_EQ(r.states, 2u);
    EXPECT_NO_THROW(validate(r));
    EXPECT_TRUE(avg_equivalent(a, r));
    EXPECT_NEAR(avg_reaction(r, {}), 0.5, 1e-12);
}

TEST(ReduceAvg, MinimalUnchanged) {
    EXPECT_EQ(reduce_avg(cantor()), cantor());
    EXPECT_EQ(reduce_avg(constant_half()), constant_half());
}

TEST(ReduceAvg, PlantedMixturesShrinkAndPreserveReactions) {
    Rng rng(33);
    for (int t = 0; t < 40; ++t) {
        const auto a = with_planted_mixture(rng);
        const auto r = reduce_avg(a);
        EXPECT_LE(r.states, 3u);
        EXPECT_NO_THROW(validate(r, Tolerances{1e-12, 1e-8}));
        EXPECT_TRUE(avg_equivalent(a, r));
        EXPECT_FALSE(find_convex_state(r).has_value());
        for (const auto& u : all_words(2, 4)) EXPECT_NEAR(avg_reaction(a, u), avg_reaction(r, u), 1e-9);
    }
}

TEST(ReduceAvg, ZeroOutputCollapsesToOneState) {
    Rng rng(34);
    MoorePA a = random_moore(rng, 3, 2);
    a.lambda = {0, 0, 0};
    const auto r = reduce_avg(a);
    EXPECT_EQ(r.states, 1u);
    EXPECT_TRUE(avg_equivalent(a, r));
}

TEST(Classify, ThreeKinds) {
    EXPECT_EQ(classify(moore_as_general(cantor())), PaClass::MooreDetOut);
    EXPECT_EQ(classify(rabin()), PaClass::General);

    // output depends on the input letter, move independent of the output
    GeneralPA m = make_general_pa({"a", "b"}, {"p", "q"}, 2);
    const Matrix move{{0.4, 0.6}, {0.5, 0.5}};
    const Matrix out_a{{0.3, 0.7}, {1.0, 0.0}}, out_b{{0.9, 0.1}, {0.2, 0.8}};
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < 2; ++t)
            for (Symbol y = 0; y < 2; ++y) {
                m.at(0, y)(s, t) = move(s, t) * out_a(s, y);
                m.at(1, y)(s, t) = move(s, t) * out_b(s, y);
            }
    EXPECT_NO_THROW(validate(m));
    EXPECT_EQ(classify(m), PaClass::Mealy);
    EXPECT_STREQ(to_string(PaClass::Mealy), "mealy");
}

TEST(MooreAsGeneral, ReactionsMatchOutputs) {
    const auto g = moore_as_general(cantor());
    EXPECT_EQ(g.outputs, (Alphabet{"0", "1"}));
    EXPECT_NO_THROW(validate(g));
    // state 0 emits "0", then the letter 2 moves to state 1 with probability 2/3
    EXPECT_NEAR(reaction(g, {1, 1}, {0, 1}), 2.0 / 3.0, 1e-15);
}

TEST(DfaEmbedding, EndsInTwo) {
    const auto d = ends_in_2();
    const auto a = dfa_to_pa(d);
    EXPECT_EQ(a.states, 2u);
    for (const auto& u : all_words(2, 4)) {
        const double f = avg_reaction(a, u);
        EXPECT_EQ(f, !u.empty() && u.back() == 1 ? 1.0 : 0.0);
        EXPECT_EQ(f == 1.0, d.accepts(u));
    }
}

TEST(DfaEmbedding, SinkAndEmptyLanguage) {
    Dfa sink{{"a", "b"}, 0, {{1, 0}, {1, 1}}, {false, true}};
    const auto a = dfa_to_pa(sink);
    for (const auto& u : all_words(2, 4)) {
        const bool hits = std::find(u.begin(), u.end(), 0) != u.end();
        EXPECT_EQ(avg_reaction(a, u), hits ? 1.0 : 0.0);
    }
    Dfa empty{{"a"}, 0, {{0}}, {false}};
    for (const auto& u : all_words(1, 5)) EXPECT_EQ(avg_reaction(dfa_to_pa(empty), u), 0.0);

    Dfa partial{{"a", "b"}, 0, {{0, Dfa::none}}, {true}};
    EXPECT_THROW(dfa_to_pa(partial), std::invalid_argument);
}

TEST(DfaReachable, DropsIsolatedStates) {
    const auto d = ends_in_2();
    const auto same = dfa_reachable_part(d);
    EXPECT_EQ(same.dfa, d);
    EXPECT_LT(same.rounds, d.states());

    Dfa iso{{"a"}, 0, {{1}, {0}, {2}}, {false, true, true}};
    const auto r = dfa_reachable_part(iso);
    EXPECT_EQ(r.dfa.states(), 2u);
    EXPECT_LT(r.rounds, iso.states());

    Dfa chain{{"a"}, 0, {{1}, {2}, {3}, {3}}, {false, false, false, true}};
    EXPECT_EQ(dfa_reachable_part(chain).rounds, 3u);
}

TEST(DfaMinimize, MergesEquivalentStates) {
    // two copies of the ends-in-2 automaton glued together
    Dfa d{{"0", "2"}, 0, {{2, 1}, {0, 3}, {2, 3}, {0, 1}}, {false, true, false, true}};
    const auto m = minimize(d);
    EXPECT_EQ(m.states(), 2u);
    EXPECT_EQ(canonical(m), canonical(ends_in_2()));
    EXPECT_FALSE(dfa_difference(m, d, 6).has_value());
}
