#include <gtest/gtest.h>

#include "../support.hpp"
#include "qadm/admissibility.hpp"

using namespace qadm;
using qtest::fig;
using qtest::fixture;

namespace {

AdmissibilityVerdict check_file(const Game& g, const std::string& strat) {
    return check_strategy_admissible(g, load_strategy(g, fixture(strat)));
}

// hi > aval, or lo = hi = aval = acval, at every reachable owned state, by adversary enumeration
// on the untransformed product (prefix-independent measures only)
std::optional<int> independent_violation(const Game& g, const ValueTable& t, const MooreStrategy& s) {
    auto p = product_with_strategy(g, s);
    const auto& pv = t.of(s.player);
    for (int x = 0; x < p.arena.size(); ++x) {
        int v = p.state[x].first;
        if (g.owner(v) != s.player) continue;
        std::optional<Rational> lo, hi;
        qtest::for_each_profile(p.arena, qtest::owned_by(p.arena, s.player, false), [&](const std::vector<int>& c) {
            Rational r = profile_payoff(p.arena, s.player, c, x);
            if (!lo || r < *lo) lo = r;
            if (!hi || r > *hi) hi = r;
        });
        Rational a = pv.aval[t.root[v]], ac = pv.acval[t.root[v]];
        if (!(*hi > a || (*lo == *hi && *hi == a && a == ac))) return x;
    }
    return std::nullopt;
}

void expect_verdict_consistent(const Game& g, const MooreStrategy& s, const AdmissibilityVerdict& v) {
    if (v.admissible) return;
    EXPECT_EQ(g.owner(v.vertex), s.player);
    check_history(g, v.witness);
    EXPECT_EQ(v.witness.front(), g.init());
    EXPECT_EQ(v.witness.back(), v.vertex);
    auto hv = value_at_history(g, v.witness, s.player);
    EXPECT_EQ(hv.aval, v.aval);
    EXPECT_EQ(hv.cval, v.cval);
    EXPECT_EQ(hv.acval, v.acval);
    if (v.violated == Violation::Eq3) {
        EXPECT_LE(v.sigma_cval, v.aval);
        EXPECT_LT(v.sigma_aval, v.aval);
    } else {
        EXPECT_EQ(v.sigma_cval, v.aval);
        EXPECT_EQ(v.sigma_aval, v.aval);
        EXPECT_GT(v.acval, v.aval);
    }
}

std::vector<MooreStrategy> all_memoryless(const Game& g, int player) {
    std::vector<MooreStrategy> out;
    qtest::for_each_profile(g, qtest::owned_by(g, player, true),
                            [&](const std::vector<int>& c) { out.push_back(memoryless_strategy(g, player, c)); });
    return out;
}

} // namespace

TEST(CheckAdmissible, Fig2S2S6RejectedAtS1Eq3) {
    Game g = fig("fig2");
    auto v = check_file(g, "fig2_s2s6.strat");
    ASSERT_FALSE(v.admissible);
    EXPECT_EQ(v.violated, Violation::Eq3);
    EXPECT_EQ(g.name(v.vertex), "s1");
    EXPECT_EQ(v.memory, 0);
    EXPECT_EQ(v.aval, Rational(5));
    EXPECT_EQ(v.sigma_cval, Rational(4));
    EXPECT_EQ(v.sigma_aval, Rational(3));
    EXPECT_EQ(history_str(g, v.witness), "s1");
}

TEST(CheckAdmissible, Fig2S2S5Accepted) { EXPECT_TRUE(check_file(fig("fig2"), "fig2_s2s5.strat").admissible); }
TEST(CheckAdmissible, Fig2S3Accepted) { EXPECT_TRUE(check_file(fig("fig2"), "fig2_s3.strat").admissible); }

TEST(CheckAdmissible, Fig3SigmaInfinityAccepted) {
    EXPECT_TRUE(check_file(fig("fig3"), "fig3_sigma_inf.strat").admissible);
}

TEST(CheckAdmissible, Fig3SigmaKRejectedEq4) {
    Game g = fig("fig3");
    for (int k = 0; k <= 5; ++k) {
        auto s = qtest::sigma_k(g, k);
        auto v = check_strategy_admissible(g, s);
        ASSERT_FALSE(v.admissible) << k;
        EXPECT_EQ(v.violated, Violation::Eq4);
        EXPECT_EQ(g.name(v.vertex), "s1");
        EXPECT_EQ(v.memory, k);
        EXPECT_EQ(v.witness.size(), static_cast<std::size_t>(2 * k + 1));
        EXPECT_EQ(v.sigma_cval, Rational(1));
        EXPECT_EQ(v.sigma_aval, Rational(1));
        EXPECT_EQ(v.aval, Rational(1));
        EXPECT_EQ(v.acval, Rational(2));
        expect_verdict_consistent(g, s, v);
    }
}

TEST(CheckAdmissible, Fig3SigmaOneFromFile) {
    Game g = fig("fig3");
    auto v = check_file(g, "fig3_sigma_1.strat");
    ASSERT_FALSE(v.admissible);
    EXPECT_EQ(v.violated, Violation::Eq4);
    EXPECT_EQ(history_str(g, v.witness), "s1 s2 s1");
}

TEST(CheckAdmissible, Fig1PlayerTwoV2V1RejectedEq3) {
    Game g = fig("fig1");
    auto v = check_file(g, "fig1_p2_v2v1.strat");
    ASSERT_FALSE(v.admissible);
    EXPECT_EQ(v.violated, Violation::Eq3);
    EXPECT_EQ(g.name(v.vertex), "v2");
    EXPECT_EQ(history_str(g, v.witness), "v1 v2");
    EXPECT_EQ(v.aval, Rational(2));
    EXPECT_EQ(v.sigma_aval, Rational(0));
}

TEST(CheckAdmissible, Fig1PlayerTwoV2V4Accepted) { EXPECT_TRUE(check_file(fig("fig1"), "fig1_p2_v2v4.strat").admissible); }

TEST(CheckAdmissible, PlayerMismatchRejected) {
    Game g = fig("fig3");
    auto s = qtest::sigma_k(g, 0);
    s.player = 3;
    EXPECT_THROW(check_strategy_admissible(g, s), Error);
    s.player = 1;
    s.move[0][g.index_of("s1")] = g.index_of("t2");
    EXPECT_THROW(check_strategy_admissible(g, s), Error);
}

TEST(ConstructSco, Fig3LoopsToS2) {
    Game g = fig("fig3");
    auto s = construct_sco(g, 1);
    EXPECT_TRUE(check_strategy_admissible(g, s).admissible);
    Lasso l = qtest::play(g, s, {g.index_of("s2") /*s1 unused*/, g.index_of("s1"), g.index_of("t1"), g.index_of("t2")});
    EXPECT_EQ(lasso_str(g, l), "[s1 s2]");
}

TEST(ConstructSco, Fig1TakesV1V2) {
    Game g = fig("fig1");
    auto s = construct_sco(g, 1);
    EXPECT_EQ(g.name(s.move[s.m0][g.init()]), "v2");
    EXPECT_TRUE(check_strategy_admissible(g, s).admissible);
    std::vector<int> adv{0, g.index_of("v4"), g.index_of("v1"), g.index_of("v2")};
    EXPECT_EQ(lasso_str(g, qtest::play(g, s, adv)), "v1 [v2 v4]");
}

TEST(ConstructSco, SingleSuccessorGame) {
    Game g = parse_game("players 2\nmeasure mp-sup\ninit a\nvertex a 1\nvertex b 2\nedge a b 1 0\nedge b a 0 1\n");
    auto s = construct_sco(g, 1);
    EXPECT_EQ(s.move[s.m0][g.index_of("a")], g.index_of("b"));
    EXPECT_TRUE(check_strategy_admissible(g, s).admissible);
}

TEST(ConstructWco, Fig1Verified) {
    Game g = fig("fig1");
    auto c = construct_wco_candidate(g, 1);
    EXPECT_TRUE(c.verified);
    EXPECT_TRUE(check_strategy_admissible(g, c.strategy).admissible);
}

TEST(ConstructWco, SingleSuccessorVerified) {
    Game g = parse_game("players 2\nmeasure liminf\ninit a\nvertex a 1\nvertex b 2\nedge a b 1 0\nedge b a 0 1\n");
    EXPECT_TRUE(construct_wco_candidate(g, 1).verified);
    EXPECT_TRUE(construct_wco_candidate(g, 2).verified);
}

TEST(ConstructWco, Fig3HasNone) { EXPECT_FALSE(construct_wco_candidate(fig("fig3"), 1).verified); }

TEST(DominatingStrategy, Fig2S2S6ReplacedByBetterContinuation) {
    Game g = fig("fig2");
    auto t = compute_value_table(g);
    auto s = load_strategy(g, fixture("fig2_s2s6.strat"));
    auto v = check_strategy_admissible(t, s);
    auto d = dominating_strategy(t, s, v);
    EXPECT_EQ(g.name(d.move[d.m0][g.init()]), "s3");
}

class AdmissibilityProperties : public ::testing::TestWithParam<Measure> {};

TEST_P(AdmissibilityProperties, ScoAdmissibleOn100Games) {
    for (int seed = 1; seed <= 100; ++seed) {
        Game g = qtest::random_small(seed, GetParam());
        auto t = compute_value_table(g);
        for (int p = 1; p <= 2; ++p) EXPECT_TRUE(check_strategy_admissible(t, construct_sco(t, p)).admissible) << seed;
    }
}

TEST_P(AdmissibilityProperties, VerifiedWcoIsAdmissible) {
    int verified = 0;
    for (int seed = 1; seed <= 100; ++seed) {
        Game g = qtest::random_small(seed, GetParam());
        auto t = compute_value_table(g);
        for (int p = 1; p <= 2; ++p) {
            auto c = construct_wco_candidate(t, p);
            if (!c.verified) continue;
            ++verified;
            EXPECT_TRUE(verify_wco(t, c.strategy));
            EXPECT_TRUE(check_strategy_admissible(t, c.strategy).admissible) << seed;
        }
    }
    EXPECT_GT(verified, 100);
}

TEST_P(AdmissibilityProperties, VerdictsSoundAndDeterministic) {
    for (int seed = 1; seed <= 40; ++seed) {
        Game g = qtest::random_small(seed, GetParam());
        auto t = compute_value_table(g);
        for (int p = 1; p <= 2; ++p)
            for (auto& s : all_memoryless(g, p)) {
                auto v = check_strategy_admissible(t, s);
                auto again = check_strategy_admissible(g, s);
                EXPECT_EQ(v.admissible, again.admissible);
                EXPECT_EQ(v.witness, again.witness);
                expect_verdict_consistent(g, s, v);
                if (GetParam() != Measure::Inf && GetParam() != Measure::Sup)
                    EXPECT_EQ(v.admissible, !independent_violation(g, t, s).has_value()) << seed;
            }
    }
}

// For rejected memoryless strategies on games with at most five vertices the
// constructed replacement weakly dominates against memoryless adversaries
// (optionally steered along the witness first), strictly against one of them.
TEST_P(AdmissibilityProperties, DominanceProbe) {
    int rejected = 0;
    for (int seed = 1; seed <= 60; ++seed) {
        RandomGameOptions o;
        o.size = 2 + seed % 4;
        o.measure = GetParam();
        Game g = random_game(seed, o);
        auto t = compute_value_table(g);
        for (int p = 1; p <= 2; ++p)
            for (auto& s : all_memoryless(g, p)) {
                auto v = check_strategy_admissible(t, s);
                if (v.admissible) continue;
                ++rejected;
                auto d = dominating_strategy(t, s, v);
                check_strategy(g, d);
                bool strict = false;
                qtest::for_each_profile(g, qtest::owned_by(g, p, false), [&](const std::vector<int>& adv) {
                    for (const History& lead : {History{}, v.witness}) {
                        Rational a = payoff_of_lasso(GetParam(), g, p, qtest::play(g, s, adv, lead));
                        Rational b = payoff_of_lasso(GetParam(), g, p, qtest::play(g, d, adv, lead));
                        EXPECT_GE(b, a) << "seed " << seed;
                        strict = strict || b > a;
                    }
                });
                EXPECT_TRUE(strict) << "seed " << seed << " player " << p;
            }
    }
    EXPECT_GT(rejected, 20);
}

INSTANTIATE_TEST_SUITE_P(Measures, AdmissibilityProperties, ::testing::ValuesIn(qtest::all_measures()),
                         [](const auto& info) {
                             std::string n(measure_name(info.param));
                             std::replace(n.begin(), n.end(), '-', '_');
                             return n;
                         });
