#include <gtest/gtest.h>

#include <random>

#include "../support.hpp"
#include "qadm/solvers.hpp"
#include "qadm/transform.hpp"

using namespace qadm;
using qtest::fig;

namespace {

int idx(const Game& g, const char* n) { return g.index_of(n); }

// brute force: vertex v is won by player 0 iff some memoryless choice of 0
// beats every memoryless choice of 1
std::vector<char> brute_parity(const ParityGame& pg) {
    const int n = pg.size();
    auto profiles = [&](int side) {
        std::vector<std::vector<int>> all{std::vector<int>(n)};
        for (int v = 0; v < n; ++v) {
            std::vector<std::vector<int>> next;
            for (auto& c : all) {
                if (pg.owner[v] != side) {
                    c[v] = pg.succ[v][0];
                    next.push_back(c);
                    continue;
                }
                for (int t : pg.succ[v]) {
                    c[v] = t;
                    next.push_back(c);
                }
            }
            all = std::move(next);
        }
        return all;
    };
    auto mine = profiles(0), theirs = profiles(1);
    std::vector<char> win(n, 0);
    for (int v = 0; v < n; ++v)
        for (auto& a : mine) {
            bool all = true;
            for (auto& b : theirs) {
                std::vector<int> seen(n, -1), path;
                int x = v;
                while (seen[x] < 0) {
                    seen[x] = static_cast<int>(path.size());
                    path.push_back(x);
                    x = pg.owner[x] == 0 ? a[x] : b[x];
                }
                int top = 0;
                for (std::size_t k = seen[x]; k < path.size(); ++k) top = std::max(top, pg.priority[path[k]]);
                if (top % 2) {
                    all = false;
                    break;
                }
            }
            if (all) {
                win[v] = 1;
                break;
            }
        }
    return win;
}

ParityGame random_parity(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = 6;
    ParityGame pg;
    pg.succ.resize(n);
    for (int v = 0; v < n; ++v) {
        pg.owner.push_back(static_cast<int>(rng() % 2));
        pg.priority.push_back(static_cast<int>(rng() % 5));
        int k = 1 + static_cast<int>(rng() % 3);
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        pg.succ[v].assign(all.begin(), all.begin() + k);
        std::sort(pg.succ[v].begin(), pg.succ[v].end());
    }
    return pg;
}

// extremes by enumerating memoryless adversary choices in the product arena
std::pair<Rational, Rational> extremes_by_enumeration(const ProductGame& p, int player, int x) {
    std::optional<Rational> lo, hi;
    qtest::for_each_profile(p.arena, qtest::owned_by(p.arena, player, false), [&](const std::vector<int>& c) {
        Rational r = profile_payoff(p.arena, player, c, x);
        if (!lo || r < *lo) lo = r;
        if (!hi || r > *hi) hi = r;
    });
    return {*lo, *hi};
}

} // namespace

TEST(Attractor, WholeArenaTarget) {
    Game g = fig("fig1");
    Arena a = coalition_arena(g, 1);
    auto r = attractor(a, kMax, std::vector<char>(a.size(), 1));
    for (char w : r.win) EXPECT_TRUE(w);
}

TEST(Attractor, AdversaryEscapes) {
    Game g = parse_game("players 2\nmeasure liminf\ninit v\nvertex v 2\nvertex t 1\nvertex e 1\n"
                        "edge v t 0 0\nedge v e 0 0\nedge t t 0 0\nedge e e 0 0\n");
    Arena a = coalition_arena(g, 1);
    std::vector<char> target(a.size(), 0);
    target[idx(g, "t")] = 1;
    auto r = attractor(a, kMax, target);
    EXPECT_FALSE(r.win[idx(g, "v")]);
    EXPECT_TRUE(r.win[idx(g, "t")]);
}

TEST(Attractor, Fig1PlayerTwoToEdgeV2V4) {
    Game g = fig("fig1");
    Arena a = coalition_arena(g, 1);  // player 2 is the merged min side
    int v2 = idx(g, "v2"), v4 = idx(g, "v4");
    auto r = attractor(a, kMin, std::vector<char>(a.size(), 0),
                       [&](int v, int k) { return v == v2 && a.succ[v][k].to == v4; });
    EXPECT_TRUE(r.win[v2]);
    EXPECT_TRUE(r.win[v4]);
    EXPECT_FALSE(r.win[idx(g, "v1")]);
    EXPECT_FALSE(r.win[idx(g, "v3")]);
    EXPECT_EQ(r.strategy[v2], v4);
}

TEST(SolveThreshold, Fig1LimInfThetaOneAllWinning) {
    Game g = fig("fig1_liminf");
    auto r = solve_threshold(coalition_arena(g, 1), Measure::LimInf, 1);
    for (char w : r.win) EXPECT_TRUE(w);
}

TEST(SolveThreshold, Fig1LimInfThetaTwoEmpty) {
    Game g = fig("fig1_liminf");
    auto r = solve_threshold(coalition_arena(g, 1), Measure::LimInf, 2);
    for (char w : r.win) EXPECT_FALSE(w);
}

TEST(SolveThreshold, BelowMinimumWeightWholeArena) {
    for (Measure m : {Measure::LimInf, Measure::LimSup}) {
        Game g = qtest::random_small(17, m);
        auto r = solve_threshold(coalition_arena(g, 1), m, -3);
        for (char w : r.win) EXPECT_TRUE(w);
    }
}

TEST(SolveThreshold, MeanPayoffRejected) {
    Game g = fig("fig1");
    EXPECT_THROW(solve_threshold(coalition_arena(g, 1), Measure::MeanPayoffInf, 1), Error);
}

TEST(ZeroSumValue, Fig1MeanPayoffPlayerOne) {
    Game g = fig("fig1");
    auto z = zero_sum_value(coalition_arena(g, 1), g.measure());
    for (auto& v : z.value) EXPECT_EQ(v, Rational(1));
}

TEST(ZeroSumValue, Fig1MeanPayoffPlayerTwo) {
    Game g = fig("fig1");
    auto z = zero_sum_value(coalition_arena(g, 2), g.measure());
    EXPECT_EQ(z.value[idx(g, "v1")], Rational(0));
    EXPECT_EQ(z.value[idx(g, "v3")], Rational(0));
    EXPECT_EQ(z.value[idx(g, "v2")], Rational(2));
    EXPECT_EQ(z.value[idx(g, "v4")], Rational(2));
}

TEST(ZeroSumValue, SelfLoopAnyMeasure) {
    for (Measure m : qtest::all_measures()) {
        Game g = parse_game("players 1\nmeasure liminf\ninit a\nvertex a 1\nedge a a -5/3\n").with_measure(m);
        auto tg = make_prefix_independent(g);
        auto z = zero_sum_value(coalition_arena(tg.game, 1), m);
        for (auto& v : z.value) EXPECT_EQ(v, Rational(-5, 3));
    }
}

TEST(ZeroSumValue, MeanPayoffFractional) {
    Game g = parse_game("players 2\nmeasure mp-sup\ninit a\nvertex a 1\nvertex b 2\nvertex c 2\n"
                        "edge a b 1 0\nedge b c 0 0\nedge c a 0 0\nedge b a 2 0\n");
    auto z = zero_sum_value(coalition_arena(g, 1), g.measure());
    EXPECT_EQ(z.value[idx(g, "a")], Rational(1, 3));
}

TEST(OnePlayerMax, Fig1V1IsTwo) {
    Game g = fig("fig1");
    EXPECT_EQ(one_player_max_value(g, 1)[idx(g, "v1")], Rational(2));
}

TEST(OnePlayerMax, Fig2S1IsTen) {
    Game g = fig("fig2");
    EXPECT_EQ(one_player_max_value(g, 1)[idx(g, "s1")], Rational(10));
}

TEST(OnePlayerMax, OnlyZeroSelfLoop) {
    Game g = parse_game("players 1\nmeasure mp-inf\ninit a\nvertex a 1\nvertex b 1\nedge a b 5\nedge b b 0\n");
    for (Measure m : {Measure::LimInf, Measure::LimSup, Measure::MeanPayoffInf, Measure::MeanPayoffSup})
        for (auto& v : one_player_max_value(g.with_measure(m), 1)) EXPECT_EQ(v, Rational(0));
}

TEST(CooperativeLasso, Fig1FromV1) {
    Game g = fig("fig1");
    Lasso l = cooperative_lasso(coalition_arena(g, 1), g.measure(), g.init());
    EXPECT_EQ(payoff_of_lasso(g.measure(), g, 1, l), Rational(2));
    EXPECT_EQ(lasso_str(g, l), "v1 [v2 v4]");
}

TEST(SolveParity, AllZeroPriorities) {
    ParityGame pg{{{1}, {0, 1}}, {0, 1}, {0, 0}};
    auto [w0, w1] = solve_parity(pg);
    EXPECT_TRUE(w0.win[0] && w0.win[1]);
    EXPECT_FALSE(w1.win[0] || w1.win[1]);
}

TEST(SolveParity, OddSelfLoop) {
    ParityGame pg{{{0}}, {0}, {1}};
    auto [w0, w1] = solve_parity(pg);
    EXPECT_TRUE(w1.win[0]);
    EXPECT_FALSE(w0.win[0]);
}

TEST(SolveParity, MatchesBruteForceOn200Games) {
    for (int seed = 1; seed <= 200; ++seed) {
        ParityGame pg = random_parity(seed);
        auto [w0, w1] = solve_parity(pg);
        auto brute = brute_parity(pg);
        for (int v = 0; v < pg.size(); ++v) {
            ASSERT_EQ(static_cast<bool>(w0.win[v]), static_cast<bool>(brute[v])) << "seed " << seed << " v" << v;
            ASSERT_NE(w0.win[v], w1.win[v]);
            // the returned strategies stay inside their regions
            if (w0.win[v] && pg.owner[v] == 0) EXPECT_TRUE(w0.win[w0.strategy[v]]);
            if (w1.win[v] && pg.owner[v] == 1) EXPECT_TRUE(w1.win[w1.strategy[v]]);
        }
    }
}

TEST(FixedStrategyExtremes, Fig2S2S6) {
    Game g = fig("fig2");
    auto p = product_with_strategy(g, load_strategy(g, qtest::fixture("fig2_s2s6.strat")));
    auto ex = fixed_strategy_extremes(p, 1);
    int x = p.find(idx(g, "s1"), 0);
    EXPECT_EQ(ex[x].first, Rational(3));
    EXPECT_EQ(ex[x].second, Rational(4));
    for (int y = 0; y < p.arena.size(); ++y) EXPECT_EQ(ex[y], extremes_by_enumeration(p, 1, y));
}

TEST(FixedStrategyExtremes, Fig3SigmaInfinity) {
    Game g = fig("fig3");
    auto p = product_with_strategy(g, load_strategy(g, qtest::fixture("fig3_sigma_inf.strat")));
    auto ex = fixed_strategy_extremes(p, 1);
    int x = p.find(idx(g, "s1"), 0);
    EXPECT_EQ(ex[x], std::make_pair(Rational(0), Rational(2)));
    for (int y = 0; y < p.arena.size(); ++y) EXPECT_EQ(ex[y], extremes_by_enumeration(p, 1, y));
}

TEST(FixedStrategyExtremes, OwnedAbsorbingLoop) {
    Game g = parse_game("players 2\nmeasure limsup\ninit a\nvertex a 1\nedge a a 4 1\n");
    auto p = product_with_strategy(g, memoryless_strategy(g, 1, std::vector<int>{0}));
    EXPECT_EQ(fixed_strategy_extremes(p, 1)[0], std::make_pair(Rational(4), Rational(4)));
}

class SolverProperties : public ::testing::TestWithParam<Measure> {};

TEST_P(SolverProperties, OracleEquivalence200) {
    for (int seed = 1; seed <= 200; ++seed) {
        std::string why;
        ASSERT_EQ(qtest::oracle_mismatches(qtest::random_small(seed, GetParam()), &why), 0) << "seed " << seed << " " << why;
    }
}

TEST_P(SolverProperties, LocalConsistencyAndBounds) {
    for (int seed = 1; seed <= 100; ++seed) {
        Game g = qtest::random_small(seed, GetParam());
        auto tg = make_prefix_independent(g, [&] {
            std::vector<int> all(g.size());
            std::iota(all.begin(), all.end(), 0);
            return all;
        }());
        for (int p = 1; p <= g.players(); ++p) {
            Arena a = coalition_arena(tg.game, p);
            auto z = zero_sum_value(a, GetParam()).value;
            auto c = one_player_max_value(a, GetParam());
            for (int v = 0; v < a.size(); ++v) {
                Rational best = a.max_owned[v] ? Rational(-1000) : Rational(1000), cbest = -1000;
                for (auto& mv : a.succ[v]) {
                    best = a.max_owned[v] ? std::max(best, z[mv.to]) : std::min(best, z[mv.to]);
                    cbest = std::max(cbest, c[mv.to]);
                }
                EXPECT_EQ(z[v], best);
                EXPECT_EQ(c[v], cbest);
                EXPECT_LE(z[v], c[v]);
                if (is_mean_payoff(GetParam())) {
                    EXPECT_LE(z[v].den(), a.size());
                    EXPECT_LE(c[v].den(), a.size());
                }
            }
            if (!is_mean_payoff(GetParam())) {
                std::vector<char> prev(a.size(), 1);
                for (int th = -3; th <= 3; ++th) {
                    auto r = solve_threshold(a, GetParam(), th).win;
                    for (int v = 0; v < a.size(); ++v) {
                        EXPECT_LE(r[v], prev[v]);
                        EXPECT_EQ(static_cast<bool>(r[v]), z[v] >= th);
                    }
                    prev = r;
                }
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Measures, SolverProperties, ::testing::ValuesIn(qtest::all_measures()),
                         [](const auto& info) {
                             std::string n(measure_name(info.param));
                             std::replace(n.begin(), n.end(), '-', '_');
                             return n;
                         });
