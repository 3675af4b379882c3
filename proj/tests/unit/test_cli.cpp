#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "../support.hpp"
#include "qadm/cli.hpp"
#include "qadm/objective.hpp"

using namespace qadm;
using qtest::fixture;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "qadm_cli_test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

} // namespace

TEST(Cli, CheckFig2RejectsWithStateAndEq3) {
    auto r = run({"check", fixture("fig2.game"), fixture("fig2_s2s6.strat")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("(s1, m0)"), std::string::npos);
    EXPECT_NE(r.out.find("eq3"), std::string::npos);
}

TEST(Cli, ValuesFig1Row) {
    auto r = run({"values", fixture("fig1.game")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("player=1 vertex=v1 aval=1 cval=2 acval=2\n"), std::string::npos);
}

TEST(Cli, SynthFig1WritesVerifiedStrategy) {
    std::string out = tmp("synth.strat");
    auto r = run({"synth", fixture("fig1_liminf.game"), "--player", "1", "--spec", fixture("geq2.spec"), "-o", out});
    EXPECT_EQ(r.code, 0);
    Game g = qtest::fig("fig1_liminf");
    auto s = load_strategy(g, out);
    auto lg = label_edges(g);
    EXPECT_TRUE(check_strategy_admissible(lg.table, s).admissible);
    EXPECT_TRUE(wins_assume_admissible(lg, s, load_payoff_spec(g, fixture("geq2.spec"))));
}

TEST(Cli, SynthUnrealizableExitsOne) {
    auto r = run({"synth", fixture("fig1_liminf.game"), "-p", "1", "--spec", fixture("geq3.spec")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "unrealizable\n");
}

TEST(Cli, ModelCheckExitCodes) {
    EXPECT_EQ(run({"mc", fixture("fig1_liminf.game"), "--spec", fixture("geq1.spec")}).code, 0);
    auto r = run({"mc", fixture("fig1_liminf.game"), "--spec", fixture("geq3.spec")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("counterexample v1 v2 v4 [v2 v4]"), std::string::npos);
}

TEST(Cli, EmittedStrategiesReparseAndVerify) {
    for (auto name : {"fig1", "fig1_liminf", "fig2", "fig3"}) {
        Game g = qtest::fig(name);
        for (int p = 1; p <= 2; ++p) {
            std::string sco = tmp(std::string(name) + "_sco.strat"), wco = tmp(std::string(name) + "_wco.strat");
            EXPECT_EQ(run({"sco", fixture(std::string(name) + ".game"), "-p", std::to_string(p), "-o", sco}).code, 0);
            EXPECT_TRUE(check_strategy_admissible(g, load_strategy(g, sco)).admissible);
            auto w = run({"wco", fixture(std::string(name) + ".game"), "-p", std::to_string(p), "-o", wco});
            auto c = construct_wco_candidate(g, p);
            EXPECT_EQ(w.code, c.verified ? 0 : 1);
            auto back = load_strategy(g, wco);
            EXPECT_EQ(serialize_strategy(g, back), serialize_strategy(g, c.strategy));
            if (c.verified) EXPECT_TRUE(check_strategy_admissible(g, back).admissible);
        }
    }
}

TEST(Cli, OutcomesFormats) {
    std::string out = tmp("phi.aut");
    auto r = run({"outcomes", fixture("fig3.game"), "-p", "1", "-o", out});
    EXPECT_EQ(r.code, 0);
    Game g = qtest::fig("fig3");
    auto a = load_automaton(g, out);
    EXPECT_TRUE(accepts(a, parse_lasso(g, "s1 s2 [t2]")));
    EXPECT_FALSE(accepts(a, parse_lasso(g, "s1 [t1]")));
    auto d = run({"outcomes", fixture("fig3.game"), "-p", "1", "--format", "dot"});
    EXPECT_EQ(d.code, 0);
    EXPECT_EQ(d.out.rfind("digraph", 0), 0u);
    EXPECT_EQ(run({"outcomes", fixture("fig3.game"), "-p", "1", "--format", "hoa"}).code, 2);
    auto mp = run({"outcomes", fixture("fig1.game"), "-p", "2"});
    EXPECT_EQ(mp.code, 0);
    EXPECT_EQ(mp.out.rfind("formula G (", 0), 0u);
}

TEST(Cli, OracleDiffEmpty) {
    auto r = run({"oracle", fixture("fig1.game")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("diff: none"), std::string::npos);
    EXPECT_EQ(run({"oracle", fixture("fig2.game")}).code, 2);
    EXPECT_EQ(run({"oracle", fixture("fig2.game"), "--bound", "12"}).code, 0);
}

TEST(Cli, UsageAndInputErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"sco", fixture("fig1.game")}).code, 2);  // missing --player
    EXPECT_EQ(run({"sco", fixture("fig1.game"), "-p", "x"}).code, 2);
    EXPECT_EQ(run({"sco", fixture("fig1.game"), "-p", "3"}).code, 2);
    EXPECT_EQ(run({"values", fixture("nope.game")}).code, 2);
    EXPECT_EQ(run({"check", fixture("fig1.game"), fixture("fig2_s2s6.strat")}).code, 2);
    EXPECT_EQ(run({"mc", fixture("fig1.game"), "--spec", fixture("geq1.spec")}).code, 2);
    EXPECT_EQ(run({"values", fixture("geq1.spec")}).code, 2);
    auto h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("synth"), std::string::npos);
}

struct Golden {
    const char* file;
    std::vector<std::string> args;
    int code;
};

void PrintTo(const Golden& g, std::ostream* os) { *os << g.file; }

class CliGolden : public ::testing::TestWithParam<Golden> {};

TEST_P(CliGolden, JsonMatches) {
    std::vector<std::string> args{"--json"};
    for (auto& a : GetParam().args) args.push_back(a.find('.') != std::string::npos ? fixture(a) : a);
    auto r = run(args);
    EXPECT_EQ(r.code, GetParam().code);
    std::string want = slurp(std::string(QADM_GOLDEN) + "/" + GetParam().file);
    ASSERT_FALSE(want.empty());
    EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::parse(want));
    EXPECT_EQ(r.out, want);
}

INSTANTIATE_TEST_SUITE_P(
    Files, CliGolden,
    ::testing::Values(Golden{"values_fig1.json", {"values", "fig1.game"}, 0},
                      Golden{"check_fig2_s2s6.json", {"check", "fig2.game", "fig2_s2s6.strat"}, 1},
                      Golden{"check_fig3_sigma_1.json", {"check", "fig3.game", "fig3_sigma_1.strat"}, 1},
                      Golden{"check_fig1_p2_v2v4.json", {"check", "fig1.game", "fig1_p2_v2v4.strat"}, 0},
                      Golden{"sco_fig3_p1.json", {"sco", "fig3.game", "-p", "1"}, 0},
                      Golden{"wco_fig1_p1.json", {"wco", "fig1.game", "-p", "1"}, 0},
                      Golden{"outcomes_fig3_p1.json", {"outcomes", "fig3.game", "-p", "1"}, 0},
                      Golden{"outcomes_fig1_p1.json", {"outcomes", "fig1.game", "-p", "1"}, 0},
                      Golden{"mc_fig1_liminf_geq3.json", {"mc", "fig1_liminf.game", "--spec", "geq3.spec"}, 1},
                      Golden{"synth_fig1_liminf_geq2.json",
                             {"synth", "fig1_liminf.game", "-p", "1", "--spec", "geq2.spec"}, 0},
                      Golden{"oracle_fig3.json", {"oracle", "fig3.game"}, 0}),
    [](const auto& info) {
        std::string n = info.param.file;
        n = n.substr(0, n.find('.'));
        return n;
    });
