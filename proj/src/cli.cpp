#include "qadm/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "qadm/admissibility.hpp"
#include "qadm/objective.hpp"
#include "qadm/oracle.hpp"
#include "qadm/outcomes.hpp"

namespace qadm {
namespace {

using nlohmann::ordered_json;

struct Options {
    bool json = false;
    std::string game, strategy, spec, output, format = "native";
    int player = 1;
    int bound = kOracleBound;
};

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

void require_player(const Game& g, int p) {
    if (p < 1 || p > g.players()) throw Error("player " + std::to_string(p) + " out of range 1.." + std::to_string(g.players()));
}

// closed loop: the emitted text must parse back into the same strategy behaviour
MooreStrategy reparse(const Game& g, const MooreStrategy& s) { return parse_strategy(g, serialize_strategy(g, s)); }

int cmd_values(const Options& o, std::ostream& out) {
    Game g = load_game(o.game);
    ValueTable t = compute_value_table(g);
    ordered_json rows = ordered_json::array();
    ordered_json levels = ordered_json::object();
    for (int p = 1; p <= g.players(); ++p) {
        const auto& pv = t.of(p);
        ordered_json lv = ordered_json::array();
        for (auto& q : pv.avalues) lv.push_back(q.str());
        levels[std::to_string(p)] = lv;
        for (int v = 0; v < g.size(); ++v) {
            int tv = t.root[v];
            rows.push_back({{"player", p},
                            {"vertex", g.name(v)},
                            {"aval", pv.aval[tv].str()},
                            {"cval", pv.cval[tv].str()},
                            {"acval", pv.acval[tv].str()}});
        }
    }
    if (o.json) {
        emit(out, {{"measure", measure_name(g.measure())},
                   {"players", g.players()},
                   {"values", rows},
                   {"avalues", levels}});
        return 0;
    }
    out << "measure=" << measure_name(g.measure()) << " players=" << g.players() << "\n";
    for (auto& r : rows)
        out << "player=" << r["player"].get<int>() << " vertex=" << r["vertex"].get<std::string>()
            << " aval=" << r["aval"].get<std::string>() << " cval=" << r["cval"].get<std::string>()
            << " acval=" << r["acval"].get<std::string>() << "\n";
    return 0;
}

ordered_json verdict_json(const Game& g, const MooreStrategy& s, const AdmissibilityVerdict& v) {
    ordered_json j = {{"player", s.player}, {"admissible", v.admissible}};
    if (v.admissible) return j;
    ordered_json w = ordered_json::array();
    for (int x : v.witness) w.push_back(g.name(x));
    j["violated"] = violation_name(v.violated);
    j["state"] = {{"vertex", g.name(v.vertex)}, {"memory", "m" + std::to_string(v.memory)}};
    j["witness"] = w;
    j["aval"] = v.aval.str();
    j["cval"] = v.cval.str();
    j["acval"] = v.acval.str();
    j["sigma_aval"] = v.sigma_aval.str();
    j["sigma_cval"] = v.sigma_cval.str();
    return j;
}

int cmd_check(const Options& o, std::ostream& out) {
    Game g = load_game(o.game);
    MooreStrategy s = load_strategy(g, o.strategy);
    auto v = check_strategy_admissible(g, s);
    if (o.json) {
        emit(out, verdict_json(g, s, v));
    } else if (v.admissible) {
        out << "admissible player=" << s.player << "\n";
    } else {
        out << "not-admissible player=" << s.player << "\n"
            << "state=(" << g.name(v.vertex) << ", m" << v.memory << ")\n"
            << "violated=" << violation_name(v.violated) << "\n"
            << "witness=" << history_str(g, v.witness) << "\n"
            << "aval=" << v.aval << " cval=" << v.cval << " acval=" << v.acval << " sigma_aval=" << v.sigma_aval
            << " sigma_cval=" << v.sigma_cval << "\n";
    }
    return v.admissible ? 0 : 1;
}

int emit_strategy(const Options& o, std::ostream& out, const Game& g, const MooreStrategy& s, ordered_json info,
                  bool ok) {
    std::string text = serialize_strategy(g, s);
    if (!o.output.empty()) write_file(o.output, text);
    if (o.json) {
        info["memory"] = s.memory;
        if (!o.output.empty()) info["output"] = o.output;
        info["strategy"] = text;
        emit(out, info);
    } else {
        for (auto& [k, v] : info.items()) out << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << " ";
        out << "memory=" << s.memory << "\n";
        if (o.output.empty()) out << text;
    }
    return ok ? 0 : 1;
}

int cmd_sco(const Options& o, std::ostream& out) {
    Game g = load_game(o.game);
    require_player(g, o.player);
    ValueTable t = compute_value_table(g);
    MooreStrategy s = construct_sco(t, o.player);
    bool ok = check_strategy_admissible(t, reparse(g, s)).admissible;
    return emit_strategy(o, out, g, s, {{"player", o.player}, {"admissible", ok}}, ok);
}

int cmd_wco(const Options& o, std::ostream& out) {
    Game g = load_game(o.game);
    require_player(g, o.player);
    ValueTable t = compute_value_table(g);
    auto c = construct_wco_candidate(t, o.player);
    bool ok = c.verified && verify_wco(t, reparse(g, c.strategy));
    return emit_strategy(o, out, g, c.strategy, {{"player", o.player}, {"verified", ok}}, ok);
}

int cmd_outcomes(const Options& o, std::ostream& out) {
    if (o.format != "native" && o.format != "dot") throw CLI::ValidationError("--format", "expected native or dot");
    Game g = load_game(o.game);
    require_player(g, o.player);
    LabeledGame lg = label_edges(g);
    const Game& a = lg.arena();
    std::string formula = phi_adm_formula(lg, o.player);
    if (is_mean_payoff(g.measure())) {
        ordered_json labels = ordered_json::array();
        for (int e = 0; e < static_cast<int>(a.edges().size()); ++e)
            labels.push_back({{"src", a.name(a.edge(e).src)},
                              {"dst", a.name(a.edge(e).dst)},
                              {"props", lg.propositions(o.player, e)}});
        if (o.json) {
            emit(out, {{"player", o.player}, {"formula", formula}, {"labels", labels}, {"automaton", nullptr}});
        } else {
            out << "formula " << formula << "\n";
            for (auto& l : labels)
                out << "label " << l["src"].get<std::string>() << " " << l["dst"].get<std::string>() << " "
                    << l["props"].get<std::string>() << "\n";
        }
        return 0;
    }
    EdgeAutomaton aut = build_phi_adm_automaton(lg, o.player);
    std::string text = o.format == "dot" ? automaton_dot(g, aut) : serialize_automaton(g, aut);
    if (!o.output.empty()) write_file(o.output, text);
    if (o.json) {
        ordered_json j = {{"player", o.player}, {"formula", formula}, {"states", aut.size()}, {"format", o.format}};
        if (!o.output.empty()) j["output"] = o.output;
        else j["automaton"] = text;
        emit(out, j);
    } else if (!o.output.empty()) {
        out << "player=" << o.player << " states=" << aut.size() << " format=" << o.format << "\n";
    } else {
        out << text;
    }
    return 0;
}

int cmd_mc(const Options& o, std::ostream& out) {
    Game g = load_game(o.game);
    PayoffSpec spec = load_payoff_spec(g, o.spec);
    auto v = model_check_admissible(g, spec);
    if (o.json) {
        ordered_json j = {{"spec", spec_str(spec)}, {"holds", v.holds}};
        if (v.counterexample) j["counterexample"] = lasso_str(g, *v.counterexample);
        emit(out, j);
    } else {
        out << (v.holds ? "holds" : "fails") << "\n";
        if (v.counterexample) out << "counterexample " << lasso_str(g, *v.counterexample) << "\n";
    }
    return v.holds ? 0 : 1;
}

int cmd_synth(const Options& o, std::ostream& out) {
    Game g = load_game(o.game);
    require_player(g, o.player);
    PayoffSpec spec = load_payoff_spec(g, o.spec);
    LabeledGame lg = label_edges(g);
    auto r = synthesize_assume_admissible(lg, o.player, spec);
    if (!r.realizable) {
        if (o.json) emit(out, {{"player", o.player}, {"spec", spec_str(spec)}, {"realizable", false}});
        else out << "unrealizable\n";
        return 1;
    }
    MooreStrategy back = reparse(g, *r.strategy);
    bool ok = r.admissible && check_strategy_admissible(lg.table, back).admissible &&
              wins_assume_admissible(lg, back, spec);
    if (!o.json) out << "realizable ";
    return emit_strategy(o, out, g, *r.strategy,
                         {{"player", o.player}, {"spec", spec_str(spec)}, {"realizable", true}, {"admissible", ok},
                          {"source", r.source}},
                         ok);
}

int cmd_oracle(const Options& o, std::ostream& out) {
    Game g = load_game(o.game);
    ValueTable t = compute_value_table(g);
    ordered_json rows = ordered_json::array(), diff = ordered_json::array();
    for (int p = 1; p <= g.players(); ++p) {
        BruteFresh fresh = brute_fresh(g, p, o.bound);
        const auto& pv = t.of(p);
        for (int v = 0; v < g.size(); ++v) {
            int tv = t.root[v];
            BruteEntry b = brute_entry(g, p, fresh, v, std::nullopt);
            std::array<std::pair<const char*, std::pair<Rational, Rational>>, 3> f{{
                {"aval", {pv.aval[tv], b.aval}}, {"cval", {pv.cval[tv], b.cval}}, {"acval", {pv.acval[tv], b.acval}}}};
            ordered_json row = {{"player", p}, {"vertex", g.name(v)}};
            for (auto& [name, sb] : f) {
                row[name] = {{"solver", sb.first.str()}, {"brute", sb.second.str()}};
                if (sb.first != sb.second)
                    diff.push_back({{"player", p}, {"vertex", g.name(v)}, {"field", name},
                                    {"solver", sb.first.str()}, {"brute", sb.second.str()}});
            }
            rows.push_back(row);
        }
    }
    if (o.json) {
        emit(out, {{"measure", measure_name(g.measure())}, {"values", rows}, {"diff", diff}});
    } else {
        for (auto* side : {"solver", "brute"})
            for (auto& r : rows) {
                out << side << " player=" << r["player"].get<int>() << " vertex=" << r["vertex"].get<std::string>();
                for (auto* k : {"aval", "cval", "acval"}) out << " " << k << "=" << r[k][side].get<std::string>();
                out << "\n";
            }
        if (diff.empty()) out << "diff: none\n";
        for (auto& d : diff)
            out << "diff player=" << d["player"].get<int>() << " vertex=" << d["vertex"].get<std::string>()
                << " " << d["field"].get<std::string>() << " solver=" << d["solver"].get<std::string>()
                << " brute=" << d["brute"].get<std::string>() << "\n";
    }
    return diff.empty() ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantitative games under admissibility", "qadm"};
    app.require_subcommand(1, 1);
    Options o;
    app.add_flag("--json", o.json, "structured output");
    auto game_arg = [&](CLI::App* c) { c->add_option("game", o.game, "game file")->required(); };
    auto player_opt = [&](CLI::App* c) { c->add_option("--player,-p", o.player, "player index")->required(); };
    auto output_opt = [&](CLI::App* c) { c->add_option("-o,--output", o.output, "output file"); };
    auto spec_opt = [&](CLI::App* c) { c->add_option("--spec", o.spec, "payoff specification file")->required(); };

    std::vector<std::pair<CLI::App*, int (*)(const Options&, std::ostream&)>> cmds;
    auto* values = app.add_subcommand("values", "value tables");
    game_arg(values);
    cmds.push_back({values, cmd_values});
    auto* check = app.add_subcommand("check", "decide admissibility of a strategy");
    game_arg(check);
    check->add_option("strategy", o.strategy, "strategy file")->required();
    cmds.push_back({check, cmd_check});
    auto* sco = app.add_subcommand("sco", "strongly cooperative-optimal strategy");
    game_arg(sco);
    player_opt(sco);
    output_opt(sco);
    cmds.push_back({sco, cmd_sco});
    auto* wco = app.add_subcommand("wco", "worst-case cooperative-optimal candidate");
    game_arg(wco);
    player_opt(wco);
    output_opt(wco);
    cmds.push_back({wco, cmd_wco});
    auto* outcomes = app.add_subcommand("outcomes", "admissible-outcome automaton");
    game_arg(outcomes);
    player_opt(outcomes);
    outcomes->add_option("--format", o.format, "native or dot")->check(CLI::IsMember({"native", "dot"}));
    output_opt(outcomes);
    cmds.push_back({outcomes, cmd_outcomes});
    auto* mc = app.add_subcommand("mc", "model checking under admissibility");
    game_arg(mc);
    spec_opt(mc);
    cmds.push_back({mc, cmd_mc});
    auto* synth = app.add_subcommand("synth", "assume-admissible synthesis");
    game_arg(synth);
    player_opt(synth);
    spec_opt(synth);
    output_opt(synth);
    cmds.push_back({synth, cmd_synth});
    auto* oracle = app.add_subcommand("oracle", "brute-force value tables and diff");
    game_arg(oracle);
    oracle->add_option("--bound", o.bound, "largest game size accepted")->check(CLI::PositiveNumber);
    cmds.push_back({oracle, cmd_oracle});
    for (auto& [c, _] : cmds) c->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    try {
        for (auto& [c, run] : cmds)
            if (c->parsed()) return run(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace qadm
