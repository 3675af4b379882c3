#include "qadm/outcomes.hpp"

#include <deque>
#include <sstream>

namespace qadm {

LabeledGame label_edges(const Game& g) { return label_edges(compute_value_table(g)); }

LabeledGame label_edges(const ValueTable& t) {
    LabeledGame lg{t, {}};
    const Game& a = t.arena();
    for (int p = 1; p <= a.players(); ++p) {
        const auto& pv = t.of(p);
        std::vector<EdgeLabel> ls;
        for (int e = 0; e < static_cast<int>(a.edges().size()); ++e) {
            int u = a.edge(e).src, v = a.edge(e).dst;
            EdgeLabel l{a.owner(u) == p, pv.aval[u], pv.acval[u], std::nullopt};
            if (!l.owned)
                for (int f : a.out(u)) {
                    int w = a.edge(f).dst;
                    if (w != v && (!l.altmax || pv.cval[w] > *l.altmax)) l.altmax = pv.cval[w];
                }
            ls.push_back(l);
        }
        lg.label.push_back(std::move(ls));
    }
    return lg;
}

std::string LabeledGame::propositions(int player, int e) const {
    std::ostringstream o;
    const auto& l = at(player, e);
    const auto p = std::to_string(player);
    if (l.owned) o << "V" << p << " ";
    o << "aVal" << p << "_" << l.aval;
    for (const Rational& q : table.of(player).avalues)
        if (l.acval == q) o << " acVal" << p << "_" << q;
    for (const Rational& q : table.of(player).avalues)
        if (galt_q(player, e, q)) o << " gAlt" << p << "_" << q;
    return o.str();
}

namespace {

struct Positions {
    std::vector<int> vertex;  // transformed source vertex per position
    std::vector<int> edge;    // transformed edge per position
    std::size_t loop = 0;
};

Positions positions_of(const TransformedGame& tg, const Lasso& l) {
    Lasso tl = lift_lasso(tg, l);
    Positions ps;
    ps.vertex = tl.prefix;
    ps.vertex.insert(ps.vertex.end(), tl.cycle.begin(), tl.cycle.end());
    ps.loop = tl.prefix.size();
    for (std::size_t k = 0; k < ps.vertex.size(); ++k) {
        int nxt = k + 1 < ps.vertex.size() ? ps.vertex[k + 1] : ps.vertex[ps.loop];
        ps.edge.push_back(*tg.game.edge_between(ps.vertex[k], nxt));
    }
    return ps;
}

} // namespace

bool eval_phi_adm_on_lasso(const LabeledGame& lg, int player, const Lasso& l) {
    const TransformedGame& tg = lg.table.tg;
    check_lasso(tg.source, l);
    Positions ps = positions_of(tg, l);
    const std::size_t n = ps.vertex.size();
    Lasso tl{{ps.vertex.begin(), ps.vertex.begin() + ps.loop}, {ps.vertex.begin() + ps.loop, ps.vertex.end()}};
    const Rational pay = payoff_of_lasso(tg.game.measure(), tg.game, player, tl);
    // suffix aggregates; cycle positions see the whole cycle
    std::vector<std::optional<Rational>> alt(n);
    std::vector<Rational> lo(n), hi(n);
    auto merge = [&](std::size_t k, std::size_t from) {
        auto& a = lg.at(player, ps.edge[k]).altmax;
        alt[k] = alt[from];
        if (a && (!alt[k] || *a > *alt[k])) alt[k] = a;
        lo[k] = std::min(lo[from], lg.at(player, ps.edge[k]).aval);
        hi[k] = std::max(hi[from], lg.at(player, ps.edge[k]).aval);
    };
    {
        std::optional<Rational> calt;
        Rational clo = lg.at(player, ps.edge[ps.loop]).aval, chi = clo;
        for (std::size_t k = ps.loop; k < n; ++k) {
            auto& lab = lg.at(player, ps.edge[k]);
            if (lab.altmax && (!calt || *lab.altmax > *calt)) calt = lab.altmax;
            clo = std::min(clo, lab.aval);
            chi = std::max(chi, lab.aval);
        }
        for (std::size_t k = ps.loop; k < n; ++k) alt[k] = calt, lo[k] = clo, hi[k] = chi;
        for (std::size_t k = ps.loop; k-- > 0;) merge(k, k + 1);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const auto& lab = lg.at(player, ps.edge[k]);
        if (!lab.owned) continue;
        const Rational& q = lab.aval;
        bool phi1 = pay > q || (alt[k] && *alt[k] > q);
        bool phi2 = lab.acval == q && pay == q && lo[k] == q && hi[k] == q;
        if (!phi1 && !phi2) return false;
    }
    return true;
}

EdgeAutomaton build_phi_adm_automaton(const LabeledGame& lg, int player) {
    const Game& a = lg.arena();
    const Measure m = a.measure();
    if (is_mean_payoff(m))
        throw UnsupportedMeasure("admissible outcomes of mean-payoff games are not omega-regular; "
                                 "use the labelled game and the formula instead");
    const auto& levels = lg.table.of(player).avalues;
    // state: (transformed vertex, pending level or -1, pinned-level candidate alive, priority)
    using Key = std::tuple<int, int, int, int>;
    std::map<Key, int> ids;
    std::vector<Key> keys;
    EdgeAutomaton aut;
    std::deque<int> q;
    auto intern = [&](const Key& k) {
        auto [it, fresh] = ids.try_emplace(k, static_cast<int>(keys.size()));
        if (fresh) {
            keys.push_back(k);
            auto [tv, lvl, ok, prio] = k;
            aut.add_state(a.name(tv) + ":" + (lvl < 0 ? std::string("_") : levels[lvl].str()) + ":" +
                              std::to_string(ok) + ":" + std::to_string(prio),
                          prio);
            q.push_back(it->second);
        }
        return it->second;
    };
    auto level_of = [&](const Rational& x) {
        return static_cast<int>(std::lower_bound(levels.begin(), levels.end(), x) - levels.begin());
    };
    aut.initial = intern({a.init(), -1, 1, 0});
    while (!q.empty()) {
        int id = q.front();
        q.pop_front();
        auto [tv, lvl, ok, prio] = keys[id];
        for (int e : a.out(tv)) {
            const auto& lab = lg.at(player, e);
            int t = a.edge(e).dst;
            int nl = lvl, nok = ok, np = 0;
            bool discharged = false;
            if (!lab.owned) {
                if (nl >= 0 && lab.altmax && *lab.altmax > levels[nl]) nl = -1, discharged = true;
            } else {
                int ql = level_of(lab.aval);
                if (nl < 0 || ql > nl) {
                    nl = ql;
                    nok = lab.acval == lab.aval;
                } else if (ql == nl) {
                    nok = nok && lab.acval == lab.aval;
                } else {
                    nok = 0;
                }
            }
            if (nl >= 0) nok = nok && lab.aval == levels[nl];
            if (discharged) {
                np = 6;
            } else if (nl >= 0) {
                const Rational& w = a.weight(e, player);
                const Rational& lv = levels[nl];
                if (m == Measure::LimSup) np = (w > lv || (nok && w == lv)) ? 4 : 1;
                else np = (w < lv || (!nok && w == lv)) ? 3 : 0;
            }
            if (nl < 0) nok = 1;
            int to = intern({t, nl, nok, np});
            aut.add_transition(id, lg.table.tg.orig[tv], lg.table.tg.orig[t], to);
        }
    }
    return aut;
}

std::string phi_adm_formula(const LabeledGame& lg, int player) {
    const auto p = std::to_string(player);
    std::ostringstream phi1, phi2;
    bool first = true;
    for (const Rational& q : lg.table.of(player).avalues) {
        auto qs = q.str();
        phi1 << (first ? "" : " | ") << "(aVal" << p << "_" << qs << " & (payoff(" << p << ") > " << qs << " | F gAlt"
             << p << "_" << qs << "))";
        phi2 << (first ? "" : " | ") << "(aVal" << p << "_" << qs << " & acVal" << p << "_" << qs << " & payoff(" << p
             << ") = " << qs << " & G aVal" << p << "_" << qs << ")";
        first = false;
    }
    return "G (!V" + p + " | " + phi1.str() + " | " + phi2.str() + ")";
}

MooreStrategy strategy_from_outcome(const LabeledGame& lg, int player, const Lasso& l) {
    const ValueTable& t = lg.table;
    check_lasso(t.tg.source, l);
    if (l.prefix.empty() ? l.cycle.front() != t.tg.source.init() : l.prefix.front() != t.tg.source.init())
        throw Error("outcome does not start at the initial vertex");
    Positions base = positions_of(t.tg, l);
    // unroll the cycle once so the most recent own position is well defined
    Positions ps = base;
    std::size_t clen = base.vertex.size() - base.loop;
    for (std::size_t k = base.loop; k < base.vertex.size(); ++k) {
        ps.vertex.push_back(base.vertex[k]);
        ps.edge.push_back(base.edge[k]);
    }
    ps.loop = base.loop + clen;
    const int n = static_cast<int>(ps.vertex.size());
    auto next = [&](int b) { return b + 1 < n ? b + 1 : static_cast<int>(ps.loop); };
    // phi1 status per own position, evaluated on the outcome
    std::vector<int> last_own(n, -1);
    for (int b = 0, cur = -1; b < n; ++b) {
        if (lg.at(player, ps.edge[b]).owned) cur = b;
        last_own[b] = cur;
    }
    Lasso tl{{base.vertex.begin(), base.vertex.begin() + base.loop}, {base.vertex.begin() + base.loop, base.vertex.end()}};
    const Rational pay = payoff_of_lasso(t.tg.game.measure(), t.tg.game, player, tl);
    auto phi1_at = [&](int b) {
        const Rational& q = lg.at(player, ps.edge[b]).aval;
        if (pay > q) return true;
        std::optional<Rational> best;
        for (int k = b; k < n; ++k) {
            auto& a = lg.at(player, ps.edge[k]).altmax;
            if (a && (!best || *a > *best)) best = a;
        }
        for (std::size_t k = ps.loop; k < static_cast<std::size_t>(n); ++k) {
            auto& a = lg.at(player, ps.edge[k]).altmax;
            if (a && (!best || *a > *best)) best = a;
        }
        return best && *best > q;
    };
    Playbook pb(t, player);
    const int follow = Playbook::kUser;
    Controller c;
    c.start = [&](int) { return ControllerState{ps.vertex[0], follow, 0, 0}; };
    c.step = [&](const ControllerState& s, int nxt) {
        if (pb.handles(s)) return pb.step(s, nxt);
        int b = next(s.a);
        if (ps.vertex[b] == nxt) return ControllerState{nxt, follow, b, 0};
        int own = last_own[s.a];
        if (own < 0 || phi1_at(own)) return pb.sco(nxt);
        return pb.worst(nxt);
    };
    c.move = [&](const ControllerState& s) {
        if (pb.handles(s)) return pb.move(s);
        return ps.vertex[next(s.a)];
    };
    return trim_strategy(t.tg.source, realize(t, player, c, t.tg.game.init()));
}

} // namespace qadm
