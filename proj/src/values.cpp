#include "qadm/values.hpp"

#include <set>

namespace qadm {

std::vector<char> aval_at_least(const PlayerValues& pv, const Rational& q) {
    std::vector<char> keep(pv.aval.size());
    for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = pv.aval[v] >= q;
    return keep;
}

ValueTable compute_value_table(const Game& g) {
    std::vector<int> all(g.size());
    for (int v = 0; v < g.size(); ++v) all[v] = v;
    ValueTable t{make_prefix_independent(g, all), std::vector<int>(g.size(), -1), {}};
    const Game& a = t.tg.game;
    for (int tv = 0; tv < a.size(); ++tv) {
        bool fresh = true;
        for (auto& r : t.tg.record[tv]) fresh = fresh && !r;
        if (fresh && t.root[t.tg.orig[tv]] < 0) t.root[t.tg.orig[tv]] = tv;
    }
    const Measure m = a.measure();
    for (int p = 1; p <= g.players(); ++p) {
        Arena ar = coalition_arena(a, p);
        ZeroSum z = zero_sum_value(ar, m);
        PlayerValues pv;
        pv.aval = z.value;
        pv.worst_case = z.strategy;
        pv.cval = one_player_max_value(ar, m);
        std::set<Rational> levels(pv.aval.begin(), pv.aval.end());
        pv.avalues.assign(levels.begin(), levels.end());
        pv.acval.resize(a.size());
        for (const Rational& q : pv.avalues) {
            std::vector<int> old;
            Arena sub = sub_arena(ar, aval_at_least(pv, q), &old);
            auto c = one_player_max_value(sub, m);
            for (std::size_t i = 0; i < old.size(); ++i)
                if (pv.aval[old[i]] == q) pv.acval[old[i]] = c[i];
        }
        t.player.push_back(std::move(pv));
    }
    return t;
}

HistoryValues value_at_history(const ValueTable& t, const History& h, int player) {
    check_history(t.tg.source, h);
    int tv = lift_history(t.tg, h);
    const auto& pv = t.of(player);
    return {tv, pv.aval[tv], pv.cval[tv], pv.acval[tv]};
}

HistoryValues value_at_history(const Game& g, const History& h, int player) {
    return value_at_history(compute_value_table(g), h, player);
}

} // namespace qadm
