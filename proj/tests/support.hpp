#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "qadm/admissibility.hpp"
#include "qadm/game.hpp"
#include "qadm/oracle.hpp"
#include "qadm/strategy.hpp"

namespace qadm {
inline void PrintTo(Measure m, std::ostream* os) { *os << measure_name(m); }
} // namespace qadm

namespace qtest {

using namespace qadm;

inline std::string fixture(const std::string& name) { return std::string(QADM_FIXTURES) + "/" + name; }
inline Game fig(const std::string& name) { return load_game(fixture(name + ".game")); }

inline const std::vector<Measure>& all_measures() {
    static const std::vector<Measure> m{Measure::Inf,    Measure::Sup,           Measure::LimInf,
                                        Measure::LimSup, Measure::MeanPayoffInf, Measure::MeanPayoffSup};
    return m;
}
inline const std::vector<Measure>& regular_measures() {
    static const std::vector<Measure> m{Measure::Inf, Measure::Sup, Measure::LimInf, Measure::LimSup};
    return m;
}

// fig3 strategy that moves s1 -> s2 on the first k visits and leaves to t1 on visit k+1
inline MooreStrategy sigma_k(const Game& g, int k) {
    MooreStrategy s;
    s.player = 1;
    s.memory = k + 1;
    s.update.assign(k + 1, std::vector<int>(g.size()));
    s.move.assign(k + 1, std::vector<int>(g.size(), -1));
    int s1 = g.index_of("s1");
    for (int m = 0; m <= k; ++m) {
        for (int v = 0; v < g.size(); ++v) s.update[m][v] = m;
        s.update[m][s1] = std::min(m + 1, k);
        s.move[m][s1] = g.index_of(m < k ? "s2" : "t1");
    }
    return s;
}

// Outcome of s against a memoryless adversary profile `adv` (successor per vertex).
// While the play follows `lead`, the adversary keeps following it.
inline Lasso play(const Game& g, const MooreStrategy& s, const std::vector<int>& adv, const History& lead = {}) {
    std::map<std::tuple<int, int, int>, int> seen;
    std::vector<int> path;
    int v = g.init(), m = s.m0, k = lead.empty() ? -1 : 0;
    while (true) {
        auto [it, fresh] = seen.try_emplace({v, m, k}, static_cast<int>(path.size()));
        if (!fresh) {
            Lasso l;
            l.prefix.assign(path.begin(), path.begin() + it->second);
            l.cycle.assign(path.begin() + it->second, path.end());
            return l;
        }
        path.push_back(v);
        int next;
        if (g.owner(v) == s.player) next = s.move[m][v];
        else if (k >= 0 && k + 1 < static_cast<int>(lead.size())) next = lead[k + 1];
        else next = adv[v];
        k = (k >= 0 && k + 1 < static_cast<int>(lead.size()) && next == lead[k + 1]) ? k + 1 : -1;
        m = s.update[m][next];
        v = next;
    }
}

// every choice function picking one successor per vertex in `which` (others keep their first successor)
inline void for_each_profile(const Game& g, const std::vector<char>& which,
                             const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> vs;
    for (int v = 0; v < g.size(); ++v)
        if (which[v]) vs.push_back(v);
    std::vector<std::size_t> idx(vs.size(), 0);
    std::vector<int> choice(g.size());
    for (int v = 0; v < g.size(); ++v) choice[v] = g.successors(v)[0];
    while (true) {
        for (std::size_t i = 0; i < vs.size(); ++i) choice[vs[i]] = g.successors(vs[i])[idx[i]];
        f(choice);
        std::size_t i = 0;
        for (; i < vs.size(); ++i) {
            if (++idx[i] < g.successors(vs[i]).size()) break;
            idx[i] = 0;
        }
        if (i == vs.size()) return;
    }
}

inline std::vector<char> owned_by(const Game& g, int player, bool mine) {
    std::vector<char> w(g.size());
    for (int v = 0; v < g.size(); ++v) w[v] = (g.owner(v) == player) == mine;
    return w;
}

} // namespace qtest

#include "qadm/values.hpp"

namespace qtest {

// Entries of compute_value_table that disagree with the brute-force oracle;
// Inf/Sup transformed states are compared through their recorded extremum.
inline int oracle_mismatches(const Game& g, std::string* first = nullptr) {
    ValueTable t = compute_value_table(g);
    int bad = 0;
    for (int p = 1; p <= g.players(); ++p) {
        const auto& pv = t.of(p);
        BruteFresh fresh = brute_fresh(g, p);
        for (int tv = 0; tv < t.arena().size(); ++tv) {
            auto rec = t.tg.identity ? std::nullopt : t.tg.record[tv][p - 1];
            BruteEntry e = brute_entry(g, p, fresh, t.tg.orig[tv], rec);
            if (e.aval != pv.aval[tv] || e.cval != pv.cval[tv] || e.acval != pv.acval[tv]) {
                if (!bad && first)
                    *first = "player " + std::to_string(p) + " at " + t.arena().name(tv) + ": solver " +
                             pv.aval[tv].str() + "," + pv.cval[tv].str() + "," + pv.acval[tv].str() + " oracle " +
                             e.aval.str() + "," + e.cval.str() + "," + e.acval.str();
                ++bad;
            }
        }
    }
    return bad;
}

inline Game random_small(std::uint64_t seed, Measure m, int players = 2) {
    RandomGameOptions o;
    o.size = 2 + static_cast<int>(seed % 5);
    o.measure = m;
    o.players = players;
    return random_game(seed, o);
}

} // namespace qtest
