#include "qadm/admissibility.hpp"

#include <deque>

namespace qadm {

std::string_view violation_name(Violation v) { return v == Violation::Eq3 ? "eq3" : "eq4"; }

AdmissibilityVerdict check_strategy_admissible(const Game& g, const MooreStrategy& s) {
    return check_strategy_admissible(compute_value_table(g), s);
}

AdmissibilityVerdict check_strategy_admissible(const ValueTable& t, const MooreStrategy& s) {
    const Game& g = t.tg.source;
    if (s.player < 1 || s.player > g.players())
        throw Error("strategy is for player " + std::to_string(s.player) + " but the game has " +
                    std::to_string(g.players()) + " players");
    ProductGame p = product_with_strategy(t.tg, s);
    auto ext = fixed_strategy_extremes(p, s.player);
    const auto& pv = t.of(s.player);
    const int n = p.arena.size();
    std::vector<int> parent(n, -2);
    std::deque<int> q{p.arena.init()};
    parent[p.arena.init()] = -1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        auto [tv, mem] = p.state[x];
        if (g.owner(t.tg.orig[tv]) == s.player) {
            const Rational& a = pv.aval[tv];
            auto [lo, hi] = ext[x];
            bool eq1 = hi > a;
            bool eq2 = lo == a && hi == a && pv.acval[tv] == a;
            if (!eq1 && !eq2) {
                AdmissibilityVerdict v;
                v.admissible = false;
                v.violated = lo < a ? Violation::Eq3 : Violation::Eq4;
                v.vertex = t.tg.orig[tv];
                v.tv = tv;
                v.memory = mem;
                for (int y = x; y != -1; y = parent[y]) v.witness.push_back(t.tg.orig[p.state[y].first]);
                std::reverse(v.witness.begin(), v.witness.end());
                v.aval = a;
                v.cval = pv.cval[tv];
                v.acval = pv.acval[tv];
                v.sigma_aval = lo;
                v.sigma_cval = hi;
                return v;
            }
        }
        for (int e : p.arena.out(x)) {
            int y = p.arena.edge(e).dst;
            if (parent[y] == -2) parent[y] = x, q.push_back(y);
        }
    }
    return {};
}

MooreStrategy realize(const ValueTable& t, int player, const Controller& c, int start_tv) {
    const Game& g = t.tg.source;
    const Game& a = t.tg.game;
    std::map<ControllerState, int> ids;
    std::vector<ControllerState> states;
    std::deque<int> q;
    auto intern = [&](const ControllerState& s) {
        auto [it, fresh] = ids.try_emplace(s, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back(s);
            q.push_back(it->second);
        }
        return it->second;
    };
    intern(c.start(start_tv));
    std::vector<std::vector<std::pair<int, int>>> upd;  // (original vertex, memory)
    std::vector<std::pair<int, int>> mv;                // (original vertex, original successor)
    while (!q.empty()) {
        int id = q.front();
        q.pop_front();
        ControllerState s = states[id];
        if (static_cast<int>(upd.size()) <= id) upd.resize(id + 1), mv.resize(id + 1, {-1, -1});
        for (int e : a.out(s.tv)) {
            int nt = a.edge(e).dst;
            int m2 = intern(c.step(s, nt));
            upd[id].push_back({t.tg.orig[nt], m2});
        }
        if (g.owner(t.tg.orig[s.tv]) == player) mv[id] = {t.tg.orig[s.tv], t.tg.orig[c.move(s)]};
    }
    MooreStrategy r;
    r.player = player;
    r.memory = static_cast<int>(states.size());
    r.m0 = 0;
    r.update.assign(r.memory, std::vector<int>(g.size()));
    r.move.assign(r.memory, std::vector<int>(g.size(), -1));
    for (int m = 0; m < r.memory; ++m) {
        for (int v = 0; v < g.size(); ++v) {
            r.update[m][v] = m;
            if (g.owner(v) == player) r.move[m][v] = g.edge(g.out(v)[0]).dst;
        }
        for (auto [v, m2] : upd[m]) r.update[m][v] = m2;
        if (mv[m].first >= 0) r.move[m][mv[m].first] = mv[m].second;
    }
    return r;
}

Playbook::Playbook(const ValueTable& t, int player)
    : t_(t), player_(player), pv_(t.of(player)), arena_(coalition_arena(t.tg.game, player)) {}

const Playbook::Path& Playbook::coop_path(int tv) const {
    auto it = coop_.find(tv);
    if (it != coop_.end()) return it->second;
    Lasso l = cooperative_lasso(arena_, t_.tg.game.measure(), tv);
    Path p{l.prefix, static_cast<int>(l.prefix.size())};
    p.seq.insert(p.seq.end(), l.cycle.begin(), l.cycle.end());
    return coop_[tv] = p;
}

const Playbook::Path& Playbook::acv_path(int tv) const {
    auto it = acv_.find(tv);
    if (it != acv_.end()) return it->second;
    std::vector<int> old, local(arena_.size(), -1);
    Arena sub = sub_arena(arena_, aval_at_least(pv_, pv_.aval[tv]), &old);
    for (std::size_t i = 0; i < old.size(); ++i) local[old[i]] = static_cast<int>(i);
    Lasso l = cooperative_lasso(sub, t_.tg.game.measure(), local[tv]);
    Path p{{}, static_cast<int>(l.prefix.size())};
    for (int x : l.prefix) p.seq.push_back(old[x]);
    for (int x : l.cycle) p.seq.push_back(old[x]);
    return acv_[tv] = p;
}

ControllerState Playbook::sco(int tv) const {
    if (pv_.cval[tv] > pv_.aval[tv]) return {tv, kCoop, tv, 0};
    return worst(tv);
}

ControllerState Playbook::wco(int tv, Mode variant) const {
    if (pv_.acval[tv] > pv_.aval[tv]) return {tv, variant, tv, 0};
    return {tv, variant == kAcvC ? kWorstC : kWorst, 0, 0};
}

ControllerState Playbook::step(const ControllerState& s, int next) const {
    switch (s.mode) {
    case kWorst:
        return worst(next);
    case kWorstC:
        return wco(next, kAcvC);
    case kCoop: {
        const Path& p = coop_path(s.a);
        int b = p.next(s.b);
        if (p.seq[b] != next) return sco(next);
        if (pv_.aval[next] == pv_.cval[next]) return worst(next);
        return {next, kCoop, s.a, b};
    }
    default: {
        const Path& p = acv_path(s.a);
        int b = p.next(s.b);
        Mode variant = static_cast<Mode>(s.mode);
        if (p.seq[b] != next) return variant == kAcvA ? worst(next) : wco(next, variant);
        if (variant == kAcvC && pv_.aval[next] != pv_.aval[s.a]) return wco(next, variant);
        return {next, s.mode, s.a, b};
    }
    }
}

int Playbook::move(const ControllerState& s) const {
    switch (s.mode) {
    case kWorst:
    case kWorstC:
        return pv_.worst_case[s.tv];
    case kCoop: {
        const Path& p = coop_path(s.a);
        return p.seq[p.next(s.b)];
    }
    default: {
        const Path& p = acv_path(s.a);
        return p.seq[p.next(s.b)];
    }
    }
}

namespace {

Controller from_playbook(const Playbook& pb, std::function<ControllerState(int)> start) {
    return {std::move(start), [&pb](const ControllerState& s, int n) { return pb.step(s, n); },
            [&pb](const ControllerState& s) { return pb.move(s); }};
}

} // namespace

MooreStrategy construct_sco(const Game& g, int player) { return construct_sco(compute_value_table(g), player); }

MooreStrategy construct_sco(const ValueTable& t, int player) {
    Playbook pb(t, player);
    return realize(t, player, from_playbook(pb, [&pb](int tv) { return pb.sco(tv); }), t.tg.game.init());
}

bool verify_wco(const ValueTable& t, const MooreStrategy& s) {
    ProductGame p = product_with_strategy(t.tg, s);
    auto ext = fixed_strategy_extremes(p, s.player);
    const auto& pv = t.of(s.player);
    for (int x = 0; x < p.arena.size(); ++x) {
        int tv = p.state[x].first;
        if (ext[x].first != pv.aval[tv] || ext[x].second != pv.acval[tv]) return false;
    }
    return true;
}

WcoCandidate construct_wco_candidate(const Game& g, int player) {
    return construct_wco_candidate(compute_value_table(g), player);
}

WcoCandidate construct_wco_candidate(const ValueTable& t, int player) {
    Playbook pb(t, player);
    std::optional<MooreStrategy> first;
    for (auto variant : {Playbook::kAcvA, Playbook::kAcvB, Playbook::kAcvC}) {
        auto s = realize(t, player, from_playbook(pb, [&pb, variant](int tv) { return pb.wco(tv, variant); }),
                         t.tg.game.init());
        if (verify_wco(t, s)) return {s, true};
        if (!first) first = s;
    }
    return {*first, false};
}

MooreStrategy dominating_strategy(const ValueTable& t, const MooreStrategy& s, const AdmissibilityVerdict& v) {
    if (v.admissible) throw Error("strategy is admissible; nothing dominates it");
    Playbook pb(t, s.player);
    auto start = [&pb, &v](int tv) {
        return v.violated == Violation::Eq3 ? pb.worst(tv) : pb.wco(tv, Playbook::kAcvA);
    };
    MooreStrategy tau = realize(t, s.player, from_playbook(pb, start), v.tv);
    const Game& g = t.tg.source;
    const History& h = v.witness;
    const int last = static_cast<int>(h.size()) - 1;
    // memory layout: tracking (k, m) | off track m | tau m
    const int track = static_cast<int>(h.size()) * s.memory;
    auto tracking = [&](int k, int m) { return k * s.memory + m; };
    auto off = [&](int m) { return track + m; };
    auto in_tau = [&](int m) { return track + s.memory + m; };
    MooreStrategy r;
    r.player = s.player;
    r.memory = track + s.memory + tau.memory;
    r.m0 = last == 0 ? in_tau(tau.m0) : tracking(0, s.m0);
    r.update.assign(r.memory, std::vector<int>(g.size()));
    r.move.assign(r.memory, std::vector<int>(g.size(), -1));
    for (int k = 0; k < static_cast<int>(h.size()); ++k)
        for (int m = 0; m < s.memory; ++m)
            for (int x = 0; x < g.size(); ++x) {
                int m2 = s.update[m][x];
                int id = tracking(k, m);
                r.move[id][x] = s.move[m][x];
                if (k < last && x == h[k + 1]) r.update[id][x] = k + 1 == last ? in_tau(tau.m0) : tracking(k + 1, m2);
                else r.update[id][x] = off(m2);
            }
    for (int m = 0; m < s.memory; ++m)
        for (int x = 0; x < g.size(); ++x) {
            r.move[off(m)][x] = s.move[m][x];
            r.update[off(m)][x] = off(s.update[m][x]);
        }
    for (int m = 0; m < tau.memory; ++m)
        for (int x = 0; x < g.size(); ++x) {
            r.move[in_tau(m)][x] = tau.move[m][x];
            r.update[in_tau(m)][x] = in_tau(tau.update[m][x]);
        }
    return trim_strategy(g, r);
}

} // namespace qadm
