#include "qadm/transform.hpp"

#include <map>
#include <queue>

namespace qadm {

int TransformedGame::step(int tv, int v) const {
    for (int e : game.out(tv)) {
        int d = game.edge(e).dst;
        if (orig[d] == v) return d;
    }
    return -1;
}

TransformedGame make_prefix_independent(const Game& g) { return make_prefix_independent(g, {g.init()}); }

TransformedGame make_prefix_independent(const Game& g, const std::vector<int>& roots) {
    TransformedGame tg{g, g, true, {}, {}};
    if (g.measure() != Measure::Inf && g.measure() != Measure::Sup) {
        for (int v = 0; v < g.size(); ++v) tg.orig.push_back(v);
        tg.record.assign(g.size(), {});
        return tg;
    }
    const bool inf = g.measure() == Measure::Inf;
    using Rec = std::vector<std::optional<Rational>>;
    std::map<std::pair<int, Rec>, int> ids;
    std::vector<std::pair<int, Rec>> states;
    std::vector<int> per_vertex(g.size(), 0);
    std::vector<std::string> names;
    std::queue<int> q;
    auto intern = [&](int v, const Rec& r) {
        auto [it, fresh] = ids.try_emplace({v, r}, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back({v, r});
            names.push_back(g.name(v) + "__" + std::to_string(per_vertex[v]++));
            q.push(it->second);
        }
        return it->second;
    };
    int init_state = -1;
    for (int root : roots) {
        int id = intern(root, Rec(g.players()));
        if (root == g.init() && init_state < 0) init_state = id;
    }
    if (init_state < 0) init_state = 0;
    GameSpec spec;
    spec.players = g.players();
    spec.measure = g.measure();
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        auto [v, rec] = states[s];
        for (int e : g.out(v)) {
            auto& edge = g.edge(e);
            Rec nr(g.players());
            std::vector<Rational> w(g.players());
            for (int p = 0; p < g.players(); ++p) {
                Rational x = edge.w[p];
                if (rec[p]) x = inf ? std::min(*rec[p], x) : std::max(*rec[p], x);
                w[p] = x;
                nr[p] = x;
            }
            int t = intern(edge.dst, nr);
            spec.edges.push_back({names[s], names[t], w, 0});
        }
    }
    for (std::size_t s = 0; s < states.size(); ++s)
        spec.vertices.push_back({names[s], g.owner(states[s].first), 0});
    spec.init = names[init_state];
    Game tgame(spec);
    tg.game = tgame;
    tg.identity = false;
    tg.orig.assign(states.size(), 0);
    tg.record.assign(states.size(), {});
    for (std::size_t s = 0; s < states.size(); ++s) {
        int idx = tgame.index_of(names[s]);
        tg.orig[idx] = states[s].first;
        tg.record[idx] = states[s].second;
    }
    return tg;
}

int lift_history(const TransformedGame& tg, const History& h) {
    if (h.empty()) throw Error("empty history");
    int tv = tg.game.init();
    if (tg.orig[tv] != h.front()) throw Error("history does not start at the initial vertex");
    for (std::size_t k = 1; k < h.size(); ++k) {
        tv = tg.step(tv, h[k]);
        if (tv < 0) throw Error("history uses a missing edge");
    }
    return tv;
}

Lasso lift_lasso(const TransformedGame& tg, const Lasso& l) {
    std::vector<int> path;
    int tv = -1;
    auto push = [&](int v) {
        if (tv < 0) {
            tv = tg.game.init();
            if (tg.orig[tv] != v) throw Error("lasso does not start at the initial vertex");
        } else {
            tv = tg.step(tv, v);
            if (tv < 0) throw Error("lasso uses a missing edge");
        }
        path.push_back(tv);
    };
    for (int v : l.prefix) push(v);
    // unroll the cycle until the transformed vertex at the cycle head repeats
    std::map<int, std::size_t> head_at;
    while (true) {
        for (std::size_t k = 0; k < l.cycle.size(); ++k) {
            push(l.cycle[k]);
            if (k == 0) {
                auto [it, fresh] = head_at.try_emplace(tv, path.size() - 1);
                if (!fresh) {
                    path.pop_back();
                    std::size_t start = it->second;
                    Lasso r;
                    r.prefix.assign(path.begin(), path.begin() + start);
                    r.cycle.assign(path.begin() + start, path.end());
                    return r;
                }
            }
        }
    }
}

int ProductGame::find(int base, int mem) const {
    auto it = index.find({base, mem});
    return it == index.end() ? -1 : it->second;
}

namespace {

ProductGame build_product(const Game& base, const std::vector<int>& orig, const MooreStrategy& s,
                          const Game& og) {
    check_strategy(og, s);
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> states;
    std::vector<std::string> names;
    std::queue<int> q;
    auto intern = [&](int v, int m) {
        auto [it, fresh] = ids.try_emplace({v, m}, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back({v, m});
            names.push_back(base.name(v) + "_m" + std::to_string(m));
            q.push(it->second);
        }
        return it->second;
    };
    intern(base.init(), s.m0);
    GameSpec spec;
    spec.players = base.players();
    spec.measure = base.measure();
    while (!q.empty()) {
        int id = q.front();
        q.pop();
        auto [v, m] = states[id];
        bool own = base.owner(v) == s.player;
        int target = own ? s.move[m][orig[v]] : -1;
        bool found = false;
        for (int e : base.out(v)) {
            auto& edge = base.edge(e);
            if (own && orig[edge.dst] != target) continue;
            found = true;
            int t = intern(edge.dst, s.update[m][orig[edge.dst]]);
            spec.edges.push_back({names[id], names[t], edge.w, 0});
        }
        if (!found)
            throw Error("move (" + std::to_string(m) + ", " + og.name(orig[v]) + ") is not an edge");
    }
    for (std::size_t i = 0; i < states.size(); ++i) spec.vertices.push_back({names[i], base.owner(states[i].first), 0});
    spec.init = names[0];
    Game arena(spec);
    ProductGame p{arena, s.player, std::vector<std::pair<int, int>>(states.size()), {}};
    for (std::size_t i = 0; i < states.size(); ++i) {
        int idx = arena.index_of(names[i]);
        p.state[idx] = states[i];
        p.index[states[i]] = idx;
    }
    return p;
}

} // namespace

ProductGame product_with_strategy(const Game& g, const MooreStrategy& s) {
    std::vector<int> id(g.size());
    for (int v = 0; v < g.size(); ++v) id[v] = v;
    return build_product(g, id, s, g);
}

ProductGame product_with_strategy(const TransformedGame& tg, const MooreStrategy& s) {
    return build_product(tg.game, tg.orig, s, tg.source);
}

} // namespace qadm
