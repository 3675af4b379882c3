#include "qadm/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace qadm {

namespace {

void check_bound(const Game& g, int bound) {
    if (g.size() > bound)
        throw Error("oracle bound exceeded: " + std::to_string(g.size()) + " vertices > " + std::to_string(bound));
}

// enumerate memoryless choices for the vertices selected by `mine`
void for_each_profile(const Game& g, const std::vector<char>& mine, std::vector<int>& choice,
                      const std::function<void()>& f, int v = 0) {
    if (v == g.size()) {
        f();
        return;
    }
    if (!mine[v]) {
        for_each_profile(g, mine, choice, f, v + 1);
        return;
    }
    for (int e : g.out(v)) {
        choice[v] = g.edge(e).dst;
        for_each_profile(g, mine, choice, f, v + 1);
    }
}

std::optional<Rational> fold(Measure m, const std::optional<Rational>& r, const Rational& w) {
    if (!r) return w;
    return m == Measure::Inf ? std::min(*r, w) : std::max(*r, w);
}

bool better(const Rational& a, const std::optional<Rational>& b) { return !b || a > *b; }

} // namespace

Rational profile_payoff(const Game& g, int player, const std::vector<int>& choice, int v) {
    std::vector<int> pos(g.size(), -1);
    std::vector<int> seq;
    while (pos[v] < 0) {
        pos[v] = static_cast<int>(seq.size());
        seq.push_back(v);
        v = choice[v];
    }
    Lasso l{{seq.begin(), seq.begin() + pos[v]}, {seq.begin() + pos[v], seq.end()}};
    return payoff_of_lasso(g.measure(), g, player, l);
}

std::vector<Rational> brute_zero_sum(const Game& g, int player, int bound) {
    check_bound(g, bound);
    const int n = g.size();
    std::vector<char> mine(n), theirs(n);
    for (int v = 0; v < n; ++v) mine[v] = g.owner(v) == player, theirs[v] = !mine[v];
    std::vector<std::optional<Rational>> best(n);
    std::vector<int> choice(n, -1);
    for_each_profile(g, mine, choice, [&] {
        std::vector<std::optional<Rational>> worst(n);
        for_each_profile(g, theirs, choice, [&] {
            for (int v = 0; v < n; ++v) {
                Rational x = profile_payoff(g, player, choice, v);
                if (!worst[v] || x < *worst[v]) worst[v] = x;
            }
        });
        for (int v = 0; v < n; ++v)
            if (better(*worst[v], best[v])) best[v] = worst[v];
    });
    std::vector<Rational> r(n);
    for (int v = 0; v < n; ++v) r[v] = *best[v];
    return r;
}

namespace {

// Simple lassos of a successor graph over abstract states; calls f(prefix, cycle).
void simple_lassos(int start, const std::function<std::vector<int>(int)>& succ,
                   const std::function<void(const std::vector<int>&, std::size_t)>& f) {
    std::vector<int> path{start};
    std::map<int, std::size_t> on;
    on[start] = 0;
    std::function<void()> rec = [&] {
        for (int t : succ(path.back())) {
            auto it = on.find(t);
            if (it != on.end()) {
                f(path, it->second);
                continue;
            }
            on[t] = path.size();
            path.push_back(t);
            rec();
            path.pop_back();
            on.erase(t);
        }
    };
    rec();
}

// cooperative optimum over simple lassos from (vertex, record) inside `allowed`
Rational coop_search(const Game& g, int player, int vertex, const std::optional<Rational>& record,
                     const std::function<bool(int, const std::optional<Rational>&)>& allowed) {
    const Measure m = g.measure();
    const bool recorded = m == Measure::Inf || m == Measure::Sup;
    std::vector<std::pair<int, std::optional<Rational>>> states;
    std::map<std::pair<int, std::optional<Rational>>, int> ids;
    auto intern = [&](int v, const std::optional<Rational>& r) {
        auto key = std::make_pair(v, recorded ? r : std::nullopt);
        auto [it, fresh] = ids.try_emplace(key, static_cast<int>(states.size()));
        if (fresh) states.push_back(key);
        return it->second;
    };
    int s0 = intern(vertex, record);
    auto succ = [&](int s) {
        std::vector<int> r;
        auto [v, rec] = states[s];
        for (int e : g.out(v)) {
            int d = g.edge(e).dst;
            auto nr = recorded ? fold(m, rec, g.weight(e, player)) : std::nullopt;
            if (allowed(d, nr)) r.push_back(intern(d, nr));
        }
        return r;
    };
    std::optional<Rational> best;
    simple_lassos(s0, succ, [&](const std::vector<int>& path, std::size_t loop) {
        Lasso l;
        for (std::size_t k = 0; k < path.size(); ++k) (k < loop ? l.prefix : l.cycle).push_back(states[path[k]].first);
        Rational x = payoff_of_lasso(m, g, player, l);
        if (recorded && record) x = *fold(m, record, x);
        if (better(x, best)) best = x;
    });
    return *best;
}

} // namespace

std::vector<Rational> brute_cooperative(const Game& g, int player, int bound) {
    check_bound(g, bound);
    std::vector<Rational> r;
    for (int v = 0; v < g.size(); ++v)
        r.push_back(coop_search(g, player, v, std::nullopt, [](int, const std::optional<Rational>&) { return true; }));
    return r;
}

BruteFresh brute_fresh(const Game& g, int player, int bound) {
    return {brute_zero_sum(g, player, bound), brute_cooperative(g, player, bound)};
}

BruteEntry brute_entry(const Game& g, int player, int vertex, const std::optional<Rational>& record, int bound) {
    return brute_entry(g, player, brute_fresh(g, player, bound), vertex, record);
}

BruteEntry brute_entry(const Game& g, int player, const BruteFresh& fresh, int vertex,
                       const std::optional<Rational>& record) {
    const Measure m = g.measure();
    const bool recorded = (m == Measure::Inf || m == Measure::Sup);
    auto lift = [&](const std::vector<Rational>& f, int v, const std::optional<Rational>& r) {
        return recorded && r ? *fold(m, r, f[v]) : f[v];
    };
    BruteEntry e{lift(fresh.aval, vertex, record), lift(fresh.cval, vertex, record), {}};
    const Rational q = e.aval;
    e.acval = coop_search(g, player, vertex, record,
                          [&](int v, const std::optional<Rational>& r) { return lift(fresh.aval, v, r) >= q; });
    return e;
}

Rational brute_acval(const Game& g, int player, int vertex, int bound) {
    return brute_entry(g, player, vertex, std::nullopt, bound).acval;
}

Game random_game(std::uint64_t seed, const RandomGameOptions& o) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    GameSpec s;
    s.players = o.players;
    s.measure = o.measure;
    s.init = "v0";
    for (int v = 0; v < o.size; ++v) s.vertices.push_back({"v" + std::to_string(v), uniform(1, o.players), 0});
    std::vector<int> targets(o.size);
    for (int v = 0; v < o.size; ++v) {
        std::iota(targets.begin(), targets.end(), 0);
        std::shuffle(targets.begin(), targets.end(), rng);
        int k = uniform(1, std::min(o.max_out, o.size));
        for (int j = 0; j < k; ++j) {
            std::vector<Rational> w;
            for (int p = 0; p < o.players; ++p) w.push_back(uniform(o.wmin, o.wmax));
            s.edges.push_back({"v" + std::to_string(v), "v" + std::to_string(targets[j]), w, 0});
        }
    }
    return Game(s);
}

Lasso random_lasso(const Game& g, std::uint64_t seed, int min_len) {
    std::mt19937_64 rng(seed);
    std::vector<int> walk{g.init()};
    while (true) {
        int v = walk.back();
        auto out = g.out(v);
        int t = g.edge(out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)]).dst;
        if (static_cast<int>(walk.size()) >= min_len) {
            std::vector<std::size_t> hits;
            for (std::size_t j = 0; j < walk.size(); ++j)
                if (walk[j] == t) hits.push_back(j);
            if (!hits.empty()) {
                std::size_t j = hits[std::uniform_int_distribution<std::size_t>(0, hits.size() - 1)(rng)];
                return {{walk.begin(), walk.begin() + j}, {walk.begin() + j, walk.end()}};
            }
        }
        walk.push_back(t);
    }
}

} // namespace qadm
