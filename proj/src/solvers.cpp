#include "qadm/solvers.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <cassert>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace qadm {

namespace {

using Adj = std::vector<std::vector<int>>;

Adj adjacency(const Arena& a) {
    Adj s(a.size());
    for (int v = 0; v < a.size(); ++v)
        for (auto& mv : a.succ[v]) s[v].push_back(mv.to);
    return s;
}

// Attractor for `side` inside the subgame `in` (moves leaving `in` are ignored).
Region attr_core(const Adj& succ, const std::vector<char>& side_owned, const std::vector<char>& in,
                 const std::vector<char>& target, const EdgePred& te) {
    const int n = static_cast<int>(succ.size());
    Region r{std::vector<char>(n, 0), std::vector<int>(n, -1)};
    std::vector<std::vector<std::pair<int, int>>> pred(n);
    std::vector<int> cnt(n, 0);
    std::deque<int> q;
    for (int v = 0; v < n; ++v) {
        if (!in[v]) continue;
        if (!target.empty() && target[v]) {
            r.win[v] = 1;
            q.push_back(v);
            continue;
        }
        int c = 0, hit = -1;
        for (int k = 0; k < static_cast<int>(succ[v].size()); ++k) {
            int t = succ[v][k];
            if (!in[t]) continue;
            if (te && te(v, k)) {
                if (hit < 0) hit = t;
            } else {
                ++c;
                pred[t].push_back({v, k});
            }
        }
        if (side_owned[v]) {
            if (hit >= 0) {
                r.win[v] = 1;
                r.strategy[v] = hit;
                q.push_back(v);
            }
        } else {
            cnt[v] = c;
            if (c == 0) {
                r.win[v] = 1;
                q.push_back(v);
            }
        }
    }
    while (!q.empty()) {
        int t = q.front();
        q.pop_front();
        for (auto [u, k] : pred[t]) {
            if (r.win[u]) continue;
            if (side_owned[u]) {
                r.win[u] = 1;
                r.strategy[u] = t;
                q.push_back(u);
            } else if (--cnt[u] == 0) {
                r.win[u] = 1;
                q.push_back(u);
            }
        }
    }
    return r;
}

std::vector<char> owned_by(const Arena& a, int side) {
    std::vector<char> o(a.size());
    for (int v = 0; v < a.size(); ++v) o[v] = (a.max_owned[v] != 0) == (side == kMax);
    return o;
}

struct BuchiResult {
    std::vector<char> win;     // side wins the Büchi condition
    std::vector<int> strat;    // side's strategy on win
    std::vector<int> counter;  // opponent's strategy on the complement
};

BuchiResult buchi(const Arena& a, int side, const EdgePred& good) {
    const int n = a.size();
    Adj succ = adjacency(a);
    auto mine = owned_by(a, side);
    auto theirs = owned_by(a, 1 - side);
    std::vector<char> S(n, 1);
    BuchiResult res{{}, {}, std::vector<int>(n, -1)};
    while (true) {
        Region R = attr_core(succ, mine, S, {}, good);
        std::vector<char> base(n, 0);
        bool any = false;
        for (int v = 0; v < n; ++v)
            if (S[v] && !R.win[v]) base[v] = 1, any = true;
        if (!any) {
            res.win = S;
            res.strat = R.strategy;
            for (int v = 0; v < n; ++v)
                if (!S[v]) res.strat[v] = -1;
            return res;
        }
        Region T = attr_core(succ, theirs, S, base, {});
        for (int v = 0; v < n; ++v) {
            if (!T.win[v]) continue;
            if (theirs[v]) {
                if (base[v]) {
                    for (int k = 0; k < static_cast<int>(succ[v].size()); ++k) {
                        int t = succ[v][k];
                        if (base[t] && !good(v, k)) {
                            res.counter[v] = t;
                            break;
                        }
                    }
                    assert(res.counter[v] >= 0);
                } else {
                    res.counter[v] = T.strategy[v];
                }
            }
            S[v] = 0;
        }
    }
}

std::vector<Rational> distinct_weights(const Arena& a) {
    std::set<Rational> ws;
    for (auto& s : a.succ)
        for (auto& mv : s) ws.insert(mv.w);
    return {ws.begin(), ws.end()};
}

bool nontrivial(const Adj& succ, const std::vector<int>& comp, const std::vector<int>& members) {
    if (members.size() > 1) return true;
    int v = members.front();
    return std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end() && comp[v] >= 0;
}

Adj filter_adj(const Arena& a, const std::function<bool(int, int)>& keep_edge) {
    Adj s(a.size());
    for (int v = 0; v < a.size(); ++v)
        for (int k = 0; k < static_cast<int>(a.succ[v].size()); ++k)
            if (keep_edge(v, k)) s[v].push_back(a.succ[v][k].to);
    return s;
}

std::vector<std::vector<int>> members_of(const std::vector<int>& comp, int count) {
    std::vector<std::vector<int>> m(count);
    for (int v = 0; v < static_cast<int>(comp.size()); ++v)
        if (comp[v] >= 0) m[comp[v]].push_back(v);
    return m;
}

// vertices lying on a cycle of succ
std::vector<char> on_cycle(const Adj& succ) {
    const int n = static_cast<int>(succ.size());
    int cnt = 0;
    auto comp = scc_ids(succ, std::vector<char>(n, 1), &cnt);
    auto mem = members_of(comp, cnt);
    std::vector<char> r(n, 0);
    for (int c = 0; c < cnt; ++c)
        if (nontrivial(succ, comp, mem[c]))
            for (int v : mem[c]) r[v] = 1;
    return r;
}

std::vector<char> backward_reach(const Adj& succ, const std::vector<char>& from) {
    const int n = static_cast<int>(succ.size());
    Adj pred(n);
    for (int v = 0; v < n; ++v)
        for (int t : succ[v]) pred[t].push_back(v);
    std::vector<char> r = from;
    std::deque<int> q;
    for (int v = 0; v < n; ++v)
        if (r[v]) q.push_back(v);
    while (!q.empty()) {
        int t = q.front();
        q.pop_front();
        for (int u : pred[t])
            if (!r[u]) r[u] = 1, q.push_back(u);
    }
    return r;
}

// shortest path from `from` to the first vertex of `target` discovered; empty if none
std::vector<int> bfs_path(const Adj& succ, int from, const std::vector<char>& target) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> parent(n, -2);
    std::deque<int> q{from};
    parent[from] = -1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (target[u]) {
            std::vector<int> path;
            for (int x = u; x != -1; x = parent[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (int t : succ[u])
            if (parent[t] == -2) parent[t] = u, q.push_back(t);
    }
    return {};
}

// shortest cycle through x, starting at x
std::vector<int> shortest_cycle(const Adj& succ, int x) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> parent(n, -2);
    std::deque<int> q{x};
    parent[x] = -1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int t : succ[u]) {
            if (t == x) {
                std::vector<int> path;
                for (int y = u; y != -1; y = parent[y]) path.push_back(y);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (parent[t] == -2) parent[t] = u, q.push_back(t);
        }
    }
    return {};
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
    if (l > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("weight denominators too large");
    return static_cast<std::int64_t>(l);
}

// integer weights w*L
struct Scaled {
    std::int64_t L = 1;
    std::int64_t W = 0;
    std::vector<std::vector<std::int64_t>> w;
};

Scaled scale(const Arena& a) {
    Scaled s;
    for (auto& out : a.succ)
        for (auto& mv : out) s.L = lcm_checked(s.L, mv.w.den());
    s.w.resize(a.size());
    for (int v = 0; v < a.size(); ++v)
        for (auto& mv : a.succ[v]) {
            Rational x = mv.w * Rational(s.L);
            s.w[v].push_back(x.num());
            s.W = std::max<std::int64_t>(s.W, x.num() < 0 ? -x.num() : x.num());
        }
    return s;
}

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;

// maximum cycle mean of a strongly connected member set (integer weights)
Rational karp(const Arena& a, const Scaled& sw, const std::vector<int>& members, const std::vector<int>& comp) {
    const int s = static_cast<int>(members.size());
    std::map<int, int> local;
    for (int i = 0; i < s; ++i) local[members[i]] = i;
    const int c = comp[members[0]];
    std::vector<std::vector<std::int64_t>> D(s + 1, std::vector<std::int64_t>(s, kNegInf));
    D[0][0] = 0;
    for (int k = 1; k <= s; ++k)
        for (int i = 0; i < s; ++i) {
            if (D[k - 1][i] == kNegInf) continue;
            int v = members[i];
            for (int j = 0; j < static_cast<int>(a.succ[v].size()); ++j) {
                int t = a.succ[v][j].to;
                if (comp[t] != c) continue;
                int li = local[t];
                D[k][li] = std::max(D[k][li], D[k - 1][i] + sw.w[v][j]);
            }
        }
    bool have = false;
    Rational best;
    for (int i = 0; i < s; ++i) {
        if (D[s][i] == kNegInf) continue;
        bool first = true;
        Rational worst;
        for (int k = 0; k < s; ++k) {
            if (D[k][i] == kNegInf) continue;
            Rational r(D[s][i] - D[k][i], s - k);
            if (first || r < worst) worst = r, first = false;
        }
        if (!first && (!have || worst > best)) best = worst, have = true;
    }
    assert(have);
    return best / Rational(sw.L);
}

Measure dual(Measure m) {
    switch (m) {
    case Measure::Inf: return Measure::Sup;
    case Measure::Sup: return Measure::Inf;
    case Measure::LimInf: return Measure::LimSup;
    case Measure::LimSup: return Measure::LimInf;
    default: return m;
    }
}

Arena negated(const Arena& a) {
    Arena b = a;
    for (auto& out : b.succ)
        for (auto& mv : out) mv.w = -mv.w;
    return b;
}

std::vector<Rational> mp_values(const Arena& a, const Scaled& sw) {
    const std::int64_t n = a.size();
    std::vector<Rational> val(n);
    if (n == 0) return val;
    std::int64_t K = std::max<std::int64_t>(1, 4 * n * n * n * sw.W);
    std::vector<std::int64_t> nu(n, 0), nx(n);
    for (std::int64_t it = 0; it < K; ++it) {
        for (int v = 0; v < n; ++v) {
            bool mx = a.max_owned[v];
            std::int64_t best = 0;
            for (std::size_t k = 0; k < a.succ[v].size(); ++k) {
                std::int64_t x = sw.w[v][k] + nu[a.succ[v][k].to];
                if (k == 0 || (mx ? x > best : x < best)) best = x;
            }
            nx[v] = best;
        }
        nu.swap(nx);
    }
    for (int v = 0; v < n; ++v) {
        // unique p/q with q <= n and |p/q - nu/K| < 1/(2n(n-1))
        __int128 width = n > 1 ? 2 * static_cast<__int128>(n) * (n - 1) : 2;
        bool found = false;
        for (std::int64_t q = 1; q <= n && !found; ++q) {
            __int128 num = 2 * static_cast<__int128>(nu[v]) * q + K;
            __int128 den = 2 * static_cast<__int128>(K);
            __int128 p = num >= 0 ? num / den : -((-num + den - 1) / den);
            __int128 diff = p * K - static_cast<__int128>(nu[v]) * q;
            if (diff < 0) diff = -diff;
            if (diff * width < static_cast<__int128>(q) * K) {
                val[v] = Rational(static_cast<std::int64_t>(p), q) / Rational(sw.L);
                found = true;
            }
        }
        if (!found) throw std::logic_error("mean-payoff rounding failed");
    }
    return val;
}

// positional strategy for max guaranteeing the value class of every vertex
std::vector<int> mp_strategy(const Arena& a, const Scaled& sw, const std::vector<Rational>& val) {
    const int n = a.size();
    std::vector<int> strat(n, -1);
    std::set<Rational> classes(val.begin(), val.end());
    constexpr std::int64_t kTop = std::numeric_limits<std::int64_t>::max();
    for (const Rational& c : classes) {
        Rational cs = c * Rational(sw.L);
        std::int64_t p = cs.num(), q = cs.den();
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (val[v] == c) members.push_back(v);
        std::int64_t bound = 1;
        for (int v : members)
            for (std::size_t k = 0; k < a.succ[v].size(); ++k) {
                std::int64_t w = q * sw.w[v][k] - p;
                bound += w < 0 ? -w : w;
            }
        std::vector<std::int64_t> f(n, 0);
        auto succ_f = [&](int t) { return val[t] == c ? f[t] : 0; };
        auto lift = [&](std::int64_t ft, std::int64_t w) -> std::int64_t {
            if (ft == kTop) return kTop;
            std::int64_t x = std::max<std::int64_t>(0, ft - w);
            return x > bound ? kTop : x;
        };
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v : members) {
                bool mx = a.max_owned[v];
                std::int64_t best = mx ? kTop : 0;
                bool any = false;
                for (std::size_t k = 0; k < a.succ[v].size(); ++k) {
                    int t = a.succ[v][k].to;
                    if (val[t] < c) continue;
                    std::int64_t x = lift(succ_f(t), q * sw.w[v][k] - p);
                    if (!any) best = x, any = true;
                    else best = mx ? std::min(best, x) : std::max(best, x);
                }
                if (best > f[v]) f[v] = best, changed = true;
            }
        }
        for (int v : members) {
            if (f[v] == kTop) throw std::logic_error("energy certificate failed for mean-payoff class");
            if (!a.max_owned[v]) continue;
            for (std::size_t k = 0; k < a.succ[v].size(); ++k) {
                int t = a.succ[v][k].to;
                if (val[t] < c) continue;
                if (lift(succ_f(t), q * sw.w[v][k] - p) <= f[v]) {
                    strat[v] = t;
                    break;
                }
            }
        }
    }
    return strat;
}

} // namespace

std::vector<int> scc_ids(const std::vector<std::vector<int>>& succ, const std::vector<char>& keep, int* count) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), st;
    std::vector<char> on(n, 0);
    int counter = 0, c = 0;
    std::vector<std::pair<int, std::size_t>> call;
    for (int s = 0; s < n; ++s) {
        if (!keep[s] || idx[s] >= 0) continue;
        idx[s] = low[s] = counter++;
        st.push_back(s);
        on[s] = 1;
        call.push_back({s, 0});
        while (!call.empty()) {
            int v = call.back().first;
            std::size_t& i = call.back().second;
            if (i < succ[v].size()) {
                int w = succ[v][i++];
                if (!keep[w]) continue;
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    st.push_back(w);
                    on[w] = 1;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
            } else {
                if (low[v] == idx[v]) {
                    while (true) {
                        int w = st.back();
                        st.pop_back();
                        on[w] = 0;
                        comp[w] = c;
                        if (w == v) break;
                    }
                    ++c;
                }
                call.pop_back();
                if (!call.empty()) {
                    int u = call.back().first;
                    low[u] = std::min(low[u], low[v]);
                }
            }
        }
    }
    if (count) *count = c;
    return comp;
}

Arena coalition_arena(const Game& g, int player) {
    Arena a;
    a.succ.resize(g.size());
    a.max_owned.resize(g.size());
    for (int v = 0; v < g.size(); ++v) {
        a.max_owned[v] = g.owner(v) == player;
        for (int e : g.out(v)) a.succ[v].push_back({g.edge(e).dst, g.weight(e, player)});
    }
    return a;
}

Arena sub_arena(const Arena& a, const std::vector<char>& keep, std::vector<int>* old_of_new) {
    std::vector<int> nid(a.size(), -1), old;
    for (int v = 0; v < a.size(); ++v)
        if (keep[v]) nid[v] = static_cast<int>(old.size()), old.push_back(v);
    Arena b;
    b.succ.resize(old.size());
    b.max_owned.resize(old.size());
    for (std::size_t i = 0; i < old.size(); ++i) {
        b.max_owned[i] = a.max_owned[old[i]];
        for (auto& mv : a.succ[old[i]])
            if (nid[mv.to] >= 0) b.succ[i].push_back({nid[mv.to], mv.w});
    }
    if (old_of_new) *old_of_new = old;
    return b;
}

Region attractor(const Arena& a, int side, const std::vector<char>& target, const EdgePred& target_edge) {
    return attr_core(adjacency(a), owned_by(a, side), std::vector<char>(a.size(), 1), target, target_edge);
}

Region solve_threshold(const Arena& a, Measure m, const Rational& theta) {
    const int n = a.size();
    auto w = [&](int v, int k) -> const Rational& { return a.succ[v][k].w; };
    switch (m) {
    case Measure::Sup:
        return attractor(a, kMax, {}, [&](int v, int k) { return w(v, k) >= theta; });
    case Measure::Inf: {
        Region bad = attractor(a, kMin, {}, [&](int v, int k) { return w(v, k) < theta; });
        Region r{std::vector<char>(n, 0), std::vector<int>(n, -1)};
        for (int v = 0; v < n; ++v) r.win[v] = !bad.win[v];
        for (int v = 0; v < n; ++v) {
            if (!r.win[v] || !a.max_owned[v]) continue;
            for (int k = 0; k < static_cast<int>(a.succ[v].size()); ++k)
                if (w(v, k) >= theta && r.win[a.succ[v][k].to]) {
                    r.strategy[v] = a.succ[v][k].to;
                    break;
                }
        }
        return r;
    }
    case Measure::LimSup: {
        auto b = buchi(a, kMax, [&](int v, int k) { return w(v, k) >= theta; });
        return {b.win, b.strat};
    }
    case Measure::LimInf: {
        auto b = buchi(a, kMin, [&](int v, int k) { return w(v, k) < theta; });
        Region r{std::vector<char>(n, 0), std::vector<int>(n, -1)};
        for (int v = 0; v < n; ++v) {
            r.win[v] = !b.win[v];
            if (r.win[v] && a.max_owned[v]) r.strategy[v] = b.counter[v];
        }
        return r;
    }
    default:
        throw UnsupportedMeasure("threshold games are not defined for mean-payoff; use zero_sum_value");
    }
}

ZeroSum zero_sum_value(const Arena& a, Measure m) {
    const int n = a.size();
    ZeroSum z{std::vector<Rational>(n), std::vector<int>(n, -1)};
    if (n == 0) return z;
    if (is_mean_payoff(m)) {
        Scaled sw = scale(a);
        z.value = mp_values(a, sw);
        z.strategy = mp_strategy(a, sw, z.value);
        return z;
    }
    auto ws = distinct_weights(a);
    std::vector<char> done(n, 0);
    for (int j = static_cast<int>(ws.size()) - 1; j >= 0; --j) {
        Region r = solve_threshold(a, m, ws[j]);
        for (int v = 0; v < n; ++v)
            if (r.win[v] && !done[v]) {
                done[v] = 1;
                z.value[v] = ws[j];
                z.strategy[v] = a.max_owned[v] ? r.strategy[v] : -1;
            }
    }
    return z;
}

std::vector<Rational> one_player_max_value(const Arena& a, Measure m) {
    const int n = a.size();
    std::vector<Rational> val(n);
    if (n == 0) return val;
    Adj succ = adjacency(a);
    if (m == Measure::Inf || m == Measure::LimInf) {
        auto ws = distinct_weights(a);
        std::vector<char> done(n, 0);
        for (int j = static_cast<int>(ws.size()) - 1; j >= 0; --j) {
            Adj good = filter_adj(a, [&](int v, int k) { return a.succ[v][k].w >= ws[j]; });
            auto reach = backward_reach(m == Measure::Inf ? good : succ, on_cycle(good));
            for (int v = 0; v < n; ++v)
                if (reach[v] && !done[v]) done[v] = 1, val[v] = ws[j];
        }
        return val;
    }
    int cnt = 0;
    auto comp = scc_ids(succ, std::vector<char>(n, 1), &cnt);
    auto mem = members_of(comp, cnt);
    Scaled sw;
    if (is_mean_payoff(m)) sw = scale(a);
    std::vector<std::optional<Rational>> cv(cnt);
    for (int c = 0; c < cnt; ++c) {
        std::optional<Rational> best;
        auto upd = [&](const Rational& x) {
            if (!best || x > *best) best = x;
        };
        bool nt = nontrivial(succ, comp, mem[c]);
        for (int v : mem[c])
            for (auto& mv : a.succ[v]) {
                if (comp[mv.to] != c) {
                    if (cv[comp[mv.to]]) upd(*cv[comp[mv.to]]);
                    if (m == Measure::Sup) upd(mv.w);
                } else if (m == Measure::Sup || m == Measure::LimSup) {
                    upd(mv.w);
                }
            }
        if (is_mean_payoff(m) && nt) upd(karp(a, sw, mem[c], comp));
        cv[c] = best;
        for (int v : mem[c]) val[v] = *best;
    }
    return val;
}

std::vector<Rational> one_player_min_value(const Arena& a, Measure m) {
    auto v = one_player_max_value(negated(a), dual(m));
    for (auto& x : v) x = -x;
    return v;
}

std::vector<Rational> one_player_max_value(const Game& g, int player) {
    return one_player_max_value(coalition_arena(g, player), g.measure());
}

Lasso cooperative_lasso(const Arena& a, Measure m, int v) {
    const int n = a.size();
    Rational c = one_player_max_value(a, m)[v];
    Adj all = adjacency(a);
    auto make = [&](std::vector<int> path, std::vector<int> cyc) {
        path.pop_back();
        return Lasso{path, cyc};
    };
    if (m == Measure::Inf || m == Measure::LimInf) {
        Adj good = filter_adj(a, [&](int u, int k) { return a.succ[u][k].w >= c; });
        auto target = on_cycle(good);
        auto path = bfs_path(m == Measure::Inf ? good : all, v, target);
        return make(path, shortest_cycle(good, path.back()));
    }
    if (m == Measure::LimSup) {
        int cnt = 0;
        auto comp = scc_ids(all, std::vector<char>(n, 1), &cnt);
        std::vector<char> target(n, 0);
        std::vector<int> via(n, -1);
        for (int u = 0; u < n; ++u)
            for (auto& mv : a.succ[u])
                if (mv.w >= c && comp[mv.to] == comp[u] && via[u] < 0) target[u] = 1, via[u] = mv.to;
        auto path = bfs_path(all, v, target);
        int x = path.back();
        std::vector<int> cyc{x};
        if (via[x] != x) {
            std::vector<char> home(n, 0);
            home[x] = 1;
            auto back = bfs_path(all, via[x], home);
            cyc.insert(cyc.end(), back.begin(), back.end() - 1);
        }
        return make(path, cyc);
    }
    if (m == Measure::Sup) {
        std::vector<char> target(n, 0);
        std::vector<int> via(n, -1);
        for (int u = 0; u < n; ++u)
            for (auto& mv : a.succ[u])
                if (mv.w >= c && via[u] < 0) target[u] = 1, via[u] = mv.to;
        auto path = bfs_path(all, v, target);
        auto rest = bfs_path(all, via[path.back()], on_cycle(all));
        path.insert(path.end(), rest.begin(), rest.end());
        return make(path, shortest_cycle(all, path.back()));
    }
    // mean-payoff: cycles of mean c live in the tight subgraph of some SCC
    Scaled sw = scale(a);
    Rational cs = c * Rational(sw.L);
    int cnt = 0;
    auto comp = scc_ids(all, std::vector<char>(n, 1), &cnt);
    auto mem = members_of(comp, cnt);
    std::vector<char> target(n, 0);
    Adj tight(n);
    for (int k = 0; k < cnt; ++k) {
        if (!nontrivial(all, comp, mem[k]) || karp(a, sw, mem[k], comp) != c) continue;
        std::map<int, std::int64_t> pi;
        for (int u : mem[k]) pi[u] = 0;
        auto w2 = [&](int u, int j) { return cs.den() * sw.w[u][j] - cs.num(); };
        for (std::size_t round = 0; round < mem[k].size(); ++round)
            for (int u : mem[k])
                for (std::size_t j = 0; j < a.succ[u].size(); ++j) {
                    int t = a.succ[u][j].to;
                    if (comp[t] == k) pi[t] = std::max(pi[t], pi[u] + w2(u, static_cast<int>(j)));
                }
        for (int u : mem[k])
            for (std::size_t j = 0; j < a.succ[u].size(); ++j) {
                int t = a.succ[u][j].to;
                if (comp[t] == k && pi[t] == pi[u] + w2(u, static_cast<int>(j))) tight[u].push_back(t);
            }
    }
    auto cyc_vertices = on_cycle(tight);
    for (int u = 0; u < n; ++u) target[u] = cyc_vertices[u];
    auto path = bfs_path(all, v, target);
    return make(path, shortest_cycle(tight, path.back()));
}

std::pair<Region, Region> solve_parity(const ParityGame& pg) {
    const int n = pg.size();
    std::vector<char> owned0(n), owned1(n);
    for (int v = 0; v < n; ++v) owned0[v] = pg.owner[v] == 0, owned1[v] = pg.owner[v] == 1;
    std::vector<int> strat(n, -1);
    std::function<std::array<std::vector<char>, 2>(const std::vector<char>&)> solve =
        [&](const std::vector<char>& G) -> std::array<std::vector<char>, 2> {
        std::array<std::vector<char>, 2> W{std::vector<char>(n, 0), std::vector<char>(n, 0)};
        int p = -1;
        for (int v = 0; v < n; ++v)
            if (G[v]) p = std::max(p, pg.priority[v]);
        if (p < 0) return W;
        const int al = p % 2;
        const auto& mine = al == 0 ? owned0 : owned1;
        const auto& theirs = al == 0 ? owned1 : owned0;
        std::vector<char> U(n, 0);
        for (int v = 0; v < n; ++v) U[v] = G[v] && pg.priority[v] == p;
        Region A = attr_core(pg.succ, mine, G, U, {});
        std::vector<char> rest(n, 0);
        for (int v = 0; v < n; ++v) rest[v] = G[v] && !A.win[v];
        auto sub = solve(rest);
        bool opp_empty = std::none_of(sub[1 - al].begin(), sub[1 - al].end(), [](char c) { return c; });
        if (opp_empty) {
            for (int v = 0; v < n; ++v) {
                if (!A.win[v] || !mine[v]) continue;
                if (!U[v]) {
                    strat[v] = A.strategy[v];
                } else {
                    for (int t : pg.succ[v])
                        if (G[t]) {
                            strat[v] = t;
                            break;
                        }
                }
            }
            W[al] = G;
            return W;
        }
        Region B = attr_core(pg.succ, theirs, G, sub[1 - al], {});
        for (int v = 0; v < n; ++v)
            if (B.win[v] && theirs[v] && !sub[1 - al][v]) strat[v] = B.strategy[v];
        std::vector<char> rest2(n, 0);
        for (int v = 0; v < n; ++v) rest2[v] = G[v] && !B.win[v];
        auto sub2 = solve(rest2);
        for (int v = 0; v < n; ++v) {
            W[1 - al][v] = B.win[v] || sub2[1 - al][v];
            W[al][v] = sub2[al][v];
        }
        return W;
    };
    auto W = solve(std::vector<char>(n, 1));
    Region r0{W[0], std::vector<int>(n, -1)}, r1{W[1], std::vector<int>(n, -1)};
    for (int v = 0; v < n; ++v) {
        if (W[0][v] && pg.owner[v] == 0) r0.strategy[v] = strat[v];
        if (W[1][v] && pg.owner[v] == 1) r1.strategy[v] = strat[v];
    }
    return {r0, r1};
}

std::vector<std::pair<Rational, Rational>> fixed_strategy_extremes(const ProductGame& p, int player) {
    Arena a = coalition_arena(p.arena, player);
    auto lo = one_player_min_value(a, p.arena.measure());
    auto hi = one_player_max_value(a, p.arena.measure());
    std::vector<std::pair<Rational, Rational>> r;
    for (int v = 0; v < a.size(); ++v) r.push_back({lo[v], hi[v]});
    return r;
}

} // namespace qadm
