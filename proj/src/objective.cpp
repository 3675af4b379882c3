#include "qadm/objective.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

namespace qadm {

bool Formula::eval(const std::vector<char>& accepted) const {
    switch (kind) {
    case True: return true;
    case False: return false;
    case Comp: return accepted[comp];
    case Not: return !kids[0].eval(accepted);
    case And: return kids[0].eval(accepted) && kids[1].eval(accepted);
    default: return kids[0].eval(accepted) || kids[1].eval(accepted);
    }
}

Formula Formula::component(int c) { return {Comp, c, {}}; }
Formula Formula::negate(Formula f) { return {Not, -1, {std::move(f)}}; }
Formula Formula::both(Formula a, Formula b) { return {And, -1, {std::move(a), std::move(b)}}; }
Formula Formula::either(Formula a, Formula b) { return {Or, -1, {std::move(a), std::move(b)}}; }

int Objective::add(EdgeAutomaton a) {
    comps.push_back(std::move(a));
    return static_cast<int>(comps.size()) - 1;
}

Formula Objective::add_spec(const Game& g, const PayoffSpec& s) {
    std::function<Formula(const SpecNode&)> conv = [&](const SpecNode& n) -> Formula {
        switch (n.kind) {
        case SpecNode::True: return {Formula::True, -1, {}};
        case SpecNode::False: return {Formula::False, -1, {}};
        case SpecNode::Atom: {
            auto ge = [&] { return Formula::component(add(payoff_atom_automaton(g, n.player, n.q, false))); };
            auto gt = [&] { return Formula::component(add(payoff_atom_automaton(g, n.player, n.q, true))); };
            switch (n.op) {
            case CmpOp::Ge: return ge();
            case CmpOp::Gt: return gt();
            case CmpOp::Le: return Formula::negate(gt());
            case CmpOp::Lt: return Formula::negate(ge());
            default: return Formula::both(ge(), Formula::negate(gt()));
            }
        }
        case SpecNode::Automaton: return Formula::component(add(complete(g, s.automata[n.automaton])));
        case SpecNode::Not: return Formula::negate(conv(n.kids[0]));
        case SpecNode::And: return Formula::both(conv(n.kids[0]), conv(n.kids[1]));
        default: return Formula::either(conv(n.kids[0]), conv(n.kids[1]));
        }
    };
    return conv(s.root);
}

ZielonkaTree::ZielonkaTree(int colours, const std::function<bool(std::uint32_t)>& accepting) {
    if (colours > 20) throw Error("acceptance condition too large: " + std::to_string(colours) + " colours");
    const std::uint32_t all = colours == 32 ? ~0u : ((1u << colours) - 1);
    std::function<void(std::uint32_t, int, int)> build = [&](std::uint32_t label, int parent, int depth) {
        int id = static_cast<int>(nodes_.size());
        bool acc = accepting(label);
        nodes_.push_back({label, acc, parent, depth, {}});
        if (parent >= 0) nodes_[parent].kids.push_back(id);
        depth_ = std::max(depth_, depth);
        std::vector<std::uint32_t> cand;
        for (std::uint32_t t = (label - 1) & label; t; t = (t - 1) & label)
            if (accepting(t) != acc) cand.push_back(t);
        std::sort(cand.begin(), cand.end(), [](std::uint32_t a, std::uint32_t b) {
            int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa > pb : a > b;
        });
        std::vector<std::uint32_t> chosen;
        for (auto t : cand)
            if (std::none_of(chosen.begin(), chosen.end(), [t](std::uint32_t c) { return (t & c) == t; }))
                chosen.push_back(t);
        for (auto t : chosen) build(t, id, depth + 1);
    };
    build(all, -1, 0);
    offset_ = ((depth_ % 2 == 0) == nodes_[0].accepting) ? 0 : 1;
}

int ZielonkaTree::leftmost(int n) const {
    while (!nodes_[n].kids.empty()) n = nodes_[n].kids.front();
    return n;
}

int ZielonkaTree::priority(int n) const { return depth_ - nodes_[n].depth + offset_; }

int ZielonkaTree::leaves() const {
    return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.kids.empty(); }));
}

std::pair<int, int> ZielonkaTree::step(int leaf, const std::vector<int>& colours) const {
    int best = 0;
    for (int c : colours) {
        int n = leaf, below = -1;
        while (!(nodes_[n].label >> c & 1u)) below = n, n = nodes_[n].parent;
        best = std::max(best, priority(n));
        if (below < 0) continue;
        const auto& kids = nodes_[n].kids;
        auto k = std::find(kids.begin(), kids.end(), below) - kids.begin();
        leaf = leftmost(kids[(k + 1) % kids.size()]);
    }
    return {leaf, best};
}

BaseGraph base_of(const Game& g) {
    BaseGraph b;
    b.succ.resize(g.size());
    for (int v = 0; v < g.size(); ++v) {
        b.succ[v] = g.successors(v);
        b.orig.push_back(v);
    }
    b.init = g.init();
    return b;
}

BaseGraph base_of(const ProductGame& p) {
    BaseGraph b;
    b.succ.resize(p.arena.size());
    for (int x = 0; x < p.arena.size(); ++x) {
        b.succ[x] = p.arena.successors(x);
        b.orig.push_back(p.state[x].first);
    }
    b.init = p.arena.init();
    return b;
}

namespace {

struct Product {
    std::vector<int> base;
    std::vector<std::vector<int>> succ;
    std::vector<int> prio;
};

Product build_product(const BaseGraph& bg, const Objective& obj) {
    const int k = static_cast<int>(obj.comps.size());
    // compress each component's priorities and assign colours
    std::vector<std::map<int, int>> colour(k);
    std::vector<std::vector<int>> colour_prio(k);
    int ncol = 0;
    std::vector<int> first(k);
    for (int j = 0; j < k; ++j) {
        std::set<int> ps(obj.comps[j].priority.begin(), obj.comps[j].priority.end());
        first[j] = ncol;
        int c = -1, last = -1;
        for (int p : ps) {
            if (c < 0) c = p % 2;
            else if (p % 2 != last % 2) ++c;
            last = p;
            if (colour_prio[j].empty() || colour_prio[j].back() != c) colour_prio[j].push_back(c);
            colour[j][p] = first[j] + static_cast<int>(colour_prio[j].size()) - 1;
        }
        ncol += static_cast<int>(colour_prio[j].size());
    }
    std::vector<int> owner(ncol), cprio(ncol);
    for (int j = 0; j < k; ++j)
        for (std::size_t i = 0; i < colour_prio[j].size(); ++i) owner[first[j] + i] = j, cprio[first[j] + i] = colour_prio[j][i];
    ZielonkaTree zt(ncol, [&](std::uint32_t mask) {
        std::vector<int> top(k, -1);
        for (int c = 0; c < ncol; ++c)
            if (mask >> c & 1u) top[owner[c]] = std::max(top[owner[c]], cprio[c]);
        std::vector<char> acc(k);
        for (int j = 0; j < k; ++j) acc[j] = top[j] >= 0 && top[j] % 2 == 0;
        return obj.formula.eval(acc);
    });
    Product p;
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> keys;
    std::deque<int> q;
    auto intern = [&](std::vector<int> key) {
        auto [it, fresh] = ids.try_emplace(key, static_cast<int>(keys.size()));
        if (fresh) {
            p.base.push_back(key[0]);
            p.prio.push_back(key.back());
            p.succ.emplace_back();
            keys.push_back(std::move(key));
            q.push_back(it->second);
        }
        return it->second;
    };
    std::vector<int> init{bg.init};
    for (auto& c : obj.comps) init.push_back(c.initial);
    init.push_back(zt.initial());
    init.push_back(0);
    intern(init);
    std::vector<int> cols(k);
    while (!q.empty()) {
        int id = q.front();
        q.pop_front();
        const std::vector<int> key = keys[id];
        int x = key[0];
        for (int y : bg.succ[x]) {
            std::vector<int> nk{y};
            for (int j = 0; j < k; ++j) {
                auto nq = obj.comps[j].next(key[1 + j], bg.orig[x], bg.orig[y]);
                if (!nq) throw std::logic_error("component automaton is not complete");
                nk.push_back(*nq);
                cols[j] = colour[j].at(obj.comps[j].priority[*nq]);
            }
            auto [leaf, pr] = zt.step(key[1 + k], cols);
            nk.push_back(leaf);
            nk.push_back(pr);
            int to = intern(std::move(nk));
            p.succ[id].push_back(to);
        }
    }
    return p;
}

std::vector<int> bfs_parents(const std::vector<std::vector<int>>& succ, int from, const std::vector<char>& keep) {
    std::vector<int> parent(succ.size(), -2);
    std::deque<int> q{from};
    parent[from] = -1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int t : succ[u])
            if (keep[t] && parent[t] == -2) parent[t] = u, q.push_back(t);
    }
    return parent;
}

std::optional<std::vector<int>> accepting_cycle_path(const Product& p, std::vector<int>* cycle) {
    const int n = static_cast<int>(p.succ.size());
    int maxp = 0;
    for (int x : p.prio) maxp = std::max(maxp, x);
    for (int even = 0; even <= maxp; even += 2) {
        std::vector<char> keep(n);
        for (int x = 0; x < n; ++x) keep[x] = p.prio[x] <= even;
        int cnt = 0;
        auto comp = scc_ids(p.succ, keep, &cnt);
        std::vector<char> nontrivial(cnt, 0);
        std::vector<int> size(cnt, 0);
        for (int x = 0; x < n; ++x)
            if (comp[x] >= 0) ++size[comp[x]];
        for (int x = 0; x < n; ++x) {
            if (comp[x] < 0) continue;
            if (size[comp[x]] > 1) nontrivial[comp[x]] = 1;
            for (int y : p.succ[x])
                if (y == x) nontrivial[comp[x]] = 1;
        }
        for (int x = 0; x < n; ++x) {
            if (comp[x] < 0 || p.prio[x] != even || !nontrivial[comp[x]]) continue;
            std::vector<char> in(n);
            for (int y = 0; y < n; ++y) in[y] = comp[y] == comp[x];
            // shortest cycle through x inside its component
            std::vector<int> par(n, -2);
            std::deque<int> q{x};
            par[x] = -1;
            int closing = -1;
            while (!q.empty() && closing < 0) {
                int u = q.front();
                q.pop_front();
                for (int t : p.succ[u]) {
                    if (t == x) {
                        closing = u;
                        break;
                    }
                    if (in[t] && par[t] == -2) par[t] = u, q.push_back(t);
                }
            }
            cycle->clear();
            for (int u = closing; u != -1; u = par[u]) cycle->push_back(u);
            std::reverse(cycle->begin(), cycle->end());
            auto reach = bfs_parents(p.succ, 0, std::vector<char>(n, 1));
            std::vector<int> path;
            for (int u = reach[x]; u != -1; u = reach[u]) path.push_back(u);
            std::reverse(path.begin(), path.end());
            return path;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Lasso> find_accepting_lasso(const BaseGraph& base, const Objective& obj) {
    Product p = build_product(base, obj);
    std::vector<int> cycle;
    auto path = accepting_cycle_path(p, &cycle);
    if (!path) return std::nullopt;
    Lasso l;
    for (int x : *path) l.prefix.push_back(base.orig[p.base[x]]);
    for (int x : cycle) l.cycle.push_back(base.orig[p.base[x]]);
    return l;
}

namespace {

Formula all_of(std::vector<Formula> fs) {
    if (fs.empty()) return {Formula::True, -1, {}};
    Formula f = std::move(fs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i) f = Formula::both(std::move(f), std::move(fs[i]));
    return f;
}

void require_regular(const Game& g) {
    if (is_mean_payoff(g.measure()))
        throw UnsupportedMeasure("model checking and synthesis under admissibility are not supported for mean-payoff");
}

// Phi_adm(player) && (Phi_adm(others) -> spec)
Objective assume_admissible_objective(const LabeledGame& lg, int player, const PayoffSpec& spec, bool negated) {
    const Game& g = lg.table.tg.source;
    Objective obj;
    Formula own = Formula::component(obj.add(build_phi_adm_automaton(lg, player)));
    std::vector<Formula> others;
    for (int j = 1; j <= g.players(); ++j)
        if (j != player) others.push_back(Formula::component(obj.add(build_phi_adm_automaton(lg, j))));
    Formula f = obj.add_spec(g, spec);
    Formula goal = Formula::both(std::move(own), Formula::either(Formula::negate(all_of(std::move(others))), std::move(f)));
    obj.formula = negated ? Formula::negate(std::move(goal)) : std::move(goal);
    return obj;
}

} // namespace

McVerdict model_check_admissible(const Game& g, const PayoffSpec& spec) {
    require_regular(g);
    return model_check_admissible(label_edges(g), spec);
}

McVerdict model_check_admissible(const LabeledGame& lg, const PayoffSpec& spec) {
    const Game& g = lg.table.tg.source;
    require_regular(g);
    Objective obj;
    std::vector<Formula> adm;
    for (int j = 1; j <= g.players(); ++j) adm.push_back(Formula::component(obj.add(build_phi_adm_automaton(lg, j))));
    Formula f = obj.add_spec(g, spec);
    obj.formula = Formula::both(all_of(std::move(adm)), Formula::negate(std::move(f)));
    auto l = find_accepting_lasso(base_of(g), obj);
    if (!l) return {};
    return {false, l};
}

bool wins_assume_admissible(const LabeledGame& lg, const MooreStrategy& s, const PayoffSpec& spec) {
    const Game& g = lg.table.tg.source;
    require_regular(g);
    Objective obj = assume_admissible_objective(lg, s.player, spec, true);
    return !find_accepting_lasso(base_of(product_with_strategy(g, s)), obj);
}

SynthResult synthesize_assume_admissible(const Game& g, int player, const PayoffSpec& spec) {
    require_regular(g);
    return synthesize_assume_admissible(label_edges(g), player, spec);
}

SynthResult synthesize_assume_admissible(const LabeledGame& lg, int player, const PayoffSpec& spec) {
    const Game& g = lg.table.tg.source;
    require_regular(g);
    if (player < 1 || player > g.players()) throw Error("player out of range");
    Objective obj = assume_admissible_objective(lg, player, spec, false);
    BaseGraph base = base_of(g);
    Product p = build_product(base, obj);
    const int n = static_cast<int>(p.succ.size());
    ParityGame pg{p.succ, std::vector<int>(n), p.prio};
    for (int x = 0; x < n; ++x) pg.owner[x] = g.owner(p.base[x]) == player ? 0 : 1;
    auto [w0, w1] = solve_parity(pg);
    SynthResult r;
    if (!w0.win[0]) return r;
    r.realizable = true;
    auto to_moore = [&](const std::vector<int>& choice) {
        MooreStrategy s;
        s.player = player;
        s.memory = n;
        s.m0 = 0;
        s.update.assign(n, std::vector<int>(g.size()));
        s.move.assign(n, std::vector<int>(g.size(), -1));
        for (int x = 0; x < n; ++x) {
            for (int v = 0; v < g.size(); ++v) {
                s.update[x][v] = x;
                if (g.owner(v) == player) s.move[x][v] = g.edge(g.out(v)[0]).dst;
            }
            for (int y : p.succ[x]) s.update[x][p.base[y]] = y;
            if (pg.owner[x] == 0 && choice[x] >= 0) s.move[x][p.base[x]] = p.base[choice[x]];
        }
        return trim_strategy(g, s);
    };
    auto good = [&](const MooreStrategy& s) {
        return check_strategy_admissible(lg.table, s).admissible && wins_assume_admissible(lg, s, spec);
    };
    std::vector<std::pair<std::string, MooreStrategy>> cands;
    MooreStrategy parity = to_moore(w0.strategy);
    cands.push_back({"parity", parity});
    cands.push_back({"sco", construct_sco(lg.table, player)});
    auto wco = construct_wco_candidate(lg.table, player);
    if (wco.verified) cands.push_back({"wco", wco.strategy});
    for (auto& [name, s] : cands)
        if (good(s)) {
            r.admissible = true;
            r.source = name;
            r.strategy = s;
            return r;
        }
    // other positional strategies of the product that stay in the winning region
    std::vector<int> free;
    for (int x = 0; x < n; ++x)
        if (w0.win[x] && pg.owner[x] == 0) {
            int inside = 0;
            for (int y : p.succ[x]) inside += w0.win[y];
            if (inside > 1) free.push_back(x);
        }
    constexpr int kEnumerationCap = 512;
    std::vector<std::size_t> digit(free.size(), 0);
    for (int round = 0; round < kEnumerationCap; ++round) {
        std::vector<int> choice = w0.strategy;
        for (std::size_t i = 0; i < free.size(); ++i) {
            std::vector<int> opts;
            for (int y : p.succ[free[i]])
                if (w0.win[y]) opts.push_back(y);
            choice[free[i]] = opts[digit[i] % opts.size()];
        }
        MooreStrategy s = to_moore(choice);
        if (good(s)) {
            r.admissible = true;
            r.source = "enumeration";
            r.strategy = s;
            return r;
        }
        std::size_t i = 0;
        for (; i < free.size(); ++i) {
            int opts = 0;
            for (int y : p.succ[free[i]]) opts += w0.win[y];
            if (++digit[i] < static_cast<std::size_t>(opts)) break;
            digit[i] = 0;
        }
        if (i == free.size()) break;
    }
    r.source = "parity";
    r.strategy = parity;
    return r;
}

} // namespace qadm
