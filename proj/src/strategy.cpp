#include "qadm/strategy.hpp"

#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <sstream>

namespace qadm {

void check_strategy(const Game& g, const MooreStrategy& s) {
    if (s.player < 1 || s.player > g.players())
        throw Error("strategy for player " + std::to_string(s.player) + " but game has " +
                    std::to_string(g.players()) + " players");
    if (s.memory < 1) throw Error("strategy has no memory states");
    if (s.m0 < 0 || s.m0 >= s.memory) throw Error("initial memory out of range");
    if (static_cast<int>(s.update.size()) != s.memory || static_cast<int>(s.move.size()) != s.memory)
        throw Error("strategy tables do not match memory size");
    for (int m = 0; m < s.memory; ++m) {
        if (static_cast<int>(s.update[m].size()) != g.size() || static_cast<int>(s.move[m].size()) != g.size())
            throw Error("strategy tables do not match vertex count");
        for (int v = 0; v < g.size(); ++v) {
            int u = s.update[m][v];
            if (u < 0 || u >= s.memory)
                throw Error("update (" + std::to_string(m) + ", " + g.name(v) + ") out of range");
            if (g.owner(v) != s.player) continue;
            int t = s.move[m][v];
            if (t < 0) throw Error("missing move for (" + std::to_string(m) + ", " + g.name(v) + ")");
            if (t >= g.size() || !g.edge_between(v, t))
                throw Error("move (" + std::to_string(m) + ", " + g.name(v) + ") is not an edge");
        }
    }
}

MooreStrategy memoryless_strategy(const Game& g, int player, const std::vector<int>& choice) {
    MooreStrategy s;
    s.player = player;
    s.update.assign(1, std::vector<int>(g.size(), 0));
    s.move.assign(1, std::vector<int>(g.size(), -1));
    for (int v = 0; v < g.size(); ++v)
        if (g.owner(v) == player) s.move[0][v] = choice.at(v);
    check_strategy(g, s);
    return s;
}

MooreStrategy memoryless_strategy(const Game& g, int player,
                                  const std::vector<std::pair<std::string, std::string>>& choice) {
    std::vector<int> c(g.size(), -1);
    for (int v = 0; v < g.size(); ++v)
        if (g.owner(v) == player) c[v] = g.successors(v).front();
    for (auto& [a, b] : choice) c[g.index_of(a)] = g.index_of(b);
    return memoryless_strategy(g, player, c);
}

MooreStrategy parse_strategy(const Game& g, std::string_view text) {
    MooreStrategy s;
    bool have_player = false, have_mem = false, have_init = false;
    std::vector<std::tuple<int, int, int, int>> updates, moves;  // (m, v, x, line)
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto num = [&](const std::string& t) {
            try {
                std::size_t pos = 0;
                int v = std::stoi(t, &pos);
                if (pos != t.size()) throw std::invalid_argument(t);
                return v;
            } catch (const std::exception&) {
                throw ParseError(lineno, "expected an integer, got '" + t + "'");
            }
        };
        auto vertex = [&](const std::string& t) {
            auto v = g.find(t);
            if (!v) throw ParseError(lineno, "unknown vertex " + t);
            return *v;
        };
        auto want = [&](std::size_t n) {
            if (tok.size() != n) throw ParseError(lineno, "'" + tok[0] + "' expects " + std::to_string(n - 1) + " argument(s)");
        };
        if (tok[0] == "strategy") {
            want(2);
            s.player = num(tok[1]);
            have_player = true;
        } else if (tok[0] == "memory") {
            want(2);
            s.memory = num(tok[1]);
            if (s.memory < 1) throw ParseError(lineno, "memory must be positive");
            have_mem = true;
        } else if (tok[0] == "initmem") {
            want(2);
            s.m0 = num(tok[1]);
            have_init = true;
        } else if (tok[0] == "update") {
            want(4);
            updates.emplace_back(num(tok[1]), vertex(tok[2]), num(tok[3]), lineno);
        } else if (tok[0] == "move") {
            want(4);
            moves.emplace_back(num(tok[1]), vertex(tok[2]), vertex(tok[3]), lineno);
        } else {
            throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!have_player) throw ParseError(0, "missing strategy line");
    if (!have_mem) s.memory = 1;
    if (!have_init) s.m0 = 0;
    if (s.m0 < 0 || s.m0 >= s.memory) throw ParseError(0, "initmem out of range");
    s.update.assign(s.memory, std::vector<int>(g.size()));
    s.move.assign(s.memory, std::vector<int>(g.size(), -1));
    for (int m = 0; m < s.memory; ++m)
        for (int v = 0; v < g.size(); ++v) s.update[m][v] = m;
    for (auto [m, v, x, line] : updates) {
        if (m < 0 || m >= s.memory || x < 0 || x >= s.memory) throw ParseError(line, "memory id out of range");
        s.update[m][v] = x;
    }
    for (auto [m, v, x, line] : moves) {
        if (m < 0 || m >= s.memory) throw ParseError(line, "memory id out of range");
        if (g.owner(v) != s.player) throw ParseError(line, "move at " + g.name(v) + " which player " + std::to_string(s.player) + " does not own");
        if (!g.edge_between(v, x)) throw ParseError(line, "move " + g.name(v) + " -> " + g.name(x) + " is not an edge");
        s.move[m][v] = x;
    }
    check_strategy(g, s);
    return s;
}

MooreStrategy load_strategy(const Game& g, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_strategy(g, ss.str());
}

std::string serialize_strategy(const Game& g, const MooreStrategy& s) {
    std::ostringstream o;
    o << "strategy " << s.player << "\n";
    o << "memory " << s.memory << "\n";
    o << "initmem " << s.m0 << "\n";
    for (int m = 0; m < s.memory; ++m)
        for (int v = 0; v < g.size(); ++v)
            if (s.update[m][v] != m) o << "update " << m << " " << g.name(v) << " " << s.update[m][v] << "\n";
    for (int m = 0; m < s.memory; ++m)
        for (int v = 0; v < g.size(); ++v)
            if (g.owner(v) == s.player) o << "move " << m << " " << g.name(v) << " " << g.name(s.move[m][v]) << "\n";
    return o.str();
}

MooreStrategy trim_strategy(const Game& g, const MooreStrategy& s) {
    std::map<int, int> id;
    std::vector<int> order;
    std::set<std::pair<int, int>> seen;
    std::queue<std::pair<int, int>> q;
    q.push({g.init(), s.m0});
    seen.insert({g.init(), s.m0});
    while (!q.empty()) {
        auto [v, m] = q.front();
        q.pop();
        if (!id.count(m)) {
            id[m] = static_cast<int>(order.size());
            order.push_back(m);
        }
        std::vector<int> next = g.owner(v) == s.player ? std::vector<int>{s.move[m][v]} : g.successors(v);
        for (int w : next) {
            std::pair<int, int> st{w, s.update[m][w]};
            if (seen.insert(st).second) q.push(st);
        }
    }
    MooreStrategy t;
    t.player = s.player;
    t.memory = static_cast<int>(order.size());
    t.m0 = 0;
    t.update.assign(t.memory, std::vector<int>(g.size()));
    t.move.assign(t.memory, std::vector<int>(g.size(), -1));
    for (int k = 0; k < t.memory; ++k) {
        int m = order[k];
        for (int v = 0; v < g.size(); ++v) {
            auto it = id.find(s.update[m][v]);
            t.update[k][v] = it == id.end() ? k : it->second;
            t.move[k][v] = s.move[m][v];
        }
    }
    return t;
}

} // namespace qadm
