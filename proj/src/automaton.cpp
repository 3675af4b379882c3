#include "qadm/automaton.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace qadm {

int EdgeAutomaton::add_state(std::string name, int prio) {
    names.push_back(std::move(name));
    priority.push_back(prio);
    delta.emplace_back();
    return size() - 1;
}

void EdgeAutomaton::add_transition(int from, int src, int dst, int to) { delta[from][{src, dst}] = to; }

std::optional<int> EdgeAutomaton::next(int q, int src, int dst) const {
    auto it = delta[q].find({src, dst});
    if (it == delta[q].end()) return std::nullopt;
    return it->second;
}

EdgeAutomaton parse_automaton(const Game& g, std::string_view text) {
    EdgeAutomaton a;
    std::unordered_map<std::string, int> ids;
    struct Pending {
        int line;
        std::vector<std::string> words;
    };
    std::vector<Pending> later;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::vector<std::string> w;
        for (std::string x; ls >> x;) w.push_back(x);
        if (w.empty()) continue;
        if (w[0] == "state") {
            if (w.size() != 2) throw ParseError(line, "expected: state <name>");
            if (!ids.emplace(w[1], a.size()).second) throw ParseError(line, "duplicate state " + w[1]);
            a.add_state(w[1], 0);
        } else if (w[0] == "initial" || w[0] == "priority" || w[0] == "trans") {
            later.push_back({line, w});
        } else {
            throw ParseError(line, "unknown directive " + w[0]);
        }
    }
    auto state = [&](int ln, const std::string& s) {
        auto it = ids.find(s);
        if (it == ids.end()) throw ParseError(ln, "unknown state " + s);
        return it->second;
    };
    auto vertex = [&](int ln, const std::string& s) {
        auto v = g.find(s);
        if (!v) throw ParseError(ln, "unknown vertex " + s);
        return *v;
    };
    bool have_initial = false;
    for (auto& [ln, w] : later) {
        if (w[0] == "initial") {
            if (w.size() != 2) throw ParseError(ln, "expected: initial <state>");
            if (have_initial) throw ParseError(ln, "duplicate initial");
            a.initial = state(ln, w[1]);
            have_initial = true;
        } else if (w[0] == "priority") {
            if (w.size() != 3) throw ParseError(ln, "expected: priority <state> <n>");
            int p = 0;
            try {
                std::size_t used = 0;
                p = std::stoi(w[2], &used);
                if (used != w[2].size() || p < 0) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(ln, "bad priority " + w[2]);
            }
            a.priority[state(ln, w[1])] = p;
        } else {
            if (w.size() != 5) throw ParseError(ln, "expected: trans <state> <src> <dst> <state>");
            int from = state(ln, w[1]), to = state(ln, w[4]);
            int s = vertex(ln, w[2]), d = vertex(ln, w[3]);
            if (!g.edge_between(s, d)) throw ParseError(ln, "no edge " + w[2] + " -> " + w[3]);
            auto old = a.next(from, s, d);
            if (old && *old != to) throw ParseError(ln, "nondeterministic transition from " + w[1]);
            a.add_transition(from, s, d, to);
        }
    }
    if (a.size() == 0) throw ParseError(0, "automaton without states");
    if (!have_initial) throw ParseError(0, "missing initial");
    return a;
}

EdgeAutomaton load_automaton(const Game& g, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_automaton(g, ss.str());
}

std::string serialize_automaton(const Game& g, const EdgeAutomaton& a) {
    std::ostringstream o;
    for (int q = 0; q < a.size(); ++q) o << "state " << a.names[q] << "\n";
    o << "initial " << a.names[a.initial] << "\n";
    for (int q = 0; q < a.size(); ++q) o << "priority " << a.names[q] << " " << a.priority[q] << "\n";
    for (int q = 0; q < a.size(); ++q)
        for (auto& [e, t] : a.delta[q])
            o << "trans " << a.names[q] << " " << g.name(e.first) << " " << g.name(e.second) << " " << a.names[t]
              << "\n";
    return o.str();
}

std::string automaton_dot(const Game& g, const EdgeAutomaton& a) {
    std::ostringstream o;
    o << "digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n";
    for (int q = 0; q < a.size(); ++q)
        o << "  q" << q << " [label=\"" << a.names[q] << "\\np" << a.priority[q] << "\""
          << (a.priority[q] % 2 == 0 ? ", shape=doublecircle" : ", shape=circle") << "];\n";
    o << "  start -> q" << a.initial << ";\n";
    for (int q = 0; q < a.size(); ++q)
        for (auto& [e, t] : a.delta[q])
            o << "  q" << q << " -> q" << t << " [label=\"" << g.name(e.first) << "->" << g.name(e.second)
              << "\"];\n";
    o << "}\n";
    return o.str();
}

bool accepts(const EdgeAutomaton& a, const Lasso& l) {
    std::vector<int> seq = l.prefix;
    seq.insert(seq.end(), l.cycle.begin(), l.cycle.end());
    const std::size_t n = seq.size();
    auto succ = [&](std::size_t k) { return k + 1 < n ? seq[k + 1] : l.cycle.front(); };
    int q = a.initial;
    for (std::size_t k = 0; k < l.prefix.size(); ++k) {
        auto nq = a.next(q, seq[k], succ(k));
        if (!nq) return false;
        q = *nq;
    }
    std::map<int, int> seen;  // state at the cycle head -> iteration
    std::vector<int> best;    // max priority entered per iteration
    while (!seen.count(q)) {
        seen[q] = static_cast<int>(best.size());
        int top = -1;
        for (std::size_t k = l.prefix.size(); k < n; ++k) {
            auto nq = a.next(q, seq[k], succ(k));
            if (!nq) return false;
            q = *nq;
            top = std::max(top, a.priority[q]);
        }
        best.push_back(top);
    }
    int top = -1;
    for (std::size_t i = seen[q]; i < best.size(); ++i) top = std::max(top, best[i]);
    return top % 2 == 0;
}

EdgeAutomaton complete(const Game& g, const EdgeAutomaton& a) {
    EdgeAutomaton r = a;
    int maxp = 0;
    for (int p : a.priority) maxp = std::max(maxp, p);
    int sink = -1;
    std::set<std::pair<int, int>> edges;
    for (auto& e : g.edges()) edges.insert({e.src, e.dst});
    for (int q = 0; q < a.size(); ++q)
        for (auto e : edges)
            if (!a.next(q, e.first, e.second)) {
                if (sink < 0) {
                    std::string name = "sink";
                    while (std::find(r.names.begin(), r.names.end(), name) != r.names.end()) name += "_";
                    sink = r.add_state(name, maxp % 2 == 1 ? maxp : maxp + 1);
                    for (auto f : edges) r.add_transition(sink, f.first, f.second, sink);
                }
                r.add_transition(q, e.first, e.second, sink);
            }
    return r;
}

EdgeAutomaton complement(const Game& g, const EdgeAutomaton& a) {
    EdgeAutomaton r = complete(g, a);
    for (int& p : r.priority) ++p;
    return r;
}

} // namespace qadm
