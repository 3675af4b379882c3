#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qadm/game.hpp"

namespace qadm {

// Deterministic parity automaton reading edges (src, dst) of a game, given by
// original vertex indices. Priorities sit on states; a run is accepting when
// the largest priority entered infinitely often is even. A missing transition
// rejects.
struct EdgeAutomaton {
    std::vector<std::string> names;
    std::vector<int> priority;
    std::vector<std::map<std::pair<int, int>, int>> delta;
    int initial = 0;

    int size() const { return static_cast<int>(names.size()); }
    int add_state(std::string name, int prio);
    void add_transition(int from, int src, int dst, int to);
    std::optional<int> next(int q, int src, int dst) const;
};

EdgeAutomaton parse_automaton(const Game& g, std::string_view text);
EdgeAutomaton load_automaton(const Game& g, const std::string& path);
std::string serialize_automaton(const Game& g, const EdgeAutomaton& a);
std::string automaton_dot(const Game& g, const EdgeAutomaton& a);

// lasso over original vertices; the word is the sequence of its edges
bool accepts(const EdgeAutomaton& a, const Lasso& l);

// missing transitions on edges of g lead to an added rejecting sink
EdgeAutomaton complete(const Game& g, const EdgeAutomaton& a);
EdgeAutomaton complement(const Game& g, const EdgeAutomaton& a);

} // namespace qadm
