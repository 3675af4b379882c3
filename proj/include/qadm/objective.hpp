#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qadm/outcomes.hpp"
#include "qadm/spec.hpp"

namespace qadm {

// Boolean combination of the acceptance of component automata.
struct Formula {
    enum Kind { True, False, Comp, Not, And, Or };
    Kind kind = True;
    int comp = -1;
    std::vector<Formula> kids;

    bool eval(const std::vector<char>& accepted) const;
    static Formula component(int c);
    static Formula negate(Formula f);
    static Formula both(Formula a, Formula b);
    static Formula either(Formula a, Formula b);
};

struct Objective {
    std::vector<EdgeAutomaton> comps;  // complete over the edges they can read
    Formula formula;

    int add(EdgeAutomaton a);
    // appends the components of a specification and returns its formula
    Formula add_spec(const Game& g, const PayoffSpec& s);
};

// Zielonka tree of a Muller condition over colours 0..n-1, used as a
// deterministic parity automaton: a state is a leaf.
class ZielonkaTree {
public:
    ZielonkaTree(int colours, const std::function<bool(std::uint32_t)>& accepting);
    int initial() const { return leftmost(0); }
    // reads a set of colours; returns (new leaf, emitted priority)
    std::pair<int, int> step(int leaf, const std::vector<int>& colours) const;
    int leaves() const;

private:
    struct Node {
        std::uint32_t label;
        bool accepting;
        int parent, depth;
        std::vector<int> kids;
    };
    int leftmost(int n) const;
    int priority(int n) const;
    std::vector<Node> nodes_;
    int offset_ = 0, depth_ = 0;
};

// A finite graph whose vertices project to vertices of the game.
struct BaseGraph {
    std::vector<std::vector<int>> succ;
    std::vector<int> orig;
    int init = 0;
};

BaseGraph base_of(const Game& g);
BaseGraph base_of(const ProductGame& p);

// ultimately periodic path of the base whose projection satisfies the objective
std::optional<Lasso> find_accepting_lasso(const BaseGraph& base, const Objective& obj);

struct McVerdict {
    bool holds = true;
    std::optional<Lasso> counterexample;
};

// Do all outcomes compatible with admissible strategies of every player satisfy spec?
McVerdict model_check_admissible(const Game& g, const PayoffSpec& spec);
McVerdict model_check_admissible(const LabeledGame& lg, const PayoffSpec& spec);

struct SynthResult {
    bool realizable = false;
    bool admissible = false;  // the returned strategy passed the admissibility check
    std::string source;       // which construction produced it
    std::optional<MooreStrategy> strategy;
};

// Strategy of player that is admissible and wins spec against admissible opponents.
SynthResult synthesize_assume_admissible(const Game& g, int player, const PayoffSpec& spec);
SynthResult synthesize_assume_admissible(const LabeledGame& lg, int player, const PayoffSpec& spec);

// every outcome of s satisfies Phi_adm(player) and (Phi_adm(others) -> spec)
bool wins_assume_admissible(const LabeledGame& lg, const MooreStrategy& s, const PayoffSpec& spec);

} // namespace qadm
