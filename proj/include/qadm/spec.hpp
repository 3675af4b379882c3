#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qadm/automaton.hpp"
#include "qadm/game.hpp"

namespace qadm {

enum class CmpOp { Lt, Le, Gt, Ge, Eq };

std::string_view cmp_name(CmpOp op);

struct SpecNode {
    enum Kind { True, False, Atom, Automaton, Not, And, Or };
    Kind kind = True;
    int player = 0;  // Atom
    CmpOp op = CmpOp::Ge;
    Rational q;
    int automaton = -1;  // Automaton: index into PayoffSpec::automata
    std::vector<SpecNode> kids;
};

// Boolean combination of payoff(i) <op> q atoms and edge automata.
struct PayoffSpec {
    SpecNode root;
    std::vector<EdgeAutomaton> automata;
    std::vector<std::string> paths;
};

// automaton paths are resolved against base_dir
PayoffSpec parse_payoff_spec(const Game& g, std::string_view text, const std::string& base_dir = ".");
PayoffSpec load_payoff_spec(const Game& g, const std::string& path);
std::string spec_str(const PayoffSpec& s);

bool eval_spec_on_lasso(const Game& g, const PayoffSpec& s, const Lasso& l);

// payoff(player) >= q, or > q when strict; complete over the edges of g.
// Throws UnsupportedMeasure for mean-payoff.
EdgeAutomaton payoff_atom_automaton(const Game& g, int player, const Rational& q, bool strict);

} // namespace qadm
