#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qadm/admissibility.hpp"
#include "qadm/automaton.hpp"
#include "qadm/values.hpp"

namespace qadm {

struct EdgeLabel {
    bool owned = false;  // source belongs to the player
    Rational aval, acval;
    std::optional<Rational> altmax;  // best cval among the other successors of a non-owned source
};

// Value-derived labels on the edges of the transformed arena.
struct LabeledGame {
    ValueTable table;
    std::vector<std::vector<EdgeLabel>> label;  // [player-1][edge of table.arena()]

    const Game& arena() const { return table.arena(); }
    const EdgeLabel& at(int player, int e) const { return label.at(player - 1).at(e); }
    bool aval_q(int player, int e, const Rational& q) const { return at(player, e).aval == q; }
    bool acval_q(int player, int e, const Rational& q) const { return at(player, e).acval == q; }
    bool galt_q(int player, int e, const Rational& q) const {
        auto& a = at(player, e).altmax;
        return a && *a > q;
    }
    // e.g. "V1 aVal1_5 acVal1_10 gAlt1_3" (gAlt listed for every q in aValues it holds for)
    std::string propositions(int player, int e) const;
};

LabeledGame label_edges(const ValueTable& t);
LabeledGame label_edges(const Game& g);

// l is a lasso of the original game starting at its initial vertex
bool eval_phi_adm_on_lasso(const LabeledGame& lg, int player, const Lasso& l);

// Throws UnsupportedMeasure for mean-payoff.
EdgeAutomaton build_phi_adm_automaton(const LabeledGame& lg, int player);

// formula text over the labels (available for every measure)
std::string phi_adm_formula(const LabeledGame& lg, int player);

// Strategy compatible with l that follows it and, after a deviation by the
// others, switches to cooperative or worst-case play.
MooreStrategy strategy_from_outcome(const LabeledGame& lg, int player, const Lasso& l);

} // namespace qadm
