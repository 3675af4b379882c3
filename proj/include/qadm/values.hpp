#pragma once

#include <vector>

#include "qadm/game.hpp"
#include "qadm/solvers.hpp"
#include "qadm/transform.hpp"

namespace qadm {

struct PlayerValues {
    std::vector<Rational> aval, cval, acval;  // indexed by transformed vertex
    std::vector<Rational> avalues;            // distinct aval entries, ascending
    std::vector<int> worst_case;              // uniform worst-case optimal successor at the player's vertices
};

// Tables over the transformed arena. Every original vertex v has a root state
// (empty records) so values "as if the game started at v" are available.
struct ValueTable {
    TransformedGame tg;
    std::vector<int> root;             // original vertex -> transformed root state
    std::vector<PlayerValues> player;  // player p at index p-1

    const PlayerValues& of(int p) const { return player.at(p - 1); }
    const Game& arena() const { return tg.game; }
};

ValueTable compute_value_table(const Game& g);

struct HistoryValues {
    int tv = 0;
    Rational aval, cval, acval;
};

HistoryValues value_at_history(const ValueTable& t, const History& h, int player);
HistoryValues value_at_history(const Game& g, const History& h, int player);

// vertices of the arena whose aval is at least q
std::vector<char> aval_at_least(const PlayerValues& pv, const Rational& q);

} // namespace qadm
