#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qadm/game.hpp"
#include "qadm/strategy.hpp"

namespace qadm {

struct TransformedGame {
    Game source;
    Game game;
    bool identity = true;
    std::vector<int> orig;  // transformed vertex -> original vertex
    // transformed vertex -> per-player recorded extremum (empty vectors for the identity)
    std::vector<std::vector<std::optional<Rational>>> record;

    // successor of tv whose original vertex is v, or -1
    int step(int tv, int v) const;
};

// Inf/Sup: record per player the extremum seen so far; other measures: identity.
// States reachable from each root (original vertices) are built; by default the root is init.
TransformedGame make_prefix_independent(const Game& g);
TransformedGame make_prefix_independent(const Game& g, const std::vector<int>& roots);

int lift_history(const TransformedGame& tg, const History& h);
// image of an original lasso, re-periodised so that it is a lasso of tg.game
Lasso lift_lasso(const TransformedGame& tg, const Lasso& l);

struct ProductGame {
    Game arena;
    int player = 1;
    std::vector<std::pair<int, int>> state;  // product vertex -> (base vertex, memory)
    std::map<std::pair<int, int>, int> index;
    int find(int base, int mem) const;       // -1 when unreachable
};

ProductGame product_with_strategy(const Game& g, const MooreStrategy& s);
// strategy observes and moves on original vertices; the base arena is tg.game
ProductGame product_with_strategy(const TransformedGame& tg, const MooreStrategy& s);

} // namespace qadm
