#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qadm/game.hpp"

namespace qadm {

// Finite-memory strategy. update[m][v] is the memory after entering v;
// move[m][v] is the chosen successor of v (or -1 when v is not owned by
// player). The initial memory applies at the initial vertex without an update.
struct MooreStrategy {
    int player = 1;
    int memory = 1;
    int m0 = 0;
    std::vector<std::vector<int>> update;
    std::vector<std::vector<int>> move;
};

// throws Error naming the first problem
void check_strategy(const Game& g, const MooreStrategy& s);

MooreStrategy memoryless_strategy(const Game& g, int player, const std::vector<int>& choice);
// choice given as (vertex id, successor id) pairs; unspecified vertices take their first successor
MooreStrategy memoryless_strategy(const Game& g, int player,
                                  const std::vector<std::pair<std::string, std::string>>& choice);

MooreStrategy parse_strategy(const Game& g, std::string_view text);
MooreStrategy load_strategy(const Game& g, const std::string& path);
std::string serialize_strategy(const Game& g, const MooreStrategy& s);

// Drop memory states unreachable from m0 in the product with g.
MooreStrategy trim_strategy(const Game& g, const MooreStrategy& s);

} // namespace qadm
