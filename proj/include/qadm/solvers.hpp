#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qadm/game.hpp"
#include "qadm/transform.hpp"

namespace qadm {

// Two-player view of a game for one distinguished player: max owns that
// player's vertices, min is the merged coalition of everybody else.
struct Arena {
    struct Move {
        int to;
        Rational w;
    };
    std::vector<std::vector<Move>> succ;
    std::vector<char> max_owned;
    int size() const { return static_cast<int>(succ.size()); }
};

Arena coalition_arena(const Game& g, int player);
// induced sub-arena on keep; old_of_new receives the index map
Arena sub_arena(const Arena& a, const std::vector<char>& keep, std::vector<int>* old_of_new);

enum Side { kMax = 0, kMin = 1 };

struct Region {
    std::vector<char> win;
    std::vector<int> strategy;  // successor for the solving side's vertices in win, else -1
};

using EdgePred = std::function<bool(int v, int k)>;  // k-th move of v

Region attractor(const Arena& a, int side, const std::vector<char>& target, const EdgePred& target_edge = {});

Region solve_threshold(const Arena& a, Measure m, const Rational& theta);

struct ZeroSum {
    std::vector<Rational> value;
    std::vector<int> strategy;  // uniform worst-case optimal successor at max vertices
};

ZeroSum zero_sum_value(const Arena& a, Measure m);

std::vector<Rational> one_player_max_value(const Arena& a, Measure m);
std::vector<Rational> one_player_min_value(const Arena& a, Measure m);
std::vector<Rational> one_player_max_value(const Game& g, int player);

// Lasso (arena indices) from v whose payoff is one_player_max_value(v).
// Among optimal lassos: shortest prefix, then least target in index order,
// then shortest cycle.
Lasso cooperative_lasso(const Arena& a, Measure m, int v);

struct ParityGame {
    std::vector<std::vector<int>> succ;
    std::vector<int> owner;     // 0 or 1
    std::vector<int> priority;  // max priority seen infinitely often even: player 0 wins
    int size() const { return static_cast<int>(succ.size()); }
};

std::pair<Region, Region> solve_parity(const ParityGame& pg);

// (adversary-minimised, adversary-maximised) payoff of player from every product state
std::vector<std::pair<Rational, Rational>> fixed_strategy_extremes(const ProductGame& p, int player);

// strongly connected component id per vertex of the induced subgraph (-1 outside keep);
// ids are in reverse topological order (sinks first)
std::vector<int> scc_ids(const std::vector<std::vector<int>>& succ, const std::vector<char>& keep, int* count);

} // namespace qadm
