#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qadm/game.hpp"

namespace qadm {

// Brute force over memoryless profiles and simple lassos; intended for small games.
constexpr int kOracleBound = 8;

std::vector<Rational> brute_zero_sum(const Game& g, int player, int bound = kOracleBound);
std::vector<Rational> brute_cooperative(const Game& g, int player, int bound = kOracleBound);
Rational brute_acval(const Game& g, int player, int vertex, int bound = kOracleBound);

// Values after a history that reached `vertex` with `record` as the player's
// recorded extremum so far (Inf/Sup only; ignored for the other measures).
struct BruteEntry {
    Rational aval, cval, acval;
};
BruteEntry brute_entry(const Game& g, int player, int vertex, const std::optional<Rational>& record,
                       int bound = kOracleBound);

// brute_zero_sum and brute_cooperative together, reusable across brute_entry calls
struct BruteFresh {
    std::vector<Rational> aval, cval;
};
BruteFresh brute_fresh(const Game& g, int player, int bound = kOracleBound);
BruteEntry brute_entry(const Game& g, int player, const BruteFresh& fresh, int vertex,
                       const std::optional<Rational>& record);

// payoff of the play generated by a memoryless profile from v (choice[u] = successor of u)
Rational profile_payoff(const Game& g, int player, const std::vector<int>& choice, int v);

struct RandomGameOptions {
    int size = 4;
    int wmin = -2;
    int wmax = 2;
    int players = 2;
    Measure measure = Measure::LimInf;
    int max_out = 3;
};

Game random_game(std::uint64_t seed, const RandomGameOptions& o = {});

// random walk from init that stops once it closes a cycle after at least min_len steps
Lasso random_lasso(const Game& g, std::uint64_t seed, int min_len = 4);

} // namespace qadm
