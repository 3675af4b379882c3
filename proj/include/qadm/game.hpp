#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qadm/error.hpp"
#include "qadm/rational.hpp"

namespace qadm {

enum class Measure { Inf, Sup, LimInf, LimSup, MeanPayoffInf, MeanPayoffSup };

std::string_view measure_name(Measure m);
std::optional<Measure> measure_from_name(std::string_view s);
bool is_mean_payoff(Measure m);
bool is_regular(Measure m);

// Raw, possibly invalid, description of a game as read from a file.
struct GameSpec {
    struct Vertex {
        std::string id;
        int owner = 0;
        int line = 0;
    };
    struct Edge {
        std::string src, dst;
        std::vector<Rational> w;
        int line = 0;
    };
    int players = 0;
    std::optional<Measure> measure;
    std::optional<std::string> init;
    int init_line = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};

struct Diagnostic {
    int line = 0;
    std::string message;
};

std::vector<Diagnostic> validate(const GameSpec& spec);

struct Edge {
    int src = 0;
    int dst = 0;
    std::vector<Rational> w;  // w[p-1] is the weight of player p
};

// Validated game. Vertices are indexed in ascending id order, edges in
// ascending (src, dst) order; players are numbered from 1.
class Game {
public:
    explicit Game(const GameSpec& spec);

    int players() const { return players_; }
    Measure measure() const { return measure_; }
    int size() const { return static_cast<int>(names_.size()); }
    int init() const { return init_; }

    const std::string& name(int v) const { return names_[v]; }
    int owner(int v) const { return owners_[v]; }
    std::optional<int> find(std::string_view id) const;
    int index_of(std::string_view id) const;  // throws Error

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }
    const Rational& weight(int e, int player) const { return edges_[e].w[player - 1]; }
    // edge indices leaving v, sorted by destination
    std::span<const int> out(int v) const;
    std::optional<int> edge_between(int u, int v) const;
    std::vector<int> successors(int v) const;

    GameSpec spec() const;
    Game with_init(int v) const;
    Game with_measure(Measure m) const;

private:
    int players_ = 0;
    Measure measure_ = Measure::LimInf;
    int init_ = 0;
    std::vector<std::string> names_;
    std::vector<int> owners_;
    std::vector<Edge> edges_;
    std::vector<int> out_begin_;
    std::vector<int> out_list_;
    std::unordered_map<std::string, int> index_;
};

bool operator==(const Game& a, const Game& b);

GameSpec parse_game_spec(std::string_view text);
Game parse_game(std::string_view text);
Game load_game(const std::string& path);
std::string serialize_game(const Game& g);

bool valid_vertex_id(std::string_view id);

// prefix · cycle^ω ; vertex indices
struct Lasso {
    std::vector<int> prefix;
    std::vector<int> cycle;
    bool operator==(const Lasso&) const = default;
};

using History = std::vector<int>;

void check_lasso(const Game& g, const Lasso& l);
void check_history(const Game& g, const History& h);
// weights of player along the prefix edges and along the cycle edges
std::pair<std::vector<Rational>, std::vector<Rational>> lasso_weights(const Game& g, int player, const Lasso& l);
Rational payoff_of_lasso(Measure m, const Game& g, int player, const Lasso& l);
std::string lasso_str(const Game& g, const Lasso& l);
std::string history_str(const Game& g, const History& h);
Lasso parse_lasso(const Game& g, std::string_view text);  // "a b [c d]"

} // namespace qadm
