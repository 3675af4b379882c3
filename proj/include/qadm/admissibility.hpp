#pragma once

#include <compare>
#include <functional>
#include <map>
#include <string>

#include "qadm/strategy.hpp"
#include "qadm/values.hpp"

namespace qadm {

enum class Violation { Eq3, Eq4 };

std::string_view violation_name(Violation v);  // "eq3" / "eq4"

struct AdmissibilityVerdict {
    bool admissible = true;
    // the rest is filled when !admissible
    Violation violated = Violation::Eq3;
    int vertex = -1;  // original vertex of the violating product state
    int tv = -1;      // transformed vertex
    int memory = -1;
    History witness;  // original vertices from init to the state
    Rational aval, cval, acval;
    Rational sigma_aval, sigma_cval;  // worst and best outcome of the strategy from the state
};

AdmissibilityVerdict check_strategy_admissible(const Game& g, const MooreStrategy& s);
AdmissibilityVerdict check_strategy_admissible(const ValueTable& t, const MooreStrategy& s);

// Controllers are explicit state machines over the transformed arena; they
// are turned into Moore strategies over the original game by exploring the
// states reachable from a start vertex.
struct ControllerState {
    int tv = 0;
    int mode = 0;
    int a = 0;
    int b = 0;
    auto operator<=>(const ControllerState&) const = default;
};

struct Controller {
    std::function<ControllerState(int tv)> start;
    // the arena moved from s.tv to next
    std::function<ControllerState(const ControllerState& s, int next)> step;
    // successor chosen at s.tv (only queried at the player's vertices)
    std::function<int(const ControllerState& s)> move;
};

MooreStrategy realize(const ValueTable& t, int player, const Controller& c, int start_tv);

// Building blocks shared by the constructions: worst-case play, cooperative
// lassos and acVal lassos inside the aval-preserving subgraph.
class Playbook {
public:
    enum Mode { kWorst = 0, kCoop = 1, kAcvA = 2, kAcvB = 3, kAcvC = 4, kWorstC = 5, kUser = 16 };

    Playbook(const ValueTable& t, int player);

    ControllerState sco(int tv) const;
    ControllerState wco(int tv, Mode variant) const;  // variant in kAcvA..kAcvC
    ControllerState worst(int tv) const { return {tv, kWorst, 0, 0}; }
    bool handles(const ControllerState& s) const { return s.mode < kUser; }
    ControllerState step(const ControllerState& s, int next) const;
    int move(const ControllerState& s) const;

    const ValueTable& table() const { return t_; }
    const PlayerValues& values() const { return pv_; }
    int player() const { return player_; }

private:
    struct Path {
        std::vector<int> seq;
        int loop = 0;
        int next(int b) const { return b + 1 < static_cast<int>(seq.size()) ? b + 1 : loop; }
    };
    const Path& coop_path(int tv) const;
    const Path& acv_path(int tv) const;

    const ValueTable& t_;
    int player_;
    const PlayerValues& pv_;
    Arena arena_;
    mutable std::map<int, Path> coop_, acv_;
};

MooreStrategy construct_sco(const Game& g, int player);
MooreStrategy construct_sco(const ValueTable& t, int player);

struct WcoCandidate {
    MooreStrategy strategy;
    bool verified = false;
};

WcoCandidate construct_wco_candidate(const Game& g, int player);
WcoCandidate construct_wco_candidate(const ValueTable& t, int player);
// aval(h,s) = aval(h) and cval(h,s) = acval(h) at every reachable product state
bool verify_wco(const ValueTable& t, const MooreStrategy& s);

// s with its continuation after the rejected witness history replaced by a
// strategy that weakly dominates it there
MooreStrategy dominating_strategy(const ValueTable& t, const MooreStrategy& s, const AdmissibilityVerdict& v);

} // namespace qadm
