#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bca/oracles.hpp"

namespace bca {

/// Deterministic automaton over transition graphs recognizing the theta-words
/// that contain a path through clubs hitting accepting clubs infinitely often.
///
/// Built by Safra determinization of the (club_count + 1)-state path-tracker
/// NBA; acceptance is the Rabin condition over Safra node names, evaluated as
/// a Muller predicate on infinity sets. States are created on demand and
/// memoized, so the (exponential) theta alphabet is never enumerated.
class PathMullerAutomaton {
public:
    PathMullerAutomaton(int club_count, std::vector<bool> accepting_clubs);

    int initial_state() const { return 0; }
    int step(int dstate, const ThetaGraph& theta);

    /// Muller predicate: does a run with exactly this infinity set accept?
    bool muller_accepts(const std::vector<int>& infinity_set) const;

    /// Runs the automaton on spoke . period^omega and decides acceptance
    /// (always terminates: the state space is finite).
    bool accepts_lasso(const std::vector<ThetaGraph>& spoke,
                       const std::vector<ThetaGraph>& period);

    int state_count() const { return static_cast<int>(states_.size()); }
    int club_count() const { return clubs_; }
    const std::vector<bool>& accepting_clubs() const { return accepting_; }

private:
    struct Node {
        int name = 0;
        std::uint64_t label = 0;
        bool marked = false;
        std::vector<int> children;  // indices into the tree's pool, oldest first
    };
    struct Tree {
        std::vector<Node> nodes;  // node 0 is the root when non-empty
        std::string key() const;
    };

    Tree apply(const Tree& tree, const ThetaGraph& theta) const;
    int intern(const Tree& tree);

    int clubs_;
    std::vector<bool> accepting_;
    std::uint64_t nba_accepting_mask_ = 0;
    int nba_states_;  // clubs + the fresh initial state

    std::vector<Tree> states_;
    std::vector<std::set<int>> names_present_;
    std::vector<std::set<int>> names_marked_;
    std::map<std::string, int> index_;
    std::map<std::pair<int, ThetaGraph>, int> step_cache_;
};

/// Convenience constructor from a club family.
PathMullerAutomaton build_path_muller(int club_count, std::vector<bool> accepting_clubs);

}  // namespace bca
