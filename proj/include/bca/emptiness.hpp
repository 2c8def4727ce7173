#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bca/clubs.hpp"
#include "bca/machine.hpp"

namespace bca {

/// A candidate non-emptiness witness: transitions delta_0..delta_l with a
/// looping point l' (the cycle is delta_{l'}..delta_l).
struct LassoPattern {
    std::vector<int> transitions;  // indices into machine.transitions
    int looping_point = 0;
};

struct LassoCheck {
    bool ok = false;
    int violated_condition = 0;  // 1..6 per the defining conditions, 7 for the
                                 // zero-guard soundness extension, 0 when ok
    std::string detail;
};

/// Validates the six defining conditions of a lasso pattern:
///  1. starts at the initial state, enabled on all-zero counters;
///  2. states chain;
///  3. the last transition returns to the looping point's state;
///  4. every prefix delta sum is coordinate-wise non-negative;
///  5. the cycle delta sum is coordinate-wise non-negative;
///  6. positive guards are backed by strictly positive prefix sums.
/// Zero guards (testable counters only) additionally require an exactly-zero
/// prefix sum, and a zero cycle sum on that counter when inside the cycle.
LassoCheck check_lasso_pattern(const CounterMachine& machine, const LassoPattern& pattern);

/// True iff an accepting state occurs in the cycle segment [l', l].
bool is_accepting_pattern(const CounterMachine& machine, const LassoPattern& pattern);

enum class EmptinessVerdict { NonEmpty, EmptyUpTo, EmptyCertified };

struct EmptinessResult {
    EmptinessVerdict verdict = EmptinessVerdict::EmptyUpTo;
    int bound = 0;
    std::vector<int> witness_transitions;
    int witness_loop = 0;

    LassoPattern witness() const { return LassoPattern{witness_transitions, witness_loop}; }
};

/// Iterative-deepening search for an accepting lasso pattern with length
/// (index of the last transition) at most `length_bound`; transitions are
/// explored in declaration order and the first witness is returned.
/// EmptyCertified when no accepting state lies on a reachable cycle of the
/// plain state graph, or when the whole search tree dies below the bound.
/// `seed`, when given, replaces the initial all-zero configuration.
EmptinessResult find_accepting_lasso(const CounterMachine& machine, int length_bound,
                                     std::uint64_t node_budget = 10'000'000,
                                     const std::optional<Configuration>& seed = std::nullopt);

/// The club non-emptiness test automaton ([q,gamma] . A): a chain adding the
/// minimal configuration by {0,1} vectors, a pump loop on the (>= N)
/// coordinates (omitted for dimension 0), and a bridge into state q of a full
/// copy of `machine`. All added letters are the first alphabet symbol.
struct ClubTestAutomaton {
    CounterMachine machine;
    int chain_length = 0;       // Z
    int pump_transition = -1;   // index of the pump self-loop, -1 when absent
    StateId bridge_target = 0;  // the copy of q
};
ClubTestAutomaton club_test_automaton(const CounterMachine& machine, const Club& club);

struct ClubEmptinessResult {
    EmptinessResult emptiness;
    Counter M = 0;  // N + pump steps of the witness, or N + bound when empty
};

/// Emptiness of L(machine, club) via the club test automaton, together with
/// the restriction threshold M.
ClubEmptinessResult club_empty(const CounterMachine& machine, const Club& club,
                               int length_bound, std::uint64_t node_budget = 10'000'000);

/// Replays `pattern` from the initial (or seeded) configuration, cycling the
/// loop `loops` times; returns false if any counter would go negative or a
/// guard fails. Used by tests as the replay-soundness check.
bool replay_pattern(const CounterMachine& machine, const LassoPattern& pattern, int loops,
                    const std::optional<Configuration>& seed = std::nullopt);

struct OracleVerdict {
    bool non_empty = false;   // false reads "no accepting cycle within caps"
    std::vector<int> spoke;   // transition indices of a witness, when found
    std::vector<int> cycle;
};

/// Brute-force cross-check: accepting-cycle detection on the explicit
/// configuration graph with counters saturated at `counter_cap` and the
/// exploration limited to `depth_cap` steps. Exact for blind machines.
OracleVerdict oracle_bfs_empty(const CounterMachine& machine, Counter counter_cap,
                               std::uint64_t depth_cap,
                               const std::optional<Configuration>& seed = std::nullopt);

}  // namespace bca
