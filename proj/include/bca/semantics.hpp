#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bca/machine.hpp"

namespace bca {

/// The ultimately periodic word u . v^omega.
struct LassoWord {
    std::vector<SymbolId> u;
    std::vector<SymbolId> v;  // non-empty
};

/// A finite run: configs[0] is the seed, configs[i+1] results from applying
/// machine.transitions[transitions[i]] to configs[i].
struct RunPrefix {
    std::vector<Configuration> configs;
    std::vector<int> transitions;  // indices into machine.transitions

    size_t length() const { return transitions.size(); }
};

/// Applies transition `t` to `c`; nullopt when a counter would go negative.
/// Copies are simultaneous and read pre-transition values; deltas follow.
std::optional<Configuration> apply_transition(const CounterMachine& machine,
                                              const Transition& t,
                                              const Configuration& c);

/// Transitions of `machine` enabled at `config` on `letter`, in declaration
/// order, paired with the successor configurations.
std::vector<std::pair<int, Configuration>> successors(const CounterMachine& machine,
                                                      const Configuration& config,
                                                      SymbolId letter);

struct RunPrefixSet {
    std::vector<RunPrefix> prefixes;
    bool cap_pruned = false;  // some branch exceeded the per-counter cap
};

/// All runs of `machine` on `word` starting from `seed`. Branches whose
/// counters exceed `cap` (when given) are pruned and flagged. Exceeding
/// `node_budget` raises BudgetExceededError.
RunPrefixSet run_prefixes(const CounterMachine& machine,
                          const std::vector<SymbolId>& word,
                          const Configuration& seed,
                          std::optional<Counter> cap = std::nullopt,
                          std::uint64_t node_budget = 10'000'000);

/// True iff `run` is a valid run of `machine` (step-by-step consistent).
bool check_run(const CounterMachine& machine, const RunPrefix& run);

enum class RunVerdict { Accept, Reject, Unknown };

struct DetRunResult {
    RunVerdict verdict = RunVerdict::Unknown;
    RunPrefix trace;                    // prefix actually simulated
    std::vector<StateId> infinity_set;  // states of the detected cycle, sorted
    std::string diagnostic;
};

/// Runs a deterministic machine on u.v^omega for up to `step_budget` letters.
/// Decides only when a configuration repeats at the same position of v with
/// identical counters; blocking yields Reject with a diagnostic.
DetRunResult run_deterministic(const CounterMachine& machine,
                               const LassoWord& lasso,
                               std::uint64_t step_budget);

enum class MembershipVerdict { Member, NonMemberUpToBound, NonMemberCertified };

struct MembershipResult {
    MembershipVerdict verdict = MembershipVerdict::NonMemberUpToBound;
    int bound = 0;
    // Witness for Member: an accepting lasso pattern of `machine` (transition
    // indices plus looping point), replayable over a prefix of u.v^omega.
    std::vector<int> witness_transitions;
    int witness_loop = 0;
};

/// Ultimately periodic membership via the synchronous product of `machine`
/// with the |u|+|v| position structure of u.v^omega, searched for an
/// accepting lasso pattern up to `bound`.
MembershipResult membership_upw(const CounterMachine& machine,
                                const LassoWord& lasso,
                                int bound,
                                std::uint64_t node_budget = 10'000'000);

/// Builds the product automaton used by membership_upw. Exposed for tests;
/// transition i of the product applies machine transition `origin[i]`.
struct UpwProduct {
    CounterMachine machine;
    std::vector<int> origin;
};
UpwProduct upw_product(const CounterMachine& machine, const LassoWord& lasso);

}  // namespace bca
