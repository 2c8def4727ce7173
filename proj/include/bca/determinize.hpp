#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bca/clubs.hpp"
#include "bca/machine.hpp"
#include "bca/oracles.hpp"
#include "bca/pathmuller.hpp"
#include "bca/semantics.hpp"

namespace bca {

/// Family construction could not certify every club's optimality within the
/// bound; carries the uncertified clubs in the message.
class UncertifiedClubsError : public Error {
public:
    UncertifiedClubsError(const std::string& what, std::vector<Club> clubs)
        : Error(what), clubs_(std::move(clubs)) {}
    const std::vector<Club>& clubs() const { return clubs_; }

private:
    std::vector<Club> clubs_;
};

/// Explicit tracking state of the determinised machine: which clubs are
/// inhabited and the per-club counter banks storing max(tau_j - N, 0).
struct DetState {
    std::vector<bool> inhabited;
    std::vector<std::vector<Counter>> banks;  // per club, k values

    bool operator==(const DetState&) const = default;
};

struct Discard {
    Configuration config;
    int source_club = 0;
    int transition = 0;  // machine transition that produced the config
};

struct DetStepResult {
    DetState state;
    ThetaGraph theta;
    std::vector<Discard> discarded;
};

DetState det_initial_state(const CounterMachine& machine, const ClubFamily& family);

/// Reconstructs the configuration tracked in an inhabited club.
Configuration det_tracked_config(const ClubFamily& family, const DetState& state, int club);

/// One letter of the powerset-with-trimming simulation: apply all transitions
/// to every tracked configuration, group results by target club, keep exactly
/// the clubs receiving a single run (multiset semantics), discard collisions.
DetStepResult det_step(const CounterMachine& machine, const ClubFamily& family,
                       const DetState& state, SymbolId letter);

/// The determinised Muller machine together with its construction metadata.
struct DetMachine {
    CounterMachine machine;  // control = (inhabitation bitmap, path-automaton state)
    ClubFamily family;
    int base_counters = 0;  // k of the input machine
    std::vector<std::vector<bool>> control_bitmap;  // per control state
    std::vector<int> control_dstate;                // per control state
    std::shared_ptr<PathMullerAutomaton> path_automaton;
};

struct DeterminizeOptions {
    int bound = 64;                       // lasso search bound for club emptiness
    std::uint64_t node_budget = 10'000'000;
    int max_control_states = 4096;
    int max_scc_for_muller = 18;          // Muller family enumeration cap
};

/// Determinisation of an unambiguous blind counter Buchi
/// automaton into a deterministic Muller machine with zero tests and counter
/// copying. The caller asserts unambiguity (see unambiguity_lint).
DetMachine determinize(const CounterMachine& machine, const DeterminizeOptions& options = {});

struct LintResult {
    bool violation = false;
    LassoWord word;
    RunPrefix run_a;  // two distinct accepting runs on the same word
    RunPrefix run_b;
};

/// Bounded semantic ambiguity check: searches lasso words up to `word_bound`
/// for two accepting lasso patterns whose replayed configuration sequences
/// differ. Finding none proves nothing; a violation is a genuine witness.
LintResult unambiguity_lint(const CounterMachine& machine, int word_bound, int run_bound,
                            std::uint64_t node_budget = 10'000'000);

}  // namespace bca
