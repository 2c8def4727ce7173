#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bca/machine.hpp"
#include "bca/semantics.hpp"

namespace bca {

/// A prefix of the coding h(x) = A 0 x(1) B 0^2 x(2) A 0^3 x(3) ... truncated
/// after x(segments).
struct HCodePrefix {
    std::vector<std::string> source;      // x(1..n)
    std::vector<std::string> word;        // encoded letters
    std::vector<size_t> boundaries;       // word indices of the A/B separators
};

/// Encodes the first `segments` segments of h(x); every letter of x must be
/// in `sigma` and sigma must not contain the fresh letters A, B, 0.
HCodePrefix h_encode_prefix(const std::vector<std::string>& x,
                            const std::vector<std::string>& sigma, int segments);

struct ShapeReport {
    bool matches_R = false;               // prefix-compatible with the shape language
    std::vector<Counter> zero_runs;       // n_1, n_2, ... (completed runs only)
    std::optional<int> i0;                // first i with n_i != i (1-based)
};

/// Parses a finite word over Sigma u {A,B,0} against the alternating-separator
/// shape; malformed words report matches_R = false.
ShapeReport classify_shape(const std::vector<std::string>& y,
                           const std::vector<std::string>& sigma);

/// Decoded control structure of one state of the simulation automaton; exposed
/// for the run translation helpers and for tests.
struct BControl {
    enum class Phase { ExpectSep, ZeroRun, AwaitLetter };
    enum class Pend { Init, DeltaMinus, DeltaZero, DeltaPlus };
    Phase phase = Phase::ExpectSep;
    bool odd_segment = true;   // next/current segment index parity (odd reads 'A')
    StateId a_state = 0;       // stored state of the simulated automaton
    Pend pend = Pend::Init;    // pending counter delta of the chosen A-transition
    bool zone_b = false;       // ZeroRun only: attribution zone after the switch
    bool f1_seen = false;      // some fill-first increment happened this segment
};

/// The four-blind-counter simulation automaton of a one-counter automaton,
/// together with decoding tables used by lift_run / project_run.
struct BConstruction {
    CounterMachine machine;
    std::vector<BControl> control;        // per state of `machine`
    std::vector<int> a_transition_of;     // per transition: A-transition chosen
                                          // at an x-letter step, else -1
    std::vector<std::string> sigma;       // the input automaton's alphabet
};

BConstruction build_b_construction(const CounterMachine& a);

/// The four-blind-counter simulation automaton over Sigma u {A,B,0}; on
/// h(x) its accepting runs correspond exactly to accepting runs of `a` on x.
CounterMachine build_B(const CounterMachine& a);

/// Lifts a run of `a` on x(1..n) to the run of build_B(a) on the h-encoded
/// prefix through segment n (ending after x(n)).
RunPrefix lift_run(const BConstruction& b, const CounterMachine& a, const RunPrefix& run_a);

/// Extracts the simulated (state, |u_n|) trace of a build_B run over an
/// h-prefix back into a run of `a`; inverse of lift_run on its image.
RunPrefix project_run(const BConstruction& b, const CounterMachine& a, const RunPrefix& run_b);

/// One-blind-counter automaton for the residual language: words with a wrong
/// initial segment, or containing sep 0^n a sep' 0^m b with m <= n.
CounterMachine build_L(const std::vector<std::string>& sigma);

/// Union automaton with L(P_A) = h(L(a)) u L, four blind counters.
CounterMachine build_PA(const CounterMachine& a);

/// Automaton for the letter-interleaved shuffle Sh(L(a), L(b)): odd input
/// positions drive `a`, even positions drive `b`; counters are the disjoint
/// union; Buchi acceptance via the standard two-flag product.
CounterMachine shuffle(const CounterMachine& a, const CounterMachine& b);

}  // namespace bca
