#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "bca/machine.hpp"

namespace bca::samples {

inline CounterMachine make(const std::string& name, std::vector<std::string> alphabet,
                           std::vector<CounterKind> kinds, std::vector<std::string> states,
                           const std::string& initial,
                           std::vector<std::tuple<std::string, std::string, std::string,
                                                  std::vector<int>, std::string>> transitions,
                           std::vector<std::string> accepting) {
    CounterMachine m;
    m.name = name;
    m.alphabet = std::move(alphabet);
    m.counter_kinds = std::move(kinds);
    for (auto& s : states) m.add_state(s);
    m.initial = *m.state_index(initial);
    for (auto& [src, letter, guards, deltas, dst] : transitions) {
        Transition t;
        t.source = *m.state_index(src);
        t.letter = *m.symbol_index(letter);
        for (char g : guards)
            t.guards.push_back(g == '*' ? Guard::Any : (g == '0' ? Guard::Zero : Guard::Positive));
        t.deltas = deltas;
        t.target = *m.state_index(dst);
        m.transitions.push_back(std::move(t));
    }
    std::vector<StateId> acc;
    for (auto& s : accepting) acc.push_back(*m.state_index(s));
    m.acceptance = Acceptance::make_buchi(std::move(acc));
    return m;
}

/// Five one-counter input automata driven through the simulation builder.
inline std::vector<CounterMachine> simulation_inputs() {
    std::vector<CounterMachine> out;
    // a^omega, counter idle
    out.push_back(make("aomega", {"a"}, {CounterKind::Blind}, {"q"}, "q",
                       {{"q", "a", "*", {0}, "q"}}, {"q"}));
    // empty language
    out.push_back(make("empty", {"a"}, {CounterKind::Blind}, {"q"}, "q",
                       {{"q", "a", "*", {0}, "q"}}, {}));
    // zero-test alternator: counter 0,1,0,1,...
    out.push_back(make("zigzag", {"a"}, {CounterKind::Testable}, {"q0", "q1"}, "q0",
                       {{"q0", "a", "0", {1}, "q1"}, {"q1", "a", "+", {-1}, "q0"}}, {"q0"}));
    // (ab)^omega
    out.push_back(make("abflip", {"a", "b"}, {CounterKind::Blind}, {"q0", "q1"}, "q0",
                       {{"q0", "a", "*", {0}, "q1"}, {"q1", "b", "*", {0}, "q0"}}, {"q0"}));
    // a^omega with an unboundedly growing counter
    out.push_back(make("grow", {"a"}, {CounterKind::Blind}, {"q"}, "q",
                       {{"q", "a", "*", {1}, "q"}}, {"q"}));
    return out;
}

/// Unambiguous blind-counter inputs for the determinisation pipeline.
inline std::vector<CounterMachine> unambiguous_inputs() {
    std::vector<CounterMachine> out;
    // total deterministic a^omega over {a,b}
    out.push_back(make("det_aomega", {"a", "b"}, {CounterKind::Blind},
                       {"qacc", "qdead"}, "qacc",
                       {{"qacc", "a", "*", {0}, "qacc"},
                        {"qacc", "b", "*", {0}, "qdead"},
                        {"qdead", "a", "*", {0}, "qdead"},
                        {"qdead", "b", "*", {0}, "qdead"}},
                       {"qacc"}));
    // total deterministic (ab)^omega with a bouncing counter
    out.push_back(make("det_abflip", {"a", "b"}, {CounterKind::Blind},
                       {"qe", "qo", "qd"}, "qe",
                       {{"qe", "a", "*", {1}, "qo"},
                        {"qe", "b", "*", {0}, "qd"},
                        {"qo", "b", "*", {-1}, "qe"},
                        {"qo", "a", "*", {0}, "qd"},
                        {"qd", "a", "*", {0}, "qd"},
                        {"qd", "b", "*", {0}, "qd"}},
                       {"qe"}));
    // empty language, total deterministic
    out.push_back(make("det_empty", {"a", "b"}, {CounterKind::Blind}, {"q"}, "q",
                       {{"q", "a", "*", {0}, "q"}, {"q", "b", "*", {0}, "q"}}, {}));
    // nondeterministic but unambiguous: the counter disciplines the guess.
    // Branch 1 accepts a^n b^m a^omega with 1 <= m <= n (finitely many b);
    // branch 2 accepts exactly the words with infinitely many b.
    out.push_back(make("guess", {"a", "b"}, {CounterKind::Blind},
                       {"q0", "q1", "acc1", "p2", "p2acc"}, "q0",
                       {{"q0", "a", "*", {1}, "q0"},
                        {"q0", "b", "*", {-1}, "q1"},
                        {"q0", "b", "*", {0}, "p2"},
                        {"q1", "b", "*", {-1}, "q1"},
                        {"q1", "a", "*", {0}, "acc1"},
                        {"acc1", "a", "*", {0}, "acc1"},
                        {"p2", "a", "*", {0}, "p2"},
                        {"p2", "b", "*", {0}, "p2acc"},
                        {"p2acc", "a", "*", {0}, "p2"},
                        {"p2acc", "b", "*", {0}, "p2acc"}},
                       {"acc1", "p2acc"}));
    // total deterministic two-counter machine: an a-only path reaches the
    // accepting loop without decrements (so every club certifies), while the
    // b-transitions bounce the counters and can block
    out.push_back(make("det_bounce", {"a", "b"}, {CounterKind::Blind, CounterKind::Blind},
                       {"s0", "s1"}, "s0",
                       {{"s0", "a", "**", {1, 0}, "s1"},
                        {"s0", "b", "**", {0, -1}, "s0"},
                        {"s1", "a", "**", {0, 0}, "s1"},
                        {"s1", "b", "**", {-1, 1}, "s0"}},
                       {"s1"}));
    // unambiguous with genuine collisions: the two a-branches into the dead
    // state q1 land in one club and are discarded; accepting runs stay at q0
    out.push_back(make("collider", {"a", "b"}, {CounterKind::Blind},
                       {"q0", "q1", "acc"}, "q0",
                       {{"q0", "a", "*", {1}, "q0"},
                        {"q0", "a", "*", {1}, "q1"},
                        {"q0", "a", "*", {0}, "q1"},
                        {"q1", "a", "*", {0}, "q1"},
                        {"q1", "b", "*", {0}, "q1"},
                        {"q0", "b", "*", {0}, "acc"},
                        {"acc", "a", "*", {0}, "acc"},
                        {"acc", "b", "*", {0}, "acc"}},
                       {"acc"}));
    return out;
}

}  // namespace bca::samples
