#pragma once

#include <random>
#include <string>
#include <vector>

#include "bca/machine.hpp"

namespace bca::test {

/// Compact machine builder for tests.
struct Builder {
    CounterMachine m;

    Builder(std::string name, std::vector<std::string> alphabet, int counters,
            CounterKind kind = CounterKind::Blind) {
        m.name = std::move(name);
        m.alphabet = std::move(alphabet);
        m.counter_kinds.assign(static_cast<size_t>(counters), kind);
    }

    Builder& state(const std::string& s) {
        m.add_state(s);
        return *this;
    }
    Builder& states(std::initializer_list<std::string> ss) {
        for (const auto& s : ss) m.add_state(s);
        return *this;
    }
    Builder& initial(const std::string& s) {
        m.initial = *m.state_index(s);
        return *this;
    }
    Builder& kind(int counter, CounterKind k) {
        m.counter_kinds[static_cast<size_t>(counter)] = k;
        return *this;
    }
    /// guards: string of '*', '0', '+' per counter; deltas per counter.
    Builder& trans(const std::string& src, const std::string& letter, const std::string& guards,
                   std::vector<int> deltas, const std::string& dst) {
        Transition t;
        t.source = *m.state_index(src);
        t.letter = *m.symbol_index(letter);
        for (char g : guards)
            t.guards.push_back(g == '*' ? Guard::Any : (g == '0' ? Guard::Zero : Guard::Positive));
        t.deltas = std::move(deltas);
        t.target = *m.state_index(dst);
        m.transitions.push_back(std::move(t));
        return *this;
    }
    Builder& accepting(std::initializer_list<std::string> ss) {
        std::vector<StateId> acc;
        for (const auto& s : ss) acc.push_back(*m.state_index(s));
        m.acceptance = Acceptance::make_buchi(std::move(acc));
        return *this;
    }

    CounterMachine build() const { return m; }
};

/// One-state machine accepting a^omega over {a} (total on its alphabet).
inline CounterMachine aomega() {
    return Builder("aomega", {"a"}, 1)
        .states({"q"})
        .initial("q")
        .trans("q", "a", "*", {0}, "q")
        .accepting({"q"})
        .build();
}

/// Seeded random blind machine: useful for property tests.
inline CounterMachine random_blind_machine(std::mt19937_64& rng, int max_states, int max_counters,
                                           int max_letters, int max_transitions) {
    std::uniform_int_distribution<int> dstates(1, max_states), dcounters(1, max_counters),
        dletters(1, max_letters);
    const int ns = dstates(rng), k = dcounters(rng), nl = dletters(rng);
    std::vector<std::string> alphabet;
    for (int i = 0; i < nl; ++i) alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    Builder b("rnd", alphabet, k);
    for (int i = 0; i < ns; ++i) b.state("s" + std::to_string(i));
    b.initial("s0");
    std::uniform_int_distribution<int> dtrans(1, max_transitions), dstate(0, ns - 1),
        dletter(0, nl - 1), ddelta(-1, 1);
    const int nt = dtrans(rng);
    for (int i = 0; i < nt; ++i) {
        Transition t;
        t.source = dstate(rng);
        t.letter = dletter(rng);
        t.guards.assign(static_cast<size_t>(k), Guard::Any);
        for (int c = 0; c < k; ++c) t.deltas.push_back(ddelta(rng));
        t.target = dstate(rng);
        b.m.transitions.push_back(std::move(t));
    }
    std::vector<StateId> acc;
    for (int i = 0; i < ns; ++i)
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) acc.push_back(i);
    b.m.acceptance = Acceptance::make_buchi(std::move(acc));
    return b.build();
}

}  // namespace bca::test
