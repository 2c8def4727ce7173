#include "bca/emptiness.hpp"

#include <algorithm>
#include <cstdint>

#include "bca/oracles.hpp"
#include "bca/semantics.hpp"

namespace bca {

namespace {

// Reachability over the plain state graph, ignoring counters.
std::vector<bool> plain_reachable(const CounterMachine& m, StateId from) {
    std::vector<bool> seen(m.state_count(), false);
    std::vector<StateId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (const Transition& t : m.transitions)
            if (t.source == q && !seen[t.target]) {
                seen[t.target] = true;
                stack.push_back(t.target);
            }
    }
    return seen;
}

std::vector<std::vector<bool>> plain_reach_matrix(const CounterMachine& m) {
    std::vector<std::vector<bool>> reach;
    reach.reserve(static_cast<size_t>(m.state_count()));
    for (StateId q = 0; q < m.state_count(); ++q) reach.push_back(plain_reachable(m, q));
    return reach;
}

// True iff some accepting state is reachable from `from` and lies on a cycle
// of the plain state graph. A Buchi run needs such a state, so "false" is an
// emptiness certificate.
bool accepting_cycle_plausible(const CounterMachine& m, StateId from) {
    auto reach = plain_reachable(m, from);
    for (StateId f : m.acceptance.buchi) {
        if (f < 0 || f >= m.state_count() || !reach[f]) continue;
        // f -> ... -> f via at least one transition
        std::vector<bool> seen(m.state_count(), false);
        std::vector<StateId> stack;
        for (const Transition& t : m.transitions)
            if (t.source == f && !seen[t.target]) {
                seen[t.target] = true;
                stack.push_back(t.target);
            }
        while (!stack.empty()) {
            StateId q = stack.back();
            stack.pop_back();
            if (q == f) break;
            for (const Transition& t : m.transitions)
                if (t.source == q && !seen[t.target]) {
                    seen[t.target] = true;
                    stack.push_back(t.target);
                }
        }
        if (seen[f]) return true;
    }
    return false;
}

bool guard_matches(Guard g, Counter value) {
    switch (g) {
        case Guard::Zero: return value == 0;
        case Guard::Positive: return value > 0;
        case Guard::Any: return true;
    }
    return false;
}

}  // namespace

LassoCheck check_lasso_pattern(const CounterMachine& machine, const LassoPattern& pattern) {
    LassoCheck res;
    const int k = machine.counter_count();
    const auto& seq = pattern.transitions;
    if (seq.empty()) {
        res.violated_condition = 1;
        res.detail = "empty transition sequence";
        return res;
    }
    const int ell = static_cast<int>(seq.size()) - 1;
    const int loop = pattern.looping_point;
    if (loop < 0 || loop > ell) {
        res.violated_condition = 3;
        res.detail = "looping point out of range";
        return res;
    }
    for (int idx : seq)
        if (idx < 0 || idx >= static_cast<int>(machine.transitions.size()))
            throw PreconditionError("check_lasso_pattern: transition index outside the machine");

    auto tr = [&](int i) -> const Transition& { return machine.transitions[seq[i]]; };

    // Condition 1: starts at the initial state, enabled on all-zero counters.
    if (tr(0).source != machine.initial) {
        res.violated_condition = 1;
        res.detail = "first transition does not start at the initial state";
        return res;
    }
    for (int c = 0; c < k; ++c)
        if (tr(0).guards[c] == Guard::Positive) {
            res.violated_condition = 1;
            res.detail = "first transition requires a positive counter";
            return res;
        }

    // Condition 2: states chain.
    for (int i = 0; i + 1 <= ell; ++i)
        if (tr(i).target != tr(i + 1).source) {
            res.violated_condition = 2;
            res.detail = "state chain broken after step " + std::to_string(i);
            return res;
        }

    // Condition 3: the cycle closes.
    if (tr(ell).target != tr(loop).source) {
        res.violated_condition = 3;
        res.detail = "cycle does not return to the looping point's state";
        return res;
    }

    // Conditions 4 and 6 plus the zero-guard extension, via prefix sums.
    std::vector<std::int64_t> sums(k, 0);
    for (int i = 0; i <= ell; ++i) {
        for (int c = 0; c < k; ++c) {
            if (tr(i).guards[c] == Guard::Positive && sums[c] <= 0) {
                res.violated_condition = 6;
                res.detail = "positive guard without positive prefix sum at step " + std::to_string(i);
                return res;
            }
            if (tr(i).guards[c] == Guard::Zero && sums[c] != 0) {
                res.violated_condition = 7;
                res.detail = "zero guard on a nonzero prefix sum at step " + std::to_string(i);
                return res;
            }
        }
        for (int c = 0; c < k; ++c) sums[c] += tr(i).deltas[c];
        for (int c = 0; c < k; ++c)
            if (sums[c] < 0) {
                res.violated_condition = 4;
                res.detail = "prefix sum negative after step " + std::to_string(i);
                return res;
            }
    }

    // Condition 5: cycle sum non-negative; zero guards inside the cycle need a
    // zero cycle sum to survive repeated iterations.
    std::vector<std::int64_t> cycle(k, 0);
    for (int i = loop; i <= ell; ++i)
        for (int c = 0; c < k; ++c) cycle[c] += tr(i).deltas[c];
    for (int c = 0; c < k; ++c)
        if (cycle[c] < 0) {
            res.violated_condition = 5;
            res.detail = "cycle sum negative on counter " + std::to_string(c + 1);
            return res;
        }
    for (int i = loop; i <= ell; ++i)
        for (int c = 0; c < k; ++c)
            if (tr(i).guards[c] == Guard::Zero && cycle[c] != 0) {
                res.violated_condition = 7;
                res.detail = "zero guard inside a counter-growing cycle";
                return res;
            }

    res.ok = true;
    return res;
}

bool is_accepting_pattern(const CounterMachine& machine, const LassoPattern& pattern) {
    const int ell = static_cast<int>(pattern.transitions.size()) - 1;
    for (int i = pattern.looping_point; i <= ell; ++i) {
        const Transition& t = machine.transitions[pattern.transitions[i]];
        if (machine.acceptance.buchi_accepts(t.source)) return true;
    }
    return false;
}

EmptinessResult find_accepting_lasso(const CounterMachine& machine, int length_bound,
                                     std::uint64_t node_budget,
                                     const std::optional<Configuration>& seed) {
    if (machine.acceptance.kind != Acceptance::Kind::Buchi)
        throw PreconditionError("find_accepting_lasso: Buchi acceptance required");
    for (const Transition& t : machine.transitions)
        if (!t.copies.empty())
            throw PreconditionError("find_accepting_lasso: copy transitions unsupported");

    EmptinessResult res;
    res.bound = length_bound;

    const StateId start_state = seed ? seed->state : machine.initial;
    if (!accepting_cycle_plausible(machine, start_state)) {
        res.verdict = EmptinessVerdict::EmptyCertified;
        return res;
    }

    const int k = machine.counter_count();
    const Configuration start =
        seed ? *seed : Configuration{start_state, std::vector<Counter>(k, 0)};

    // Per-prefix bookkeeping: states, counter values, accepting flags and the
    // counters carrying zero guards at each step (for the cycle check).
    std::vector<StateId> states{start.state};
    std::vector<std::vector<Counter>> values{start.counters};
    std::vector<int> chosen;
    std::vector<bool> source_accepting;
    std::vector<std::vector<int>> zero_guarded;

    const auto reach = plain_reach_matrix(machine);
    std::vector<bool> reaches_accepting(machine.state_count(), false);
    for (StateId q = 0; q < machine.state_count(); ++q)
        for (StateId f : machine.acceptance.buchi)
            if (f >= 0 && f < machine.state_count() && reach[q][f]) reaches_accepting[q] = true;

    std::uint64_t nodes = 0;
    bool found = false;

    // A prefix can only be completed if an accepting state lies ahead, or an
    // already-seen accepting anchor can still be returned to.
    auto completable = [&]() {
        const StateId here = states.back();
        if (reaches_accepting[here]) return true;
        int last_accepting = -1;
        for (int i = static_cast<int>(source_accepting.size()); i-- > 0;)
            if (source_accepting[static_cast<size_t>(i)]) {
                last_accepting = i;
                break;
            }
        for (int loop = 0; loop <= last_accepting; ++loop)
            if (reach[here][states[static_cast<size_t>(loop)]]) return true;
        return false;
    };

    auto try_close = [&]() {
        const int ell = static_cast<int>(chosen.size()) - 1;
        for (int loop = 0; loop <= ell && !found; ++loop) {
            if (states[static_cast<size_t>(ell) + 1] != states[loop]) continue;
            bool ok = true;
            for (int c = 0; c < k && ok; ++c)
                ok = values[static_cast<size_t>(ell) + 1][c] >= values[loop][c];
            if (!ok) continue;
            bool accepting = false;
            for (int i = loop; i <= ell && !accepting; ++i) accepting = source_accepting[i];
            if (!accepting) continue;
            for (int i = loop; i <= ell && ok; ++i)
                for (int c : zero_guarded[i])
                    if (values[static_cast<size_t>(ell) + 1][c] != values[loop][c]) {
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            res.verdict = EmptinessVerdict::NonEmpty;
            res.witness_transitions = chosen;
            res.witness_loop = loop;
            found = true;
        }
    };

    auto dfs = [&](auto&& self, int depth_left) -> void {
        if (found) return;
        if (++nodes > node_budget)
            throw BudgetExceededError("find_accepting_lasso: node budget exceeded");
        if (depth_left == 0) return;
        if (!completable()) return;
        const Configuration here{states.back(), values.back()};
        for (size_t idx = 0; idx < machine.transitions.size() && !found; ++idx) {
            const Transition& t = machine.transitions[idx];
            if (t.source != here.state) continue;
            bool ok = true;
            for (int c = 0; c < k && ok; ++c) ok = guard_matches(t.guards[c], here.counters[c]);
            if (!ok) continue;
            std::vector<Counter> next = here.counters;
            for (int c = 0; c < k && ok; ++c) ok = apply_delta(next[c], t.deltas[c], next[c]);
            if (!ok) continue;

            chosen.push_back(static_cast<int>(idx));
            states.push_back(t.target);
            values.push_back(std::move(next));
            source_accepting.push_back(machine.acceptance.buchi_accepts(t.source));
            std::vector<int> zg;
            for (int c = 0; c < k; ++c)
                if (t.guards[c] == Guard::Zero) zg.push_back(c);
            zero_guarded.push_back(std::move(zg));

            try_close();
            if (!found) self(self, depth_left - 1);

            chosen.pop_back();
            states.pop_back();
            values.pop_back();
            source_accepting.pop_back();
            zero_guarded.pop_back();
        }
    };

    for (int ell_max = 0; ell_max <= length_bound && !found; ++ell_max)
        dfs(dfs, ell_max + 1);
    if (!found) res.verdict = EmptinessVerdict::EmptyUpTo;
    return res;
}

ClubTestAutomaton club_test_automaton(const CounterMachine& machine, const Club& club) {
    if (club.state < 0 || club.state >= machine.state_count())
        throw PreconditionError("club_test_automaton: club state outside the machine");
    if (machine.alphabet.empty())
        throw PreconditionError("club_test_automaton: machine has an empty alphabet");
    const int k = machine.counter_count();
    if (static_cast<int>(club.gamma.size()) != k)
        throw PreconditionError("club_test_automaton: club arity mismatch");

    const Configuration tau0 = minimal_config(club);
    Counter z = 0;
    for (Counter v : tau0.counters) z = std::max(z, v);

    ClubTestAutomaton out;
    CounterMachine& m = out.machine;
    m.name = machine.name + "_club";
    m.alphabet = machine.alphabet;
    m.counter_kinds = machine.counter_kinds;
    m.states = machine.states;
    m.transitions = machine.transitions;
    m.acceptance = machine.acceptance;
    out.chain_length = static_cast<int>(z);
    out.bridge_target = club.state;

    const SymbolId a = 0;  // a0 = a1 = a2: first alphabet symbol
    std::vector<StateId> chain;
    for (Counter j = 0; j <= z; ++j)
        chain.push_back(m.add_state("_pre" + std::to_string(j)));
    m.initial = chain.front();

    for (Counter j = 1; j <= z; ++j) {
        Transition t;
        t.source = chain[j - 1];
        t.letter = a;
        t.guards = m.any_guards();
        t.deltas.assign(k, 0);
        for (int c = 0; c < k; ++c)
            if (tau0.counters[c] >= j) t.deltas[c] = 1;  // canonical {0,1} split
        t.target = chain[j];
        m.transitions.push_back(std::move(t));
    }

    {
        Transition bridge;
        bridge.source = chain.back();
        bridge.letter = a;
        bridge.guards = m.any_guards();
        bridge.deltas = m.zero_deltas();
        bridge.target = club.state;
        m.transitions.push_back(std::move(bridge));
    }

    if (club.dimension() > 0) {
        Transition pump;
        pump.source = chain.back();
        pump.letter = a;
        pump.guards = m.any_guards();
        pump.deltas.assign(k, 0);
        for (int c = 0; c < k; ++c)
            if (club.gamma[c].ge) pump.deltas[c] = 1;
        pump.target = chain.back();
        out.pump_transition = static_cast<int>(m.transitions.size());
        m.transitions.push_back(std::move(pump));
    }
    return out;
}

ClubEmptinessResult club_empty(const CounterMachine& machine, const Club& club,
                               int length_bound, std::uint64_t node_budget) {
    ClubTestAutomaton tester = club_test_automaton(machine, club);
    ClubEmptinessResult res;
    res.emptiness = find_accepting_lasso(tester.machine, length_bound, node_budget);
    switch (res.emptiness.verdict) {
        case EmptinessVerdict::NonEmpty: {
            Counter pumps = 0;
            if (tester.pump_transition >= 0)
                pumps = static_cast<Counter>(
                    std::count(res.emptiness.witness_transitions.begin(),
                               res.emptiness.witness_transitions.end(), tester.pump_transition));
            res.M = checked_add(club.threshold, pumps);
            break;
        }
        case EmptinessVerdict::EmptyCertified:
            res.M = club.threshold;
            break;
        case EmptinessVerdict::EmptyUpTo:
            res.M = checked_add(club.threshold, static_cast<Counter>(length_bound));
            break;
    }
    return res;
}

bool replay_pattern(const CounterMachine& machine, const LassoPattern& pattern, int loops,
                    const std::optional<Configuration>& seed) {
    if (pattern.transitions.empty()) return false;
    Configuration c = seed ? *seed : machine.initial_configuration();
    const int ell = static_cast<int>(pattern.transitions.size()) - 1;

    auto step = [&](int i) -> bool {
        const Transition& t = machine.transitions[pattern.transitions[i]];
        if (t.source != c.state) return false;
        for (int cc = 0; cc < machine.counter_count(); ++cc)
            if (!guard_matches(t.guards[cc], c.counters[cc])) return false;
        auto next = apply_transition(machine, t, c);
        if (!next) return false;
        c = std::move(*next);
        return true;
    };

    for (int i = 0; i < pattern.looping_point; ++i)
        if (!step(i)) return false;
    for (int l = 0; l < loops; ++l)
        for (int i = pattern.looping_point; i <= ell; ++i)
            if (!step(i)) return false;
    return true;
}

OracleVerdict oracle_bfs_empty(const CounterMachine& machine, Counter counter_cap,
                               std::uint64_t depth_cap,
                               const std::optional<Configuration>& seed) {
    CappedSystem sys = capped_graph(machine, counter_cap, seed, 2'000'000, depth_cap);
    CappedWitness w = capped_buchi_nonempty(sys);
    OracleVerdict out;
    out.non_empty = w.non_empty;
    out.spoke = std::move(w.spoke);
    out.cycle = std::move(w.cycle);
    return out;
}

}  // namespace bca
