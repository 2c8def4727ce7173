#include "bca/machine.hpp"

#include <algorithm>
#include <set>

namespace bca {

Acceptance Acceptance::make_buchi(std::vector<StateId> accepting) {
    Acceptance a;
    a.kind = Kind::Buchi;
    std::sort(accepting.begin(), accepting.end());
    accepting.erase(std::unique(accepting.begin(), accepting.end()), accepting.end());
    a.buchi = std::move(accepting);
    return a;
}

Acceptance Acceptance::make_muller(std::vector<std::vector<StateId>> family) {
    Acceptance a;
    a.kind = Kind::Muller;
    for (auto& set : family) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    a.muller = std::move(family);
    return a;
}

bool Acceptance::buchi_accepts(StateId q) const {
    return std::binary_search(buchi.begin(), buchi.end(), q);
}

bool Acceptance::muller_contains(const std::vector<StateId>& states) const {
    return std::find(muller.begin(), muller.end(), states) != muller.end();
}

std::optional<StateId> CounterMachine::state_index(const std::string& n) const {
    for (int i = 0; i < state_count(); ++i)
        if (states[i] == n) return i;
    return std::nullopt;
}

std::optional<SymbolId> CounterMachine::symbol_index(const std::string& n) const {
    for (int i = 0; i < symbol_count(); ++i)
        if (alphabet[i] == n) return i;
    return std::nullopt;
}

StateId CounterMachine::add_state(const std::string& n) {
    states.push_back(n);
    return static_cast<StateId>(states.size()) - 1;
}

SymbolId CounterMachine::require_symbol(const std::string& n) const {
    auto id = symbol_index(n);
    if (!id) throw PreconditionError("unknown symbol: " + n);
    return *id;
}

Configuration CounterMachine::initial_configuration() const {
    return Configuration{initial, std::vector<Counter>(counter_kinds.size(), 0)};
}

std::vector<Violation> validate(const CounterMachine& m) {
    std::vector<Violation> out;
    auto report = [&out](std::string code, std::string msg) {
        out.push_back(Violation{std::move(code), std::move(msg)});
    };

    const int k = m.counter_count();
    if (m.alphabet.empty()) report("empty alphabet", "machine has no input symbols");
    if (m.states.empty()) report("no states", "machine has no states");
    if (m.initial < 0 || m.initial >= m.state_count())
        report("unknown state", "initial state index out of range");

    {
        std::set<std::string> seen;
        for (const auto& s : m.states)
            if (!seen.insert(s).second) report("duplicate state", "state name repeated: " + s);
        seen.clear();
        for (const auto& s : m.alphabet)
            if (!seen.insert(s).second) report("duplicate symbol", "alphabet symbol repeated: " + s);
    }

    for (size_t i = 0; i < m.transitions.size(); ++i) {
        const Transition& t = m.transitions[i];
        const std::string at = "transition #" + std::to_string(i);
        if (t.source < 0 || t.source >= m.state_count() || t.target < 0 || t.target >= m.state_count())
            report("unknown state", at + " references a state outside the machine");
        if (t.letter < 0 || t.letter >= m.symbol_count())
            report("unknown symbol", at + " references a letter outside the alphabet");
        if (static_cast<int>(t.guards.size()) != k || static_cast<int>(t.deltas.size()) != k) {
            report("arity mismatch", at + " guard/delta vectors do not match counter count");
            continue;
        }
        for (int c = 0; c < k; ++c) {
            if (t.deltas[c] < -1 || t.deltas[c] > 1)
                report("bad delta", at + " delta outside {-1,0,+1} on counter " + std::to_string(c + 1));
            if (m.counter_kinds[c] == CounterKind::Blind && t.guards[c] != Guard::Any)
                report("guard on blind counter",
                       at + " carries a zero/positive guard on blind counter " + std::to_string(c + 1));
            if (t.guards[c] == Guard::Zero && t.deltas[c] == -1)
                report("decrement under zero guard",
                       at + " decrements counter " + std::to_string(c + 1) + " guarded zero");
        }
        if (!t.copies.empty() && !m.copy_capable)
            report("copy on plain machine", at + " uses copies but the machine is not copy-capable");
        std::set<int> copy_targets;
        for (auto [dst, src] : t.copies) {
            if (dst < 0 || dst >= k || src < 0 || src >= k)
                report("bad copy", at + " copy references a counter outside the machine");
            else if (!copy_targets.insert(dst).second)
                report("bad copy", at + " copies twice into counter " + std::to_string(dst + 1));
        }
    }

    auto check_state_set = [&](const std::vector<StateId>& set, const std::string& what) {
        for (StateId q : set)
            if (q < 0 || q >= m.state_count())
                report("unknown state", what + " references a state outside the machine");
    };
    if (m.acceptance.kind == Acceptance::Kind::Buchi) {
        check_state_set(m.acceptance.buchi, "accepting set");
    } else {
        for (const auto& set : m.acceptance.muller) {
            if (set.empty()) report("empty muller set", "Muller family contains an empty set");
            check_state_set(set, "Muller set");
        }
    }
    return out;
}

namespace {

bool guard_matches_bit(Guard g, bool positive) {
    switch (g) {
        case Guard::Zero: return !positive;
        case Guard::Positive: return positive;
        case Guard::Any: return true;
    }
    return false;
}

}  // namespace

bool is_deterministic(const CounterMachine& m) {
    const int k = m.counter_count();
    if (k > 20) throw PreconditionError("is_deterministic: too many counters to enumerate valuations");
    const std::uint64_t valuations = std::uint64_t{1} << k;
    for (StateId q = 0; q < m.state_count(); ++q) {
        for (SymbolId a = 0; a < m.symbol_count(); ++a) {
            std::vector<const Transition*> candidates;
            for (const Transition& t : m.transitions)
                if (t.source == q && t.letter == a) candidates.push_back(&t);
            for (std::uint64_t v = 0; v < valuations; ++v) {
                int applicable = 0;
                for (const Transition* t : candidates) {
                    bool ok = true;
                    for (int c = 0; c < k && ok; ++c)
                        ok = guard_matches_bit(t->guards[c], (v >> c) & 1);
                    if (ok && ++applicable > 1) break;
                }
                if (applicable != 1) return false;
            }
        }
    }
    return true;
}

bool simulates(const Configuration& c1, const Configuration& c2) {
    if (c1.counters.size() != c2.counters.size())
        throw PreconditionError("simulates: counter arity mismatch");
    if (c1.state != c2.state) return false;
    for (size_t i = 0; i < c1.counters.size(); ++i)
        if (c1.counters[i] < c2.counters[i]) return false;
    return true;
}

}  // namespace bca
