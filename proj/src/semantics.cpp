#include "bca/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bca/emptiness.hpp"

namespace bca {

std::optional<Configuration> apply_transition(const CounterMachine& machine,
                                              const Transition& t,
                                              const Configuration& c) {
    const int k = machine.counter_count();
    Configuration next;
    next.state = t.target;
    next.counters = c.counters;
    for (auto [dst, src] : t.copies) next.counters[dst] = c.counters[src];
    for (int i = 0; i < k; ++i) {
        Counter updated;
        if (!apply_delta(next.counters[i], t.deltas[i], updated)) return std::nullopt;
        next.counters[i] = updated;
    }
    return next;
}

namespace {

bool guard_matches(Guard g, Counter value) {
    switch (g) {
        case Guard::Zero: return value == 0;
        case Guard::Positive: return value > 0;
        case Guard::Any: return true;
    }
    return false;
}

}  // namespace

std::vector<std::pair<int, Configuration>> successors(const CounterMachine& machine,
                                                      const Configuration& config,
                                                      SymbolId letter) {
    if (letter < 0 || letter >= machine.symbol_count())
        throw PreconditionError("successors: unknown letter");
    std::vector<std::pair<int, Configuration>> out;
    for (size_t i = 0; i < machine.transitions.size(); ++i) {
        const Transition& t = machine.transitions[i];
        if (t.source != config.state || t.letter != letter) continue;
        bool ok = true;
        for (int c = 0; c < machine.counter_count() && ok; ++c)
            ok = guard_matches(t.guards[c], config.counters[c]);
        if (!ok) continue;
        if (auto next = apply_transition(machine, t, config))
            out.emplace_back(static_cast<int>(i), std::move(*next));
    }
    return out;
}

RunPrefixSet run_prefixes(const CounterMachine& machine,
                          const std::vector<SymbolId>& word,
                          const Configuration& seed,
                          std::optional<Counter> cap,
                          std::uint64_t node_budget) {
    RunPrefixSet result;
    std::uint64_t nodes = 0;

    RunPrefix current;
    current.configs.push_back(seed);

    // Depth-first over the word positions, transitions in declaration order.
    auto rec = [&](auto&& self, size_t pos) -> void {
        if (++nodes > node_budget) throw BudgetExceededError("run_prefixes: node budget exceeded");
        if (pos == word.size()) {
            result.prefixes.push_back(current);
            return;
        }
        for (auto& [idx, next] : successors(machine, current.configs.back(), word[pos])) {
            if (cap) {
                bool over = false;
                for (Counter v : next.counters)
                    if (v > *cap) { over = true; break; }
                if (over) {
                    result.cap_pruned = true;
                    continue;
                }
            }
            current.configs.push_back(next);
            current.transitions.push_back(idx);
            self(self, pos + 1);
            current.configs.pop_back();
            current.transitions.pop_back();
        }
    };
    rec(rec, 0);
    return result;
}

bool check_run(const CounterMachine& machine, const RunPrefix& run) {
    if (run.configs.size() != run.transitions.size() + 1) return false;
    for (size_t i = 0; i < run.transitions.size(); ++i) {
        int idx = run.transitions[i];
        if (idx < 0 || idx >= static_cast<int>(machine.transitions.size())) return false;
        const Transition& t = machine.transitions[idx];
        const Configuration& from = run.configs[i];
        if (t.source != from.state) return false;
        for (int c = 0; c < machine.counter_count(); ++c)
            if (!guard_matches(t.guards[c], from.counters[c])) return false;
        auto next = apply_transition(machine, t, from);
        if (!next || !(*next == run.configs[i + 1])) return false;
    }
    return true;
}

DetRunResult run_deterministic(const CounterMachine& machine,
                               const LassoWord& lasso,
                               std::uint64_t step_budget) {
    if (lasso.v.empty()) throw PreconditionError("run_deterministic: empty cycle word");
    if (!is_deterministic(machine))
        throw PreconditionError("run_deterministic: machine is not deterministic");

    DetRunResult res;
    res.trace.configs.push_back(machine.initial_configuration());

    // Snapshots taken at cycle positions: (v index, configuration) -> step.
    std::map<std::pair<size_t, Configuration>, size_t> seen;

    for (std::uint64_t step = 0; step < step_budget; ++step) {
        const size_t pos = static_cast<size_t>(step);
        SymbolId letter;
        size_t vpos = 0;
        bool in_cycle = pos >= lasso.u.size();
        if (!in_cycle) {
            letter = lasso.u[pos];
        } else {
            vpos = (pos - lasso.u.size()) % lasso.v.size();
            letter = lasso.v[vpos];
        }

        const Configuration& here = res.trace.configs.back();
        if (in_cycle) {
            auto key = std::make_pair(vpos, here);
            auto it = seen.find(key);
            if (it != seen.end()) {
                // Exact repeat at the same v position: the run is eventually
                // periodic with In(r) = states of the detected cycle.
                std::set<StateId> states;
                for (size_t i = it->second; i < pos; ++i)
                    states.insert(res.trace.configs[i].state);
                res.infinity_set.assign(states.begin(), states.end());
                bool accept;
                if (machine.acceptance.kind == Acceptance::Kind::Buchi) {
                    accept = std::any_of(res.infinity_set.begin(), res.infinity_set.end(),
                                         [&](StateId q) { return machine.acceptance.buchi_accepts(q); });
                } else {
                    accept = machine.acceptance.muller_contains(res.infinity_set);
                }
                res.verdict = accept ? RunVerdict::Accept : RunVerdict::Reject;
                return res;
            }
            seen.emplace(key, pos);
        }

        auto succ = successors(machine, here, letter);
        if (succ.empty()) {
            res.verdict = RunVerdict::Reject;
            res.diagnostic = "machine blocked at step " + std::to_string(pos) + " in state " +
                             machine.states[here.state];
            return res;
        }
        res.trace.transitions.push_back(succ.front().first);
        res.trace.configs.push_back(std::move(succ.front().second));
    }
    res.verdict = RunVerdict::Unknown;
    res.diagnostic = "no exact configuration repeat within the step budget";
    return res;
}

UpwProduct upw_product(const CounterMachine& machine, const LassoWord& lasso) {
    if (lasso.v.empty()) throw PreconditionError("upw_product: empty cycle word");
    const size_t positions = lasso.u.size() + lasso.v.size();
    auto letter_at = [&](size_t p) {
        return p < lasso.u.size() ? lasso.u[p] : lasso.v[p - lasso.u.size()];
    };
    auto next_pos = [&](size_t p) {
        ++p;
        if (p >= positions) p = lasso.u.size();
        return p;
    };

    UpwProduct prod;
    CounterMachine& pm = prod.machine;
    pm.name = machine.name + "_x_word";
    pm.alphabet = machine.alphabet;
    pm.counter_kinds = machine.counter_kinds;
    pm.copy_capable = machine.copy_capable;
    for (StateId q = 0; q < machine.state_count(); ++q)
        for (size_t p = 0; p < positions; ++p)
            pm.add_state(machine.states[q] + "@" + std::to_string(p));
    auto id_of = [&](StateId q, size_t p) {
        return static_cast<StateId>(q * positions + p);
    };
    pm.initial = id_of(machine.initial, 0);

    std::vector<StateId> accepting;
    for (size_t i = 0; i < machine.transitions.size(); ++i) {
        const Transition& t = machine.transitions[i];
        for (size_t p = 0; p < positions; ++p) {
            if (t.letter != letter_at(p)) continue;
            Transition pt = t;
            pt.source = id_of(t.source, p);
            pt.target = id_of(t.target, next_pos(p));
            pm.transitions.push_back(pt);
            prod.origin.push_back(static_cast<int>(i));
        }
    }
    if (machine.acceptance.kind != Acceptance::Kind::Buchi)
        throw PreconditionError("membership_upw: machine must have Buchi acceptance");
    for (StateId q : machine.acceptance.buchi)
        for (size_t p = 0; p < positions; ++p) accepting.push_back(id_of(q, p));
    pm.acceptance = Acceptance::make_buchi(std::move(accepting));
    return prod;
}

MembershipResult membership_upw(const CounterMachine& machine,
                                const LassoWord& lasso,
                                int bound,
                                std::uint64_t node_budget) {
    UpwProduct prod = upw_product(machine, lasso);
    EmptinessResult er = find_accepting_lasso(prod.machine, bound, node_budget);

    MembershipResult res;
    res.bound = bound;
    switch (er.verdict) {
        case EmptinessVerdict::NonEmpty: {
            res.verdict = MembershipVerdict::Member;
            for (int idx : er.witness_transitions)
                res.witness_transitions.push_back(prod.origin[idx]);
            res.witness_loop = er.witness_loop;
            break;
        }
        case EmptinessVerdict::EmptyCertified:
            res.verdict = MembershipVerdict::NonMemberCertified;
            break;
        case EmptinessVerdict::EmptyUpTo:
            res.verdict = MembershipVerdict::NonMemberUpToBound;
            break;
    }
    return res;
}

}  // namespace bca
