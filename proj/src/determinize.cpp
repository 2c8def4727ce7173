#include "bca/determinize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "bca/emptiness.hpp"

namespace bca {

DetState det_initial_state(const CounterMachine& machine, const ClubFamily& family) {
    DetState s;
    s.inhabited.assign(family.clubs.size(), false);
    s.banks.assign(family.clubs.size(),
                   std::vector<Counter>(static_cast<size_t>(machine.counter_count()), 0));
    auto home = family.club_of(machine.initial_configuration());
    if (!home) throw PreconditionError("det_initial_state: family does not cover the origin");
    s.inhabited[static_cast<size_t>(*home)] = true;
    return s;
}

Configuration det_tracked_config(const ClubFamily& family, const DetState& state, int club) {
    if (!state.inhabited.at(static_cast<size_t>(club)))
        throw PreconditionError("det_tracked_config: club not inhabited");
    const Club& c = family.clubs[static_cast<size_t>(club)];
    Configuration config;
    config.state = c.state;
    for (size_t j = 0; j < c.gamma.size(); ++j) {
        if (c.gamma[j].ge)
            config.counters.push_back(
                checked_add(family.threshold, state.banks[static_cast<size_t>(club)][j]));
        else
            config.counters.push_back(c.gamma[j].value);
    }
    return config;
}

DetStepResult det_step(const CounterMachine& machine, const ClubFamily& family,
                       const DetState& state, SymbolId letter) {
    struct Arrival {
        Configuration config;
        int source_club;
        int transition;
    };
    std::map<int, std::vector<Arrival>> groups;

    for (size_t i = 0; i < family.clubs.size(); ++i) {
        if (!state.inhabited[i]) continue;
        const Configuration here = det_tracked_config(family, state, static_cast<int>(i));
        for (auto& [t, next] : successors(machine, here, letter)) {
            auto target = family.club_of(next);
            if (!target)
                throw PreconditionError("det_step: family does not cover a successor");
            groups[*target].push_back(Arrival{std::move(next), static_cast<int>(i), t});
        }
    }

    DetStepResult res;
    res.state.inhabited.assign(family.clubs.size(), false);
    res.state.banks = state.banks;
    std::vector<std::pair<int, int>> pairs;
    for (auto& [target, arrivals] : groups) {
        if (arrivals.size() == 1) {
            const Arrival& a = arrivals.front();
            res.state.inhabited[static_cast<size_t>(target)] = true;
            auto& bank = res.state.banks[static_cast<size_t>(target)];
            for (size_t j = 0; j < a.config.counters.size(); ++j)
                bank[j] = a.config.counters[j] > family.threshold
                              ? a.config.counters[j] - family.threshold
                              : 0;
            pairs.emplace_back(a.source_club, target);
        } else {
            for (Arrival& a : arrivals)
                res.discarded.push_back(Discard{std::move(a.config), a.source_club, a.transition});
        }
    }
    res.theta = ThetaGraph::of(std::move(pairs));
    return res;
}

namespace {

// Symbolic counter value during materialization: either exactly known or only
// known to be >= threshold (with the residual tracked by the counter bank).
struct SymValue {
    bool exact;
    Counter value;  // when exact
};

struct SymArrival {
    StateId state;
    std::vector<SymValue> counters;
    std::vector<int> bank_delta;  // applied to the copied source bank
    int source_club;
};

}  // namespace

DetMachine determinize(const CounterMachine& machine, const DeterminizeOptions& options) {
    if (machine.acceptance.kind != Acceptance::Kind::Buchi)
        throw PreconditionError("determinize: Buchi input required");
    for (CounterKind kind : machine.counter_kinds)
        if (kind != CounterKind::Blind)
            throw PreconditionError("determinize: all input counters must be blind");
    if (machine.copy_capable)
        throw PreconditionError("determinize: input must not use copying");

    DetMachine out;
    out.family = build_family(machine, options.bound, options.node_budget);
    const ClubFamily& family = out.family;
    const Counter N = family.threshold;
    const int k = machine.counter_count();
    out.base_counters = k;

    {
        std::vector<Club> uncertified;
        for (size_t i = 0; i < family.clubs.size(); ++i)
            if (family.optimality[i] != Cert::Yes) uncertified.push_back(family.clubs[i]);
        if (!uncertified.empty()) {
            std::string msg = "determinize: optimality uncertified within bound for";
            for (const Club& c : uncertified) msg += " " + club_to_string(machine, c);
            throw UncertifiedClubsError(msg, std::move(uncertified));
        }
    }

    std::vector<bool> accepting_clubs(family.clubs.size(), false);
    for (size_t i = 0; i < family.clubs.size(); ++i)
        accepting_clubs[i] = machine.acceptance.buchi_accepts(family.clubs[i].state);
    out.path_automaton = std::make_shared<PathMullerAutomaton>(
        static_cast<int>(family.clubs.size()), accepting_clubs);
    PathMullerAutomaton& D = *out.path_automaton;

    CounterMachine& m = out.machine;
    m.name = machine.name + "_det";
    m.alphabet = machine.alphabet;
    m.copy_capable = true;
    m.counter_kinds.assign(family.clubs.size() * static_cast<size_t>(k), CounterKind::Testable);
    auto bank_index = [&](int club, int coord) { return club * k + coord; };

    std::map<std::pair<std::vector<bool>, int>, StateId> interned;
    std::deque<StateId> queue;
    auto intern = [&](const std::vector<bool>& bitmap, int dstate) {
        auto [it, fresh] = interned.try_emplace({bitmap, dstate}, 0);
        if (fresh) {
            std::string name = "s";
            for (bool b : bitmap) name += b ? '1' : '0';
            name += "_d" + std::to_string(dstate);
            it->second = m.add_state(name);
            out.control_bitmap.push_back(bitmap);
            out.control_dstate.push_back(dstate);
            queue.push_back(it->second);
            if (m.state_count() > options.max_control_states)
                throw BudgetExceededError("determinize: control state budget exceeded");
        }
        return it->second;
    };

    {
        DetState init = det_initial_state(machine, family);
        m.initial = intern(init.inhabited, D.initial_state());
    }

    while (!queue.empty()) {
        const StateId sid = queue.front();
        queue.pop_front();
        const std::vector<bool> bitmap = out.control_bitmap[static_cast<size_t>(sid)];
        const int dstate = out.control_dstate[static_cast<size_t>(sid)];

        // Banks consulted by zero tests: the (>= N) coordinates of inhabited clubs.
        std::vector<std::pair<int, int>> consulted;
        for (size_t i = 0; i < family.clubs.size(); ++i) {
            if (!bitmap[i]) continue;
            for (int j = 0; j < k; ++j)
                if (family.clubs[i].gamma[static_cast<size_t>(j)].ge)
                    consulted.emplace_back(static_cast<int>(i), j);
        }
        if (consulted.size() > 16)
            throw BudgetExceededError("determinize: too many zero tests per transition");

        for (SymbolId a = 0; a < m.symbol_count(); ++a) {
            for (std::uint64_t phi = 0; phi < (std::uint64_t{1} << consulted.size()); ++phi) {
                auto bank_positive = [&](int club, int coord) {
                    for (size_t c = 0; c < consulted.size(); ++c)
                        if (consulted[c] == std::make_pair(club, coord)) return ((phi >> c) & 1) != 0;
                    throw PreconditionError("determinize: unconsulted bank queried");
                };

                // Symbolically run every tracked configuration through all
                // machine transitions and group the arrivals by target club.
                std::map<int, std::vector<SymArrival>> groups;
                for (size_t i = 0; i < family.clubs.size(); ++i) {
                    if (!bitmap[i]) continue;
                    const Club& club = family.clubs[i];
                    for (size_t ti = 0; ti < machine.transitions.size(); ++ti) {
                        const Transition& t = machine.transitions[ti];
                        if (t.source != club.state || t.letter != a) continue;
                        SymArrival arr;
                        arr.state = t.target;
                        arr.source_club = static_cast<int>(i);
                        bool enabled = true;
                        for (int j = 0; j < k && enabled; ++j) {
                            const ClubEntry& e = club.gamma[static_cast<size_t>(j)];
                            const int d = t.deltas[static_cast<size_t>(j)];
                            if (!e.ge) {
                                // exact coordinate, value known from gamma; the
                                // family construction keeps these below N, so
                                // the stored bank value is always zero
                                if (e.value >= N)
                                    throw PreconditionError(
                                        "determinize: exact club coordinate at or above the "
                                        "threshold");
                                if (d < 0 && e.value == 0) {
                                    enabled = false;
                                    break;
                                }
                                Counter v = e.value;
                                v = d < 0 ? v - 1 : (d > 0 ? checked_add(v, 1) : v);
                                arr.counters.push_back(SymValue{true, v});
                                arr.bank_delta.push_back(0);
                            } else if (!bank_positive(static_cast<int>(i), j)) {
                                // tau_j = N exactly (N > 0, so a decrement cannot block)
                                Counter v = N;
                                v = d < 0 ? v - 1 : (d > 0 ? checked_add(v, 1) : v);
                                arr.counters.push_back(SymValue{true, v});
                                // the bank held 0; it must become max(tau' - N, 0)
                                arr.bank_delta.push_back(d > 0 ? 1 : 0);
                            } else {
                                // tau_j > N: bank positive, result stays >= N
                                arr.counters.push_back(SymValue{false, 0});
                                arr.bank_delta.push_back(d);
                            }
                        }
                        if (!enabled) continue;

                        // Locate the unique family club containing the arrival.
                        int target = -1;
                        for (int cand : family.clubs_of_state(arr.state)) {
                            const Club& g = family.clubs[static_cast<size_t>(cand)];
                            bool match = true;
                            for (int j = 0; j < k && match; ++j) {
                                const ClubEntry& e = g.gamma[static_cast<size_t>(j)];
                                const SymValue& v = arr.counters[static_cast<size_t>(j)];
                                if (e.ge)
                                    match = v.exact ? v.value >= N : true;
                                else
                                    match = v.exact && v.value == e.value;
                            }
                            if (match) {
                                if (target >= 0)
                                    throw PreconditionError("determinize: family clubs overlap");
                                target = cand;
                            }
                        }
                        if (target < 0)
                            throw PreconditionError("determinize: family does not cover an arrival");
                        groups[target].push_back(std::move(arr));
                    }
                }

                // Collision trimming and transition assembly.
                Transition nt;
                nt.source = sid;
                nt.letter = a;
                nt.guards.assign(m.counter_kinds.size(), Guard::Any);
                nt.deltas.assign(m.counter_kinds.size(), 0);
                for (size_t c = 0; c < consulted.size(); ++c) {
                    auto [club, coord] = consulted[c];
                    nt.guards[static_cast<size_t>(bank_index(club, coord))] =
                        ((phi >> c) & 1) ? Guard::Positive : Guard::Zero;
                }

                std::vector<bool> next_bitmap(family.clubs.size(), false);
                std::vector<std::pair<int, int>> pairs;
                for (auto& [target, arrivals] : groups) {
                    if (arrivals.size() != 1) continue;  // collision: discard all
                    const SymArrival& arr = arrivals.front();
                    next_bitmap[static_cast<size_t>(target)] = true;
                    pairs.emplace_back(arr.source_club, target);
                    for (int j = 0; j < k; ++j) {
                        const int dst = bank_index(target, j);
                        if (target != arr.source_club)
                            nt.copies.emplace_back(dst, bank_index(arr.source_club, j));
                        nt.deltas[static_cast<size_t>(dst)] = arr.bank_delta[static_cast<size_t>(j)];
                    }
                }
                std::sort(nt.copies.begin(), nt.copies.end());

                const ThetaGraph theta = ThetaGraph::of(std::move(pairs));
                const int next_d = D.step(dstate, theta);
                nt.target = intern(next_bitmap, next_d);
                m.transitions.push_back(std::move(nt));
            }
        }
    }

    // Muller family: per-SCC strongly connected subsets whose path-automaton
    // projection satisfies the Rabin condition.
    const int n = m.state_count();
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (const Transition& t : m.transitions) adj[static_cast<size_t>(t.source)].push_back(t.target);

    // Tarjan SCC (iterative).
    std::vector<int> comp(static_cast<size_t>(n), -1), low(static_cast<size_t>(n)),
        num(static_cast<size_t>(n), -1);
    {
        std::vector<int> stack;
        std::vector<bool> on_stack(static_cast<size_t>(n), false);
        int counter = 0, comps = 0;
        struct Frame {
            int node;
            size_t edge;
        };
        for (int root = 0; root < n; ++root) {
            if (num[static_cast<size_t>(root)] != -1) continue;
            std::vector<Frame> frames{{root, 0}};
            num[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
            stack.push_back(root);
            on_stack[static_cast<size_t>(root)] = true;
            while (!frames.empty()) {
                Frame& f = frames.back();
                if (f.edge < adj[static_cast<size_t>(f.node)].size()) {
                    int nx = adj[static_cast<size_t>(f.node)][f.edge++];
                    if (num[static_cast<size_t>(nx)] == -1) {
                        num[static_cast<size_t>(nx)] = low[static_cast<size_t>(nx)] = counter++;
                        stack.push_back(nx);
                        on_stack[static_cast<size_t>(nx)] = true;
                        frames.push_back({nx, 0});
                    } else if (on_stack[static_cast<size_t>(nx)]) {
                        low[static_cast<size_t>(f.node)] =
                            std::min(low[static_cast<size_t>(f.node)], num[static_cast<size_t>(nx)]);
                    }
                } else {
                    if (low[static_cast<size_t>(f.node)] == num[static_cast<size_t>(f.node)]) {
                        while (true) {
                            int v = stack.back();
                            stack.pop_back();
                            on_stack[static_cast<size_t>(v)] = false;
                            comp[static_cast<size_t>(v)] = comps;
                            if (v == f.node) break;
                        }
                        ++comps;
                    }
                    int done = f.node;
                    frames.pop_back();
                    if (!frames.empty())
                        low[static_cast<size_t>(frames.back().node)] = std::min(
                            low[static_cast<size_t>(frames.back().node)], low[static_cast<size_t>(done)]);
                }
            }
        }
    }

    std::map<int, std::vector<int>> scc_members;
    for (int s = 0; s < n; ++s) scc_members[comp[static_cast<size_t>(s)]].push_back(s);

    std::vector<std::vector<StateId>> muller;
    for (auto& [c, members] : scc_members) {
        if (static_cast<int>(members.size()) > options.max_scc_for_muller)
            throw BudgetExceededError(
                "determinize: an SCC is too large to enumerate the Muller family");
        const size_t sz = members.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sz); ++mask) {
            std::vector<int> subset;
            for (size_t i = 0; i < sz; ++i)
                if ((mask >> i) & 1) subset.push_back(members[i]);
            // realizable infinity sets are strongly connected in the induced graph
            std::set<int> in_subset(subset.begin(), subset.end());
            bool connected = true;
            for (int from : subset) {
                std::set<int> seen{from};
                std::vector<int> stk{from};
                while (!stk.empty()) {
                    int q = stk.back();
                    stk.pop_back();
                    for (int to : adj[static_cast<size_t>(q)])
                        if (in_subset.count(to) && !seen.count(to)) {
                            seen.insert(to);
                            stk.push_back(to);
                        }
                }
                if (seen.size() != subset.size()) {
                    connected = false;
                    break;
                }
            }
            if (!connected) continue;
            std::vector<int> dstates;
            for (int s : subset) dstates.push_back(out.control_dstate[static_cast<size_t>(s)]);
            std::sort(dstates.begin(), dstates.end());
            dstates.erase(std::unique(dstates.begin(), dstates.end()), dstates.end());
            if (D.muller_accepts(dstates)) muller.push_back(subset);
        }
    }
    m.acceptance = Acceptance::make_muller(std::move(muller));
    return out;
}

namespace {

RunPrefix replay_on_machine(const CounterMachine& machine, const LassoPattern& pattern,
                            size_t steps) {
    RunPrefix run;
    run.configs.push_back(machine.initial_configuration());
    const int ell = static_cast<int>(pattern.transitions.size()) - 1;
    size_t next = 0;
    while (run.transitions.size() < steps) {
        int idx = pattern.transitions[next];
        const Transition& t = machine.transitions[static_cast<size_t>(idx)];
        auto cfg = apply_transition(machine, t, run.configs.back());
        if (!cfg) throw PreconditionError("lint replay blocked (pattern unsound)");
        run.transitions.push_back(idx);
        run.configs.push_back(std::move(*cfg));
        ++next;
        if (next > static_cast<size_t>(ell)) next = static_cast<size_t>(pattern.looping_point);
    }
    return run;
}

}  // namespace

namespace {

// Self-product for the ambiguity search: both components read the same word,
// a sticky bit records whether the two tracked runs have diverged (different
// states or different delta vectors at some step implies different
// configuration sequences, and conversely), and a two-flag index j checks
// both components' Buchi conditions.
struct AmbiguityProduct {
    CounterMachine machine;
    std::vector<std::pair<int, int>> origin;  // per transition: component transitions
};

AmbiguityProduct ambiguity_product(const CounterMachine& a) {
    AmbiguityProduct out;
    CounterMachine& m = out.machine;
    m.name = a.name + "_amb";
    m.alphabet = a.alphabet;
    m.counter_kinds = a.counter_kinds;
    m.counter_kinds.insert(m.counter_kinds.end(), a.counter_kinds.begin(),
                           a.counter_kinds.end());
    const int n = a.state_count();

    auto id_of = [&](StateId q1, StateId q2, int differ, int j) {
        return static_cast<StateId>(((q1 * n + q2) * 2 + differ) * 2 + (j - 1));
    };
    for (StateId q1 = 0; q1 < n; ++q1)
        for (StateId q2 = 0; q2 < n; ++q2)
            for (int differ = 0; differ < 2; ++differ)
                for (int j = 1; j <= 2; ++j)
                    m.add_state(a.states[q1] + "|" + a.states[q2] + "|" +
                                std::to_string(differ) + "|" + std::to_string(j));
    m.initial = id_of(a.initial, a.initial, 0, 1);

    for (StateId q1 = 0; q1 < n; ++q1)
        for (StateId q2 = 0; q2 < n; ++q2)
            for (int differ = 0; differ < 2; ++differ)
                for (int j = 1; j <= 2; ++j) {
                    const int jj = (j == 1 && a.acceptance.buchi_accepts(q1)) ? 2
                                   : (j == 2 && a.acceptance.buchi_accepts(q2)) ? 1
                                                                                : j;
                    for (size_t i1 = 0; i1 < a.transitions.size(); ++i1) {
                        const Transition& t1 = a.transitions[i1];
                        if (t1.source != q1) continue;
                        for (size_t i2 = 0; i2 < a.transitions.size(); ++i2) {
                            const Transition& t2 = a.transitions[i2];
                            if (t2.source != q2 || t2.letter != t1.letter) continue;
                            const int d2 = (differ || t1.target != t2.target ||
                                            t1.deltas != t2.deltas)
                                               ? 1
                                               : 0;
                            Transition nt;
                            nt.source = id_of(q1, q2, differ, j);
                            nt.letter = t1.letter;
                            nt.guards = t1.guards;
                            nt.guards.insert(nt.guards.end(), t2.guards.begin(), t2.guards.end());
                            nt.deltas = t1.deltas;
                            nt.deltas.insert(nt.deltas.end(), t2.deltas.begin(), t2.deltas.end());
                            nt.target = id_of(t1.target, t2.target, d2, jj);
                            m.transitions.push_back(std::move(nt));
                            out.origin.emplace_back(static_cast<int>(i1), static_cast<int>(i2));
                        }
                    }
                }

    std::vector<StateId> accepting;
    for (StateId q1 : a.acceptance.buchi)
        for (StateId q2 = 0; q2 < n; ++q2) accepting.push_back(id_of(q1, q2, 1, 1));
    m.acceptance = Acceptance::make_buchi(std::move(accepting));
    return out;
}

}  // namespace

LintResult unambiguity_lint(const CounterMachine& machine, int word_bound, int run_bound,
                            std::uint64_t node_budget) {
    if (machine.acceptance.kind != Acceptance::Kind::Buchi)
        throw PreconditionError("unambiguity_lint: Buchi input required");
    LintResult res;

    // Accepting-cycle search on the capped self-product; the found pattern is
    // then verified under the true semantics, so a reported violation is
    // always a genuine pair of distinct accepting runs.
    AmbiguityProduct prod = ambiguity_product(machine);
    CappedWitness w;
    try {
        w = capped_buchi_nonempty(
            capped_graph(prod.machine, static_cast<Counter>(run_bound), std::nullopt,
                         node_budget));
    } catch (const BudgetExceededError&) {
        return res;  // bounded check only: out of budget means nothing found
    }
    if (!w.non_empty) return res;
    if (static_cast<int>(w.spoke.size()) > word_bound ||
        static_cast<int>(w.cycle.size()) > word_bound)
        return res;

    LassoWord word;
    LassoPattern p1, p2;
    p1.looping_point = p2.looping_point = static_cast<int>(w.spoke.size());
    auto append = [&](const std::vector<int>& part, bool spoke) {
        for (int idx : part) {
            auto [o1, o2] = prod.origin[static_cast<size_t>(idx)];
            p1.transitions.push_back(o1);
            p2.transitions.push_back(o2);
            SymbolId letter = prod.machine.transitions[static_cast<size_t>(idx)].letter;
            (spoke ? word.u : word.v).push_back(letter);
        }
    };
    append(w.spoke, true);
    append(w.cycle, false);

    const size_t horizon = p1.transitions.size() * 3 + 3;
    RunPrefix r1, r2;
    try {
        r1 = replay_on_machine(machine, p1, horizon);
        r2 = replay_on_machine(machine, p2, horizon);
    } catch (const PreconditionError&) {
        return res;  // capped witness unsound here (testable counters)
    }
    if (r1.configs == r2.configs) return res;
    res.violation = true;
    res.word = std::move(word);
    res.run_a = std::move(r1);
    res.run_b = std::move(r2);
    return res;
}

}  // namespace bca
