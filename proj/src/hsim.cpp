#include "bca/hsim.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace bca {

namespace {

void require_fresh_letters(const std::vector<std::string>& sigma) {
    for (const std::string& s : sigma)
        if (s == "A" || s == "B" || s == "0")
            throw PreconditionError("the letters A, B, 0 must not occur in the base alphabet");
    if (sigma.empty()) throw PreconditionError("empty base alphabet");
}

std::vector<std::string> gamma_alphabet(const std::vector<std::string>& sigma) {
    require_fresh_letters(sigma);
    std::vector<std::string> gamma = sigma;
    gamma.push_back("A");
    gamma.push_back("B");
    gamma.push_back("0");
    return gamma;
}

bool in_sigma(const std::vector<std::string>& sigma, const std::string& s) {
    return std::find(sigma.begin(), sigma.end(), s) != sigma.end();
}

}  // namespace

HCodePrefix h_encode_prefix(const std::vector<std::string>& x,
                            const std::vector<std::string>& sigma, int segments) {
    require_fresh_letters(sigma);
    if (segments < 0 || segments > static_cast<int>(x.size()))
        throw PreconditionError("h_encode_prefix: segments out of range");
    HCodePrefix out;
    for (int i = 1; i <= segments; ++i) {
        const std::string& letter = x[static_cast<size_t>(i) - 1];
        if (!in_sigma(sigma, letter))
            throw PreconditionError("h_encode_prefix: letter outside the base alphabet: " + letter);
        out.source.push_back(letter);
        out.boundaries.push_back(out.word.size());
        out.word.push_back(i % 2 == 1 ? "A" : "B");
        for (int z = 0; z < i; ++z) out.word.push_back("0");
        out.word.push_back(letter);
    }
    return out;
}

ShapeReport classify_shape(const std::vector<std::string>& y,
                           const std::vector<std::string>& sigma) {
    require_fresh_letters(sigma);
    ShapeReport rep;
    rep.matches_R = true;

    enum class At { Sep, FirstZero, ZeroOrLetter };
    At at = At::Sep;
    int segment = 0;  // 1-based once a separator is read
    Counter run = 0;
    for (const std::string& s : y) {
        const bool is_sigma = in_sigma(sigma, s);
        if (!is_sigma && s != "A" && s != "B" && s != "0") {
            rep.matches_R = false;
            break;
        }
        switch (at) {
            case At::Sep: {
                const std::string expected = (segment % 2 == 0) ? "A" : "B";
                if (s != expected) {
                    rep.matches_R = false;
                    break;
                }
                ++segment;
                run = 0;
                at = At::FirstZero;
                break;
            }
            case At::FirstZero:
                if (s != "0") {
                    rep.matches_R = false;
                    break;
                }
                run = 1;
                at = At::ZeroOrLetter;
                break;
            case At::ZeroOrLetter:
                if (s == "0") {
                    run = checked_add(run, 1);
                } else if (is_sigma) {
                    rep.zero_runs.push_back(run);
                    at = At::Sep;
                } else {
                    rep.matches_R = false;
                }
                break;
        }
        if (!rep.matches_R) break;
    }

    for (size_t i = 0; i < rep.zero_runs.size(); ++i)
        if (rep.zero_runs[i] != i + 1) {
            rep.i0 = static_cast<int>(i) + 1;
            break;
        }
    return rep;
}

namespace {

// Attribution of a single 0-letter inside a segment: what the draining pair
// does (decrement first, decrement second, or the single idle zero) and which
// fill counter takes the increment.
enum class DrainAct { D1, D2, Idle };
enum class FillAct { F1, F2 };

struct ZeroEdge {
    DrainAct drain;
    FillAct fill;
    bool to_zone_b;   // target zone when staying in the zero run
    bool to_await;    // the idle zero moves to AwaitLetter
};

// Zone tables realizing fill-first-count = drain-first-count + pending delta.
std::vector<ZeroEdge> zero_edges(BControl::Pend pend, bool zone_b) {
    using P = BControl::Pend;
    switch (pend) {
        case P::Init:
            if (!zone_b) return {{DrainAct::Idle, FillAct::F2, false, true}};
            return {};
        case P::DeltaZero:
            if (!zone_b)
                return {{DrainAct::D1, FillAct::F1, false, false},
                        {DrainAct::D2, FillAct::F2, true, false},
                        {DrainAct::Idle, FillAct::F2, false, true}};
            return {{DrainAct::D2, FillAct::F2, true, false},
                    {DrainAct::Idle, FillAct::F2, false, true}};
        case P::DeltaPlus:
            if (!zone_b)
                return {{DrainAct::D1, FillAct::F1, false, false},
                        {DrainAct::D2, FillAct::F1, true, false},
                        {DrainAct::Idle, FillAct::F1, false, true}};
            return {{DrainAct::D2, FillAct::F2, true, false},
                    {DrainAct::Idle, FillAct::F2, false, true}};
        case P::DeltaMinus:
            if (!zone_b)
                return {{DrainAct::D1, FillAct::F1, false, false},
                        {DrainAct::D1, FillAct::F2, true, false}};
            return {{DrainAct::D2, FillAct::F2, true, false},
                    {DrainAct::Idle, FillAct::F2, false, true}};
    }
    return {};
}

std::vector<int> zero_deltas4(bool odd_segment, DrainAct d, FillAct f) {
    // Odd segments drain (C3,C4) and fill (C1,C2); even segments swap roles.
    const int drain_first = odd_segment ? 2 : 0;
    const int drain_second = odd_segment ? 3 : 1;
    const int fill_first = odd_segment ? 0 : 2;
    const int fill_second = odd_segment ? 1 : 3;
    std::vector<int> deltas(4, 0);
    if (d == DrainAct::D1) deltas[drain_first] = -1;
    if (d == DrainAct::D2) deltas[drain_second] = -1;
    deltas[f == FillAct::F1 ? fill_first : fill_second] = 1;
    return deltas;
}

std::string pend_tag(BControl::Pend p) {
    switch (p) {
        case BControl::Pend::Init: return "init";
        case BControl::Pend::DeltaMinus: return "dm1";
        case BControl::Pend::DeltaZero: return "d0";
        case BControl::Pend::DeltaPlus: return "dp1";
    }
    return "?";
}

std::string control_name(const CounterMachine& a, const BControl& c) {
    const std::string par = c.odd_segment ? "A" : "B";
    const std::string q = a.states[c.a_state];
    switch (c.phase) {
        case BControl::Phase::ExpectSep:
            return "exp" + par + "_" + q + "_" + pend_tag(c.pend);
        case BControl::Phase::ZeroRun:
            return "run" + par + "_" + q + "_" + pend_tag(c.pend) + "_" +
                   (c.zone_b ? "zb" : "za") + (c.f1_seen ? "1" : "0");
        case BControl::Phase::AwaitLetter:
            return "wait" + par + "_" + q + (c.f1_seen ? "1" : "0");
    }
    return "?";
}

using ControlKey = std::tuple<int, bool, StateId, int, bool, bool>;

ControlKey key_of(const BControl& c) {
    return {static_cast<int>(c.phase), c.odd_segment, c.a_state,
            static_cast<int>(c.pend), c.zone_b, c.f1_seen};
}

BControl::Pend pend_of_delta(int d) {
    if (d < 0) return BControl::Pend::DeltaMinus;
    if (d > 0) return BControl::Pend::DeltaPlus;
    return BControl::Pend::DeltaZero;
}

}  // namespace

BConstruction build_b_construction(const CounterMachine& a) {
    if (a.counter_count() != 1)
        throw PreconditionError("build_B: the simulated automaton must have one counter");
    if (a.acceptance.kind != Acceptance::Kind::Buchi)
        throw PreconditionError("build_B: the simulated automaton must be Buchi");
    if (a.copy_capable) throw PreconditionError("build_B: copy transitions unsupported");

    BConstruction out;
    out.sigma = a.alphabet;
    CounterMachine& m = out.machine;
    m.name = a.name + "_B";
    m.alphabet = gamma_alphabet(a.alphabet);
    m.counter_kinds.assign(4, CounterKind::Blind);

    const SymbolId sym_A = static_cast<SymbolId>(a.alphabet.size());
    const SymbolId sym_B = sym_A + 1;
    const SymbolId sym_0 = sym_A + 2;

    std::map<ControlKey, StateId> interned;
    std::deque<StateId> queue;
    auto intern = [&](const BControl& c) {
        auto [it, fresh] = interned.try_emplace(key_of(c), 0);
        if (fresh) {
            it->second = m.add_state(control_name(a, c));
            out.control.push_back(c);
            queue.push_back(it->second);
        }
        return it->second;
    };

    BControl init;
    init.phase = BControl::Phase::ExpectSep;
    init.odd_segment = true;
    init.a_state = a.initial;
    init.pend = BControl::Pend::Init;
    m.initial = intern(init);

    auto emit = [&](StateId src, SymbolId letter, std::vector<int> deltas, StateId dst,
                    int a_transition) {
        Transition t;
        t.source = src;
        t.letter = letter;
        t.guards = m.any_guards();
        t.deltas = std::move(deltas);
        t.target = dst;
        m.transitions.push_back(std::move(t));
        out.a_transition_of.push_back(a_transition);
    };

    while (!queue.empty()) {
        const StateId sid = queue.front();
        queue.pop_front();
        const BControl c = out.control[static_cast<size_t>(sid)];
        switch (c.phase) {
            case BControl::Phase::ExpectSep: {
                BControl next = c;
                next.phase = BControl::Phase::ZeroRun;
                next.zone_b = false;
                next.f1_seen = false;
                emit(sid, c.odd_segment ? sym_A : sym_B, std::vector<int>(4, 0), intern(next), -1);
                break;
            }
            case BControl::Phase::ZeroRun: {
                for (const ZeroEdge& e : zero_edges(c.pend, c.zone_b)) {
                    BControl next = c;
                    next.f1_seen = c.f1_seen || e.fill == FillAct::F1;
                    if (e.to_await) {
                        next.phase = BControl::Phase::AwaitLetter;
                        next.zone_b = false;
                        next.pend = BControl::Pend::Init;  // consumed by the zero run
                    } else {
                        next.zone_b = e.to_zone_b;
                    }
                    emit(sid, sym_0, zero_deltas4(c.odd_segment, e.drain, e.fill), intern(next), -1);
                }
                break;
            }
            case BControl::Phase::AwaitLetter: {
                const bool u_empty = !c.f1_seen;
                for (size_t ti = 0; ti < a.transitions.size(); ++ti) {
                    const Transition& t = a.transitions[ti];
                    if (t.source != c.a_state) continue;
                    if (u_empty) {
                        if (t.guards[0] == Guard::Positive || t.deltas[0] < 0) continue;
                    } else {
                        if (t.guards[0] == Guard::Zero) continue;
                    }
                    BControl next;
                    next.phase = BControl::Phase::ExpectSep;
                    next.odd_segment = !c.odd_segment;
                    next.a_state = t.target;
                    next.pend = pend_of_delta(t.deltas[0]);
                    emit(sid, t.letter, std::vector<int>(4, 0), intern(next),
                         static_cast<int>(ti));
                }
                break;
            }
        }
    }

    std::vector<StateId> accepting;
    for (StateId s = 0; s < m.state_count(); ++s) {
        const BControl& c = out.control[static_cast<size_t>(s)];
        if (c.phase == BControl::Phase::ExpectSep && a.acceptance.buchi_accepts(c.a_state))
            accepting.push_back(s);
    }
    m.acceptance = Acceptance::make_buchi(std::move(accepting));
    return out;
}

CounterMachine build_B(const CounterMachine& a) { return build_b_construction(a).machine; }

namespace {

int find_b_transition(const CounterMachine& m, StateId src, SymbolId letter,
                      const std::vector<int>& deltas) {
    for (size_t i = 0; i < m.transitions.size(); ++i) {
        const Transition& t = m.transitions[i];
        if (t.source == src && t.letter == letter && t.deltas == deltas)
            return static_cast<int>(i);
    }
    throw PreconditionError("lift_run: expected simulation transition is missing");
}

}  // namespace

RunPrefix lift_run(const BConstruction& b, const CounterMachine& a, const RunPrefix& run_a) {
    if (!check_run(a, run_a)) throw PreconditionError("lift_run: invalid run of the base automaton");
    if (!run_a.configs.empty() &&
        (run_a.configs.front().state != a.initial || run_a.configs.front().counters[0] != 0))
        throw PreconditionError("lift_run: run must start at the initial configuration");

    const CounterMachine& m = b.machine;
    const SymbolId sym_A = static_cast<SymbolId>(b.sigma.size());
    const SymbolId sym_B = sym_A + 1;
    const SymbolId sym_0 = sym_A + 2;

    RunPrefix out;
    out.configs.push_back(m.initial_configuration());

    auto step = [&](int trans_idx) {
        const Transition& t = m.transitions[static_cast<size_t>(trans_idx)];
        auto next = apply_transition(m, t, out.configs.back());
        if (!next) throw PreconditionError("lift_run: simulation step blocked");
        out.transitions.push_back(trans_idx);
        out.configs.push_back(std::move(*next));
    };

    const int n = static_cast<int>(run_a.length());
    for (int i = 1; i <= n; ++i) {
        const bool odd = (i % 2 == 1);
        step(find_b_transition(m, out.configs.back().state, odd ? sym_A : sym_B,
                               std::vector<int>(4, 0)));

        std::vector<std::pair<DrainAct, FillAct>> schedule;
        if (i == 1) {
            schedule = {{DrainAct::Idle, FillAct::F2}};
        } else {
            const Counter k = run_a.configs[static_cast<size_t>(i) - 2].counters[0];
            const Counter m_drain = static_cast<Counter>(i - 1) - k;
            const Counter u_prev = run_a.configs[static_cast<size_t>(i) - 1].counters[0];
            const int pending = static_cast<int>(static_cast<long long>(u_prev) -
                                                 static_cast<long long>(k));
            if (pending == 0) {
                for (Counter j = 0; j < k; ++j) schedule.emplace_back(DrainAct::D1, FillAct::F1);
                for (Counter j = 0; j < m_drain; ++j) schedule.emplace_back(DrainAct::D2, FillAct::F2);
                schedule.emplace_back(DrainAct::Idle, FillAct::F2);
            } else if (pending == 1) {
                for (Counter j = 0; j < k; ++j) schedule.emplace_back(DrainAct::D1, FillAct::F1);
                if (m_drain == 0) {
                    schedule.emplace_back(DrainAct::Idle, FillAct::F1);
                } else {
                    schedule.emplace_back(DrainAct::D2, FillAct::F1);
                    for (Counter j = 1; j < m_drain; ++j)
                        schedule.emplace_back(DrainAct::D2, FillAct::F2);
                    schedule.emplace_back(DrainAct::Idle, FillAct::F2);
                }
            } else if (pending == -1) {
                for (Counter j = 1; j < k; ++j) schedule.emplace_back(DrainAct::D1, FillAct::F1);
                schedule.emplace_back(DrainAct::D1, FillAct::F2);
                for (Counter j = 0; j < m_drain; ++j) schedule.emplace_back(DrainAct::D2, FillAct::F2);
                schedule.emplace_back(DrainAct::Idle, FillAct::F2);
            } else {
                throw PreconditionError("lift_run: base run changes the counter by more than one");
            }
        }
        for (auto [d, f] : schedule)
            step(find_b_transition(m, out.configs.back().state, sym_0, zero_deltas4(odd, d, f)));

        // x(i): the transition tagged with the base run's i-th transition.
        const int a_idx = run_a.transitions[static_cast<size_t>(i) - 1];
        bool stepped = false;
        for (size_t ti = 0; ti < m.transitions.size() && !stepped; ++ti) {
            if (m.transitions[ti].source != out.configs.back().state) continue;
            if (b.a_transition_of[ti] != a_idx) continue;
            step(static_cast<int>(ti));
            stepped = true;
        }
        if (!stepped) throw PreconditionError("lift_run: base transition not liftable");
    }
    return out;
}

RunPrefix project_run(const BConstruction& b, const CounterMachine& a, const RunPrefix& run_b) {
    const CounterMachine& m = b.machine;
    if (!check_run(m, run_b)) throw PreconditionError("project_run: invalid simulation run");
    if (run_b.configs.front().state != m.initial ||
        run_b.configs.front() != m.initial_configuration())
        throw PreconditionError("project_run: run must start at the initial configuration");

    const SymbolId sym_0 = static_cast<SymbolId>(b.sigma.size()) + 2;

    RunPrefix out;
    out.configs.push_back(a.initial_configuration());

    int segment = 0;
    Counter zeros = 0;
    for (size_t i = 0; i < run_b.transitions.size(); ++i) {
        const int ti = run_b.transitions[i];
        const Transition& t = m.transitions[static_cast<size_t>(ti)];
        const BControl& src = b.control[static_cast<size_t>(t.source)];
        if (src.phase == BControl::Phase::ExpectSep) {
            ++segment;
            zeros = 0;
        } else if (t.letter == sym_0) {
            ++zeros;
        }
        const int a_idx = b.a_transition_of[static_cast<size_t>(ti)];
        if (a_idx >= 0) {
            if (zeros != static_cast<Counter>(segment))
                throw PreconditionError("project_run: run leaves the h-shape");
            const Transition& ta = a.transitions[static_cast<size_t>(a_idx)];
            auto next = apply_transition(a, ta, out.configs.back());
            if (!next || ta.source != out.configs.back().state)
                throw PreconditionError("project_run: extracted base run is inconsistent");
            out.transitions.push_back(a_idx);
            out.configs.push_back(std::move(*next));
        }
    }
    if (!check_run(a, out)) throw PreconditionError("project_run: extracted base run is invalid");
    return out;
}

CounterMachine build_L(const std::vector<std::string>& sigma) {
    CounterMachine m;
    m.name = "L";
    m.alphabet = gamma_alphabet(sigma);
    m.counter_kinds = {CounterKind::Blind};

    const SymbolId sym_A = static_cast<SymbolId>(sigma.size());
    const SymbolId sym_B = sym_A + 1;
    const SymbolId sym_0 = sym_A + 2;
    const int nsig = static_cast<int>(sigma.size());

    const StateId u0 = m.add_state("u0");
    const StateId sink = m.add_state("sink");
    const StateId l1 = m.add_state("l1");
    const StateId l2 = m.add_state("l2");
    const StateId l3 = m.add_state("l3");
    const StateId g0 = m.add_state("g0");
    const StateId pb1 = m.add_state("pb1"), pb2 = m.add_state("pb2"), pb3 = m.add_state("pb3"),
                  pb4 = m.add_state("pb4"), pb5 = m.add_state("pb5");
    const StateId pa1 = m.add_state("pa1"), pa2 = m.add_state("pa2"), pa3 = m.add_state("pa3"),
                  pa4 = m.add_state("pa4"), pa5 = m.add_state("pa5");
    m.initial = u0;

    auto add = [&m](StateId src, SymbolId letter, int delta, StateId dst) {
        Transition t;
        t.source = src;
        t.letter = letter;
        t.guards = m.any_guards();
        t.deltas = {delta};
        t.target = dst;
        m.transitions.push_back(std::move(t));
    };
    auto for_sigma = [&](auto&& f) {
        for (SymbolId s = 0; s < nsig; ++s) f(s);
    };
    auto all_letters = [&](auto&& f) {
        for (SymbolId s = 0; s < m.symbol_count(); ++s) f(s);
    };

    // Wrong-initial-segment component: any deviation from A 0 sigma B within
    // the first four letters goes to the accepting sink.
    auto emit_l1 = [&](StateId here, int position) {
        // position: how many letters of the pattern were already matched
        switch (position) {
            case 0:
                add(here, sym_A, 0, l1);
                add(here, sym_B, 0, sink);
                add(here, sym_0, 0, sink);
                for_sigma([&](SymbolId s) { add(here, s, 0, sink); });
                break;
            case 1:
                add(here, sym_0, 0, l2);
                add(here, sym_A, 0, sink);
                add(here, sym_B, 0, sink);
                for_sigma([&](SymbolId s) { add(here, s, 0, sink); });
                break;
            case 2:
                for_sigma([&](SymbolId s) { add(here, s, 0, l3); });
                add(here, sym_A, 0, sink);
                add(here, sym_B, 0, sink);
                add(here, sym_0, 0, sink);
                break;
            case 3:
                // a fourth letter B completes the pattern: this branch dies
                add(here, sym_A, 0, sink);
                add(here, sym_0, 0, sink);
                for_sigma([&](SymbolId s) { add(here, s, 0, sink); });
                break;
        }
    };
    // Segment-witness component: guess sep 0^n a sep' 0^m b and verify m <= n
    // with the blind counter.
    auto emit_l2_guess = [&](StateId here) {
        add(here, sym_B, 0, pb1);
        add(here, sym_A, 0, pa1);
    };

    emit_l1(u0, 0);
    emit_l2_guess(u0);
    all_letters([&](SymbolId s) { add(u0, s, 0, g0); });  // skim before the guess

    emit_l1(l1, 1);
    emit_l1(l2, 2);
    emit_l1(l3, 3);

    all_letters([&](SymbolId s) { add(g0, s, 0, g0); });
    emit_l2_guess(g0);

    add(pb1, sym_0, +1, pb2);
    add(pb2, sym_0, +1, pb2);
    for_sigma([&](SymbolId s) { add(pb2, s, 0, pb3); });
    add(pb3, sym_A, 0, pb4);
    add(pb4, sym_0, -1, pb5);
    add(pb5, sym_0, -1, pb5);
    for_sigma([&](SymbolId s) { add(pb5, s, 0, sink); });

    add(pa1, sym_0, +1, pa2);
    add(pa2, sym_0, +1, pa2);
    for_sigma([&](SymbolId s) { add(pa2, s, 0, pa3); });
    add(pa3, sym_B, 0, pa4);
    add(pa4, sym_0, -1, pa5);
    add(pa5, sym_0, -1, pa5);
    for_sigma([&](SymbolId s) { add(pa5, s, 0, sink); });

    all_letters([&](SymbolId s) { add(sink, s, 0, sink); });

    m.acceptance = Acceptance::make_buchi({sink});
    return m;
}

CounterMachine build_PA(const CounterMachine& a) {
    const BConstruction bc = build_b_construction(a);
    const CounterMachine& bm = bc.machine;
    const CounterMachine lm = build_L(a.alphabet);

    CounterMachine m;
    m.name = a.name + "_PA";
    m.alphabet = bm.alphabet;  // same gamma order as build_L's
    m.counter_kinds.assign(4, CounterKind::Blind);

    const StateId u0 = m.add_state("pa_init");
    m.initial = u0;
    const StateId b_off = m.state_count();
    for (const std::string& s : bm.states) m.add_state("b_" + s);
    const StateId l_off = m.state_count();
    for (const std::string& s : lm.states) m.add_state("l_" + s);

    auto push_b = [&](const Transition& t, StateId source) {
        Transition nt = t;
        nt.source = source;
        nt.target = t.target + b_off;
        m.transitions.push_back(std::move(nt));
    };
    auto push_l = [&](const Transition& t, StateId source) {
        Transition nt;
        nt.source = source;
        nt.letter = t.letter;
        nt.guards = m.any_guards();
        nt.deltas = {t.deltas[0], 0, 0, 0};  // the L counter rides counter 1
        nt.target = t.target + l_off;
        m.transitions.push_back(std::move(nt));
    };

    for (const Transition& t : bm.transitions)
        if (t.source == bm.initial) push_b(t, u0);
    for (const Transition& t : lm.transitions)
        if (t.source == lm.initial) push_l(t, u0);
    for (const Transition& t : bm.transitions) push_b(t, t.source + b_off);
    for (const Transition& t : lm.transitions) push_l(t, t.source + l_off);

    std::vector<StateId> accepting;
    for (StateId q : bm.acceptance.buchi) accepting.push_back(q + b_off);
    for (StateId q : lm.acceptance.buchi) accepting.push_back(q + l_off);
    m.acceptance = Acceptance::make_buchi(std::move(accepting));
    return m;
}

CounterMachine shuffle(const CounterMachine& a, const CounterMachine& b) {
    if (a.alphabet != b.alphabet) throw PreconditionError("shuffle: alphabets differ");
    if (a.acceptance.kind != Acceptance::Kind::Buchi ||
        b.acceptance.kind != Acceptance::Kind::Buchi)
        throw PreconditionError("shuffle: Buchi acceptance required on both operands");
    if (a.copy_capable || b.copy_capable)
        throw PreconditionError("shuffle: copy transitions unsupported");

    CounterMachine m;
    m.name = "sh_" + a.name + "_" + b.name;
    m.alphabet = a.alphabet;
    m.counter_kinds = a.counter_kinds;
    m.counter_kinds.insert(m.counter_kinds.end(), b.counter_kinds.begin(),
                           b.counter_kinds.end());
    const int ka = a.counter_count(), kb = b.counter_count();

    // State (qa, qb, turn, j): turn 0 feeds `a` (odd input positions), turn 1
    // feeds `b`; j is the pending obligation of the two-flag Buchi product.
    auto id_of = [&](StateId qa, StateId qb, int turn, int j) {
        return static_cast<StateId>(((qa * b.state_count() + qb) * 2 + turn) * 2 + (j - 1));
    };
    for (StateId qa = 0; qa < a.state_count(); ++qa)
        for (StateId qb = 0; qb < b.state_count(); ++qb)
            for (int turn = 0; turn < 2; ++turn)
                for (int j = 1; j <= 2; ++j)
                    m.add_state(a.states[qa] + "." + b.states[qb] + ".t" + std::to_string(turn) +
                                ".j" + std::to_string(j));
    m.initial = id_of(a.initial, b.initial, 0, 1);

    auto next_j = [&](StateId qa, StateId qb, int j) {
        if (j == 1 && a.acceptance.buchi_accepts(qa)) return 2;
        if (j == 2 && b.acceptance.buchi_accepts(qb)) return 1;
        return j;
    };

    for (StateId qa = 0; qa < a.state_count(); ++qa)
        for (StateId qb = 0; qb < b.state_count(); ++qb)
            for (int j = 1; j <= 2; ++j) {
                for (const Transition& t : a.transitions) {
                    if (t.source != qa) continue;
                    Transition nt;
                    nt.source = id_of(qa, qb, 0, j);
                    nt.letter = t.letter;
                    nt.guards = t.guards;
                    nt.guards.insert(nt.guards.end(), static_cast<size_t>(kb), Guard::Any);
                    nt.deltas = t.deltas;
                    nt.deltas.insert(nt.deltas.end(), static_cast<size_t>(kb), 0);
                    nt.target = id_of(t.target, qb, 1, next_j(qa, qb, j));
                    m.transitions.push_back(std::move(nt));
                }
                for (const Transition& t : b.transitions) {
                    if (t.source != qb) continue;
                    Transition nt;
                    nt.source = id_of(qa, qb, 1, j);
                    nt.letter = t.letter;
                    nt.guards = std::vector<Guard>(static_cast<size_t>(ka), Guard::Any);
                    nt.guards.insert(nt.guards.end(), t.guards.begin(), t.guards.end());
                    nt.deltas = std::vector<int>(static_cast<size_t>(ka), 0);
                    nt.deltas.insert(nt.deltas.end(), t.deltas.begin(), t.deltas.end());
                    nt.target = id_of(qa, t.target, 0, next_j(qa, qb, j));
                    m.transitions.push_back(std::move(nt));
                }
            }

    std::vector<StateId> accepting;
    for (StateId qa = 0; qa < a.state_count(); ++qa)
        for (StateId qb = 0; qb < b.state_count(); ++qb)
            if (a.acceptance.buchi_accepts(qa))
                for (int turn = 0; turn < 2; ++turn)
                    accepting.push_back(id_of(qa, qb, turn, 1));
    m.acceptance = Acceptance::make_buchi(std::move(accepting));
    return m;
}

}  // namespace bca
