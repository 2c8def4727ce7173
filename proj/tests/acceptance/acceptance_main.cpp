// Acceptance suite: one self-contained check per criterion, one PASS/FAIL
// line each. Run through ctest or directly; exits non-zero on any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bca/clubs.hpp"
#include "bca/determinize.hpp"
#include "bca/emptiness.hpp"
#include "bca/format.hpp"
#include "bca/hsim.hpp"
#include "bca/machine.hpp"
#include "bca/oracles.hpp"
#include "bca/pathmuller.hpp"
#include "bca/semantics.hpp"
#include "bca/sigma11.hpp"
#include "sample_machines.hpp"

using namespace bca;

namespace {

struct Criterion {
    int number;
    std::string description;
    std::function<std::string()> run;  // returns stats; throws on failure
};

struct Failure : std::runtime_error {
    explicit Failure(const std::string& what) : std::runtime_error(what) {}
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Failure(what);
}

std::vector<std::vector<SymbolId>> words_up_to(int letters, int max_len, int min_len = 0) {
    std::vector<std::vector<SymbolId>> all{{}};
    size_t begin = 0;
    for (int l = 0; l < max_len; ++l) {
        size_t end = all.size();
        for (size_t i = begin; i < end; ++i)
            for (SymbolId a = 0; a < letters; ++a) {
                auto w = all[i];
                w.push_back(a);
                all.push_back(std::move(w));
            }
        begin = end;
    }
    std::vector<std::vector<SymbolId>> out;
    for (auto& w : all)
        if (static_cast<int>(w.size()) >= min_len) out.push_back(std::move(w));
    return out;
}

std::vector<SymbolId> to_word(const CounterMachine& m, const std::vector<std::string>& letters) {
    std::vector<SymbolId> out;
    for (const auto& s : letters) out.push_back(m.require_symbol(s));
    return out;
}

// ---------------------------------------------------------------- criterion 1

CounterMachine enumerated_machine(std::uint64_t index) {
    // Deterministically enumerated family: a seeded draw over machines with
    // <= 3 states, <= 2 blind counters, <= 2 letters, unit deltas, and at
    // most two transitions per (state, letter) pair.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (index * 0xbf58476d1ce4e5b9ull));
    std::uniform_int_distribution<int> dstates(1, 3), dcounters(1, 2), dletters(1, 2);
    const int ns = dstates(rng), k = dcounters(rng), nl = dletters(rng);
    CounterMachine m;
    m.name = "enum" + std::to_string(index);
    for (int i = 0; i < nl; ++i) m.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    m.counter_kinds.assign(static_cast<size_t>(k), CounterKind::Blind);
    for (int i = 0; i < ns; ++i) m.add_state("s" + std::to_string(i));
    m.initial = 0;
    std::uniform_int_distribution<int> dcount(0, 2), dstate(0, ns - 1), ddelta(-1, 1);
    for (int q = 0; q < ns; ++q)
        for (int a = 0; a < nl; ++a) {
            const int fan = dcount(rng);
            for (int t = 0; t < fan; ++t) {
                Transition tr;
                tr.source = q;
                tr.letter = a;
                tr.guards.assign(static_cast<size_t>(k), Guard::Any);
                for (int c = 0; c < k; ++c) tr.deltas.push_back(ddelta(rng));
                tr.target = dstate(rng);
                m.transitions.push_back(std::move(tr));
            }
        }
    std::vector<StateId> acc;
    for (int i = 0; i < ns; ++i)
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) acc.push_back(i);
    m.acceptance = Acceptance::make_buchi(std::move(acc));
    return m;
}

std::string criterion1() {
    std::vector<CounterMachine> machines;
    // exhaustive slice: every one-state, one-counter, one-letter machine
    for (int mask = 0; mask < 8; ++mask)
        for (int acc = 0; acc < 2; ++acc) {
            CounterMachine m;
            m.name = "x" + std::to_string(mask) + std::to_string(acc);
            m.alphabet = {"a"};
            m.counter_kinds = {CounterKind::Blind};
            m.add_state("s0");
            m.initial = 0;
            for (int d = -1; d <= 1; ++d)
                if ((mask >> (d + 1)) & 1) {
                    Transition t;
                    t.source = 0;
                    t.letter = 0;
                    t.guards = {Guard::Any};
                    t.deltas = {d};
                    t.target = 0;
                    m.transitions.push_back(std::move(t));
                }
            m.acceptance = Acceptance::make_buchi(acc ? std::vector<StateId>{0}
                                                      : std::vector<StateId>{});
            machines.push_back(std::move(m));
        }
    for (std::uint64_t i = 0; machines.size() < 10'500; ++i)
        machines.push_back(enumerated_machine(i));

    int nonempty = 0, certified = 0, bounded = 0;
    for (const auto& m : machines) {
        auto lasso = find_accepting_lasso(m, 12, 4'000'000);
        auto oracle = capped_buchi_nonempty(capped_graph(m, 12));
        switch (lasso.verdict) {
            case EmptinessVerdict::NonEmpty: {
                ++nonempty;
                require(check_lasso_pattern(m, lasso.witness()).ok,
                        m.name + ": witness fails the pattern conditions");
                require(replay_pattern(m, lasso.witness(), 3),
                        m.name + ": witness does not replay");
                break;
            }
            case EmptinessVerdict::EmptyCertified:
                ++certified;
                require(!oracle.non_empty, m.name + ": certified empty but the oracle accepts");
                break;
            case EmptinessVerdict::EmptyUpTo:
                ++bounded;
                break;
        }
        if (oracle.non_empty)
            require(lasso.verdict != EmptinessVerdict::EmptyCertified,
                    m.name + ": oracle accepts a certified-empty machine");
    }
    std::ostringstream s;
    s << machines.size() << " machines, " << nonempty << " non-empty, " << certified
      << " certified empty, " << bounded << " bounded empty";
    return s.str();
}

// ------------------------------------------------------------- criteria 2 - 4

std::vector<std::vector<std::string>> letter_words(const std::vector<std::string>& sigma,
                                                   int len) {
    std::vector<std::vector<std::string>> out{{}};
    for (int i = 0; i < len; ++i) {
        std::vector<std::vector<std::string>> next;
        for (auto& w : out)
            for (const auto& s : sigma) {
                auto e = w;
                e.push_back(s);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

std::string criterion2() {
    std::uint64_t runs_checked = 0;
    for (const auto& a : samples::simulation_inputs()) {
        auto bc = build_b_construction(a);
        const auto& b = bc.machine;
        for (const auto& x : letter_words(a.alphabet, 5)) {
            for (int n = 1; n <= 5; ++n) {
                // prefix through x(n) plus the separator opening segment n+1
                auto h = h_encode_prefix(x, a.alphabet, n);
                auto word = h.word;
                word.push_back(n % 2 == 1 ? "B" : "A");
                auto rs = run_prefixes(b, to_word(b, word), b.initial_configuration());
                for (const auto& r : rs.prefixes) {
                    ++runs_checked;
                    const auto& c = r.configs.back().counters;
                    if (n % 2 == 1) {
                        require(c[2] == 0 && c[3] == 0,
                                a.name + ": C3/C4 not drained after an odd boundary");
                        require(c[0] + c[1] == static_cast<Counter>(n),
                                a.name + ": C1+C2 != 2n-1 after an odd boundary");
                    } else {
                        require(c[0] == 0 && c[1] == 0,
                                a.name + ": C1/C2 not drained after an even boundary");
                        require(c[2] + c[3] == static_cast<Counter>(n),
                                a.name + ": C3+C4 != 2n after an even boundary");
                    }
                }
            }
        }
    }
    return std::to_string(runs_checked) + " boundary configurations checked";
}

std::string criterion3() {
    std::uint64_t lifted = 0, projected = 0;
    for (const auto& a : samples::simulation_inputs()) {
        auto bc = build_b_construction(a);
        for (int len = 0; len <= 6; ++len) {
            for (const auto& x : letter_words(a.alphabet, len)) {
                auto runs = run_prefixes(a, to_word(a, x), a.initial_configuration());
                for (const auto& ra : runs.prefixes) {
                    auto rb = lift_run(bc, a, ra);
                    auto back = project_run(bc, a, rb);
                    require(back.configs == ra.configs && back.transitions == ra.transitions,
                            a.name + ": project(lift(r)) differs from r");
                    ++lifted;
                }
                if (len == 0) continue;
                // the converse identity on complete simulation runs
                auto h = h_encode_prefix(x, a.alphabet, len);
                auto bruns =
                    run_prefixes(bc.machine, to_word(bc.machine, h.word),
                                 bc.machine.initial_configuration());
                for (const auto& rb : bruns.prefixes) {
                    auto ra = project_run(bc, a, rb);
                    auto again = lift_run(bc, a, ra);
                    require(again.configs == rb.configs && again.transitions == rb.transitions,
                            a.name + ": lift(project(r)) differs from r");
                    ++projected;
                }
            }
        }
    }
    std::ostringstream s;
    s << lifted << " lifted runs, " << projected << " projected runs";
    return s.str();
}

std::string criterion4() {
    std::uint64_t words = 0;
    for (const auto& a : samples::simulation_inputs()) {
        auto b = build_B(a);
        std::vector<std::vector<Counter>> profiles{{}};
        for (int len = 1; len <= 4; ++len) {
            std::vector<std::vector<Counter>> next;
            for (auto& p : profiles)
                if (static_cast<int>(p.size()) == len - 1)
                    for (Counter n = 1; n <= 4; ++n) {
                        auto e = p;
                        e.push_back(n);
                        next.push_back(std::move(e));
                    }
            for (const auto& profile : next) {
                int i0 = 0;
                for (size_t i = 0; i < profile.size(); ++i)
                    if (profile[i] != i + 1) {
                        i0 = static_cast<int>(i) + 1;
                        break;
                    }
                if (i0 <= 1 || profile[static_cast<size_t>(i0) - 1] < static_cast<Counter>(i0))
                    continue;
                // n_{i0} > i0 with i0 > 1: no run may survive past segment i0
                for (const auto& x : letter_words(a.alphabet, i0)) {
                    std::vector<std::string> word;
                    for (int i = 1; i <= i0; ++i) {
                        word.push_back(i % 2 == 1 ? "A" : "B");
                        for (Counter z = 0; z < profile[static_cast<size_t>(i) - 1]; ++z)
                            word.push_back("0");
                        word.push_back(x[static_cast<size_t>(i) - 1]);
                    }
                    ++words;
                    auto rs = run_prefixes(b, to_word(b, word), b.initial_configuration());
                    require(rs.prefixes.empty(),
                            a.name + ": a run survived past a too-long zero run");
                }
            }
            profiles = std::move(next);
        }
    }
    return std::to_string(words) + " over-long shape words all block";
}

// ---------------------------------------------------------------- criterion 5

std::string criterion5() {
    std::uint64_t checks = 0;
    std::vector<std::string> layer{""};
    for (int n = 0; n <= 8; ++n) {
        std::set<Counter> values;
        for (const auto& v : layer) values.insert(b_value(v));
        require(values.size() == layer.size() && *values.begin() == 0 &&
                    *values.rbegin() == (Counter{1} << n) - 1,
                "b is not a bijection onto 0..2^n-1 at depth " + std::to_string(n));
        for (const auto& v : layer) {
            require(e_value(v) + m_value(n - 1) <= m_value(n), "e(v) + m(n-1) <= m(n) fails");
            ++checks;
            for (const auto& x : layer) {
                if (v == x) continue;
                require((leq_inf(v, x) && v != x) == (e_value(v) < e_value(x)),
                        "strict order/e-value equivalence fails");
                ++checks;
            }
        }
        std::vector<std::string> next;
        for (auto& v : layer)
            for (char d : {'L', 'R'}) next.push_back(v + d);
        layer = std::move(next);
    }
    return std::to_string(checks) + " identity checks through depth 8";
}

// ---------------------------------------------------------------- criterion 6

std::string criterion6() {
    std::vector<FiniteTreeSet> sets{
        make_left_spine(6),  make_right_spine(6), make_full_tree(5), make_empty_tree(6),
        make_tree_set({"", "L", "RL", "LLL", "RRRR"}),
        make_tree_set({"R", "LL", "LR", "RLL", "LLLL"})};
    for (auto& x : sets) x.max_depth = std::max(x.max_depth, 6);

    std::uint64_t runs_checked = 0, chains_checked = 0;
    for (const auto& x : sets) {
        // every exhaustively enumerated complete A1 run over alpha_prefix(x, 4)
        auto m = build_A1();
        auto word = parse_word(m, alpha_prefix(x, 4));
        auto rs = run_prefixes(m, word, m.initial_configuration(), std::nullopt, 80'000'000);
        require(!rs.prefixes.empty(), "no complete runs over the alpha prefix");
        for (const auto& r : rs.prefixes) {
            auto dec = run_to_chain(r);  // validates e(v_n) <= c_n < m(n)
            require(is_correct_chain(dec.chain), "decoded chain is not correct");
            require(dec.chain.nodes.size() == 4, "decoded chain has the wrong length");
            for (size_t n = 0; n < dec.phase_counters.size(); ++n) {
                require(e_value(dec.chain.nodes[n]) <= dec.phase_counters[n],
                        "phase counter below e(v_n)");
                require(dec.phase_counters[n] < m_value(static_cast<int>(n)),
                        "phase counter reaches m(n)");
            }
            ++runs_checked;
        }

        // all correct chains of depth <= 4 with all witnessing hit sets
        std::vector<CorrectChain> chains{CorrectChain{{""}}};
        for (int depth = 0; depth < 4; ++depth) {
            std::vector<CorrectChain> next;
            for (const auto& c : chains) {
                if (static_cast<int>(c.nodes.size()) != depth + 1) continue;
                std::vector<std::string> layer{c.nodes.back() + 'L', c.nodes.back() + 'R'};
                // candidates: all nodes of the next depth that keep the chain correct
                std::vector<std::string> all_next;
                std::vector<std::string> frontier{""};
                for (int i = 0; i <= depth; ++i) {
                    std::vector<std::string> grow;
                    for (auto& v : frontier)
                        for (char d : {'L', 'R'}) grow.push_back(v + d);
                    frontier = std::move(grow);
                }
                for (const auto& v : frontier)
                    if (leq_inf(v, c.nodes.back() + 'R')) {
                        CorrectChain e = c;
                        e.nodes.push_back(v);
                        next.push_back(std::move(e));
                    }
            }
            chains.insert(chains.end(), next.begin(), next.end());
        }
        for (const auto& c : chains) {
            if (c.nodes.size() < 2) continue;
            std::vector<int> candidates;
            for (int n = 0; n + 1 < static_cast<int>(c.nodes.size()); ++n)
                if (x.contains(c.nodes[static_cast<size_t>(n)]) &&
                    leq_inf(c.nodes[static_cast<size_t>(n) + 1],
                            c.nodes[static_cast<size_t>(n)] + 'L'))
                    candidates.push_back(n);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
                std::set<int> hits;
                for (size_t i = 0; i < candidates.size(); ++i)
                    if ((mask >> i) & 1) hits.insert(candidates[i]);
                auto run = chain_to_run(c, hits, x);
                auto dec = run_to_chain(run);
                require(dec.chain.nodes == c.nodes && dec.hits == hits,
                        "run_to_chain does not invert chain_to_run");
                ++chains_checked;
            }
        }
    }
    std::ostringstream s;
    s << runs_checked << " runs decoded, " << chains_checked << " chain/hit round trips";
    return s.str();
}

// ---------------------------------------------------------------- criterion 7

std::string criterion7() {
    std::mt19937_64 rng(0xc1b5);
    int splits = 0, members_checked = 0, unknowns = 0, monotonicity = 0;
    for (int round = 0; round < 120; ++round) {
        CounterMachine m;
        {
            std::uniform_int_distribution<int> dstates(1, 3), dcounters(1, 2), dletters(1, 2);
            const int ns = dstates(rng), k = dcounters(rng), nl = dletters(rng);
            for (int i = 0; i < nl; ++i)
                m.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
            m.counter_kinds.assign(static_cast<size_t>(k), CounterKind::Blind);
            for (int i = 0; i < ns; ++i) m.add_state("s" + std::to_string(i));
            m.initial = 0;
            std::uniform_int_distribution<int> dtrans(1, 5), dstate(0, ns - 1),
                dletter(0, nl - 1), ddelta(-1, 1);
            const int nt = dtrans(rng);
            for (int i = 0; i < nt; ++i) {
                Transition t;
                t.source = dstate(rng);
                t.letter = dletter(rng);
                t.guards.assign(static_cast<size_t>(k), Guard::Any);
                for (int c = 0; c < k; ++c) t.deltas.push_back(ddelta(rng));
                t.target = dstate(rng);
                m.transitions.push_back(std::move(t));
            }
            std::vector<StateId> acc;
            for (int i = 0; i < ns; ++i)
                if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) acc.push_back(i);
            m.acceptance = Acceptance::make_buchi(std::move(acc));
        }
        const int k = m.counter_count();
        std::vector<ClubEntry> gamma;
        for (int c = 0; c < k; ++c)
            gamma.push_back(std::uniform_int_distribution<int>(0, 1)(rng)
                                ? ClubEntry::geq()
                                : ClubEntry::exact(static_cast<Counter>(
                                      std::uniform_int_distribution<int>(0, 2)(rng))));
        Club club{std::uniform_int_distribution<int>(0, m.state_count() - 1)(rng), gamma,
                  static_cast<Counter>(std::uniform_int_distribution<int>(0, 2)(rng))};

        std::vector<CertifiedClub> parts;
        try {
            parts = split_optimal(m, club, 12, 3'000'000);
        } catch (const BudgetExceededError&) {
            continue;
        }
        ++splits;

        // pairwise disjoint and covering on an exhaustive grid
        Counter maxM = club.threshold;
        for (const auto& p : parts) maxM = std::max(maxM, p.club.threshold);
        const Counter limit = maxM + 3;
        std::vector<Counter> point(static_cast<size_t>(k), 0);
        bool more = true;
        while (more) {
            Configuration cfg{club.state, point};
            const bool inside = club_contains(club, cfg);
            int owners = 0;
            for (const auto& p : parts)
                if (club_contains(p.club, cfg)) ++owners;
            require(owners == (inside ? 1 : 0), "split is not a partition of the club");
            more = false;
            for (int i = 0; i < k; ++i) {
                if (point[static_cast<size_t>(i)] + 1 < limit) {
                    ++point[static_cast<size_t>(i)];
                    for (int j = 0; j < i; ++j) point[static_cast<size_t>(j)] = 0;
                    more = true;
                    break;
                }
            }
        }

        for (const auto& p : parts) {
            Cert direct = is_optimal(m, p.club, 12, 3'000'000);
            require(direct != Cert::No, "a split member is certified non-optimal");
            if (p.optimal == Cert::Yes) {
                require(direct == Cert::Yes, "certified member fails its own optimality check");
                ++members_checked;
                if (p.club.dimension() > 0) {
                    // monotonicity spot check: restrictions of optimal clubs stay optimal
                    Club sub = restrict_club(p.club, p.club.threshold + 2);
                    require(is_optimal(m, sub, 12, 3'000'000) == Cert::Yes,
                            "restriction of an optimal club lost its certificate");
                    ++monotonicity;
                }
            } else {
                ++unknowns;
            }
        }
    }
    std::ostringstream s;
    s << splits << " splits, " << members_checked << " certified members, " << unknowns
      << " tri-state members, " << monotonicity << " monotonicity checks";
    return s.str();
}

// ---------------------------------------------------------------- criterion 8

std::string criterion8() {
    int decided = 0, member_words = 0, discards_checked = 0, shadow_checks = 0;
    std::mt19937_64 rng(88);
    for (const auto& m : samples::unambiguous_inputs()) {
        auto det = determinize(m, DeterminizeOptions{.bound = 24});
        require(is_deterministic(det.machine), m.name + ": output is not deterministic");
        const auto& fam = det.family;

        auto us = words_up_to(m.symbol_count(), 4, 0);
        auto vs = words_up_to(m.symbol_count(), 4, 1);
        for (const auto& u : us)
            for (const auto& v : vs) {
                LassoWord w{u, v};
                auto dv = run_deterministic(det.machine, w, 800);
                auto mv = membership_upw(m, w, 32);
                const bool member = mv.verdict == MembershipVerdict::Member;
                if (dv.verdict != RunVerdict::Unknown) {
                    ++decided;
                    require((dv.verdict == RunVerdict::Accept) == member,
                            m.name + ": determinised verdict disagrees with membership");
                }
                if (!member) continue;
                ++member_words;

                // shadow check: replay the accepting run alongside det_step
                RunPrefix run;
                run.configs.push_back(m.initial_configuration());
                DetState s = det_initial_state(m, fam);
                size_t next = 0;
                const auto& pat = mv.witness_transitions;
                const size_t horizon = pat.size() * 3 + 2;
                for (size_t step = 0; step < horizon; ++step) {
                    const Transition& t = m.transitions[static_cast<size_t>(pat[next])];
                    auto cfg = apply_transition(m, t, run.configs.back());
                    require(cfg.has_value(), m.name + ": witness replay blocked");
                    run.configs.push_back(*cfg);
                    auto r = det_step(m, fam, s, t.letter);
                    s = r.state;
                    for (const auto& d : r.discarded) {
                        auto sys = capped_graph(m, 12, d.config);
                        require(!capped_buchi_nonempty(sys).non_empty,
                                m.name + ": a discarded configuration accepts within caps");
                        ++discards_checked;
                    }
                    auto club = fam.club_of(run.configs.back());
                    require(club.has_value(), m.name + ": family does not cover a run config");
                    require(s.inhabited[static_cast<size_t>(*club)],
                            m.name + ": an accepting run's configuration was discarded");
                    require(det_tracked_config(fam, s, *club) == run.configs.back(),
                            m.name + ": tracked configuration drifted from the run");
                    ++shadow_checks;
                    ++next;
                    if (next >= pat.size()) next = static_cast<size_t>(mv.witness_loop);
                }
            }

        // random walks hunting for collisions to validate against the oracle
        for (int walk = 0; walk < 40; ++walk) {
            DetState s = det_initial_state(m, fam);
            for (int step = 0; step < 24; ++step) {
                SymbolId a = std::uniform_int_distribution<int>(0, m.symbol_count() - 1)(rng);
                auto r = det_step(m, fam, s, a);
                for (const auto& d : r.discarded) {
                    auto sys = capped_graph(m, 12, d.config);
                    require(!capped_buchi_nonempty(sys).non_empty,
                            m.name + ": a discarded configuration accepts within caps");
                    ++discards_checked;
                }
                s = r.state;
            }
        }
    }
    std::ostringstream s;
    s << decided << " decided words agree, " << member_words << " member words shadowed ("
      << shadow_checks << " steps), " << discards_checked << " discards oracle-empty";
    return s.str();
}

// ---------------------------------------------------------------- criterion 9

std::string criterion9() {
    std::mt19937_64 rng(0xd1ff);
    int words = 0, accepted = 0;
    while (words < 1200) {
        const int n = std::uniform_int_distribution<int>(1, 4)(rng);
        std::vector<bool> acc;
        for (int i = 0; i < n; ++i)
            acc.push_back(std::uniform_int_distribution<int>(0, 1)(rng) == 0);
        PathMullerAutomaton d(n, acc);
        for (int w = 0; w < 4 && words < 1200; ++w, ++words) {
            std::vector<ThetaGraph> spoke, period;
            const int su = std::uniform_int_distribution<int>(0, 2)(rng);
            const int sv = std::uniform_int_distribution<int>(1, 3)(rng);
            std::uniform_int_distribution<int> coin(0, 3);
            auto random_theta = [&]() {
                std::vector<std::pair<int, int>> pairs;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        if (coin(rng) == 0) pairs.emplace_back(a, b);
                return ThetaGraph::of(std::move(pairs));
            };
            for (int i = 0; i < su; ++i) spoke.push_back(random_theta());
            for (int i = 0; i < sv; ++i) period.push_back(random_theta());
            const bool want = theta_path_oracle(spoke, period, n, acc);
            const bool got = d.accepts_lasso(spoke, period);
            require(got == want, "path automaton disagrees with the composition oracle");
            accepted += want;
        }
    }
    std::ostringstream s;
    s << words << " theta-words, " << accepted << " accepted, zero disagreements";
    return s.str();
}

// --------------------------------------------------------------- criterion 10

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli_rc(const std::string& args, std::string* output = nullptr) {
    const std::string out = std::string(BCA_GOLDEN_DIR) + "/../../build/cli_out.tmp";
    const std::string cmd = std::string(BCA_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    if (output) *output = read_file(out);
    return WEXITSTATUS(rc);
}

std::string run_cli(const std::string& args) {
    std::string out;
    require(run_cli_rc(args, &out) == 0, "CLI command failed: " + args);
    return out;
}

std::string criterion10() {
    const std::string golden = BCA_GOLDEN_DIR;
    require(run_cli("a1") == read_file(golden + "/a1.machine"), "a1 output differs");
    for (const char* kind : {"B", "L", "PA"}) {
        std::string file = std::string(kind) == "B" ? "hsim_b" : std::string(kind) == "L"
                                ? "hsim_l" : "hsim_pa";
        require(run_cli("hsim " + golden + "/zigzag.machine --emit " + kind) ==
                    read_file(golden + "/" + file + ".machine"),
                std::string("hsim --emit ") + kind + " output differs");
    }
    require(run_cli("alpha --set " + golden + "/treeset_eps_l.txt --phases 2") ==
                read_file(golden + "/alpha_eps_l_phases2.txt"),
            "alpha output differs");

    // parse/serialize round-trips of every golden machine
    int round_trips = 0;
    for (const char* f : {"a1", "hsim_b", "hsim_l", "hsim_pa", "zigzag"}) {
        auto text = read_file(golden + "/" + std::string(f) + ".machine");
        auto m = parse_machine(text);
        require(serialize_machine(m) == text, std::string(f) + " does not round-trip");
        ++round_trips;
    }

    // command pipeline spot checks with their documented exit codes
    require(run_cli_rc("check-empty " + golden + "/a1.machine --bound 16") == 0,
            "check-empty on the block automaton should report NonEmpty (exit 0)");
    {
        const std::string tmp = golden + "/../../build/aomega.tmp.machine";
        std::ofstream out(tmp);
        out << "machine aw\nalphabet a\ncounters blind\nstates q\ninitial q\naccepting q\n"
               "trans q a guards any deltas 0 -> q\n";
        out.close();
        require(run_cli_rc("member " + tmp + " --u \"\" --v a --bound 8") == 0,
                "member on the a-omega machine should report member (exit 0)");
        std::string det_out = golden + "/../../build/det.tmp.machine";
        std::remove(det_out.c_str());
        require(run_cli_rc("determinize " + tmp + " --bound 16 -o " + det_out) == 0,
                "determinize on a deterministic input should succeed");
        require(is_deterministic(parse_machine(read_file(det_out))),
                "determinize output fails is_deterministic after a round trip");
        require(run_cli_rc("determinize " + tmp + " --bound 16 -o " + det_out) != 0,
                "writing over an existing output without --force must fail");
        require(run_cli_rc("determinize " + tmp + " --bound 16 --force -o " + det_out) == 0,
                "writing with --force must succeed");
    }
    return "4 golden outputs byte-identical, " + std::to_string(round_trips) +
           " round trips, exit codes checked";
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "lasso search vs capped oracle differential", criterion1},
        {2, "four-counter simulation phase invariant", criterion2},
        {3, "lift/project round trips", criterion3},
        {4, "over-long zero runs block the simulation", criterion4},
        {5, "node encoding identities through depth 8", criterion5},
        {6, "block automaton chain/run round trips at depth 4", criterion6},
        {7, "club splitting partitions and optimality certificates", criterion7},
        {8, "determinisation end-to-end differential", criterion8},
        {9, "path automaton vs composition oracle", criterion9},
        {10, "CLI golden files and format round trips", criterion10},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string verdict, stats;
        try {
            stats = c.run();
            verdict = "PASS";
        } catch (const std::exception& e) {
            stats = e.what();
            verdict = "FAIL";
            all_ok = false;
        }
        const auto secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count() /
                          1000.0;
        std::printf("%s criterion %2d: %s (%s; %.1fs)\n", verdict.c_str(), c.number,
                    c.description.c_str(), stats.c_str(), secs);
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
