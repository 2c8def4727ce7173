#include <doctest.h>

#include <random>

#include "bca/determinize.hpp"
#include "bca/emptiness.hpp"
#include "bca/format.hpp"
#include "bca/oracles.hpp"
#include "bca/sigma11.hpp"
#include "helpers.hpp"
#include "sample_machines.hpp"

using namespace bca;
using test::Builder;

namespace {

// simple one-counter family: per state the exact-0 club and the (>=1) club
ClubFamily toy_family(const CounterMachine& m) {
    ClubFamily fam;
    fam.threshold = 1;
    for (StateId q = 0; q < m.state_count(); ++q) {
        fam.clubs.push_back(Club{q, {ClubEntry::exact(0)}, 1});
        fam.clubs.push_back(Club{q, {ClubEntry::geq()}, 1});
    }
    fam.optimality.assign(fam.clubs.size(), Cert::Unknown);
    return fam;
}

std::vector<std::vector<SymbolId>> words_up_to(int letters, int len) {
    std::vector<std::vector<SymbolId>> out{{}};
    size_t begin = 0;
    for (int l = 0; l < len; ++l) {
        size_t end = out.size();
        for (size_t i = begin; i < end; ++i)
            for (SymbolId a = 0; a < letters; ++a) {
                auto w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

// raw-configuration mirror of det_step used to validate the bank encoding
struct ShadowState {
    std::vector<std::optional<Configuration>> tracked;
};

ShadowState shadow_initial(const CounterMachine& m, const ClubFamily& fam) {
    ShadowState s;
    s.tracked.assign(fam.clubs.size(), std::nullopt);
    auto home = fam.club_of(m.initial_configuration());
    REQUIRE(home.has_value());
    s.tracked[static_cast<size_t>(*home)] = m.initial_configuration();
    return s;
}

ShadowState shadow_step(const CounterMachine& m, const ClubFamily& fam, const ShadowState& s,
                        SymbolId letter) {
    std::map<int, std::vector<Configuration>> groups;
    for (const auto& cfg : s.tracked) {
        if (!cfg) continue;
        for (auto& [t, next] : successors(m, *cfg, letter)) {
            auto target = fam.club_of(next);
            REQUIRE(target.has_value());
            groups[*target].push_back(next);
        }
    }
    ShadowState out;
    out.tracked.assign(fam.clubs.size(), std::nullopt);
    for (auto& [club, configs] : groups)
        if (configs.size() == 1) out.tracked[static_cast<size_t>(club)] = configs.front();
    return out;
}

}  // namespace

TEST_CASE("det_step: deterministic input never collides and theta is functional") {
    auto m = samples::unambiguous_inputs()[0];  // det_aomega
    auto fam = toy_family(m);
    DetState s = det_initial_state(m, fam);
    std::mt19937_64 rng(1);
    for (int step = 0; step < 30; ++step) {
        SymbolId a = std::uniform_int_distribution<int>(0, 1)(rng);
        auto r = det_step(m, fam, s, a);
        CHECK(r.discarded.empty());
        std::set<int> sources;
        for (auto [from, to] : r.theta.pairs) CHECK(sources.insert(from).second);
        s = r.state;
    }
}

TEST_CASE("det_step: two branches into one club discard both") {
    auto m = Builder("branch", {"a"}, 1)
                 .states({"q", "r"})
                 .initial("q")
                 .trans("q", "a", "*", {1}, "r")
                 .trans("q", "a", "*", {0}, "r")
                 .accepting({"r"})
                 .build();
    auto fam = toy_family(m);
    DetState s = det_initial_state(m, fam);
    s.inhabited.assign(fam.clubs.size(), false);
    s.inhabited[static_cast<size_t>(*fam.club_of(Configuration{0, {2}}))] = true;
    s.banks[static_cast<size_t>(*fam.club_of(Configuration{0, {2}}))] = {1};  // tracks (q,2)

    auto r = det_step(m, fam, s, 0);
    // (r,3) and (r,2) land in the same (>=1) club: both discarded
    CHECK(r.discarded.size() == 2);
    CHECK(r.theta.pairs.empty());
    for (bool b : r.state.inhabited) CHECK_FALSE(b);
}

TEST_CASE("det_step: identical target configurations still collide") {
    auto m = Builder("dup", {"a"}, 1)
                 .states({"q", "r"})
                 .initial("q")
                 .trans("q", "a", "*", {0}, "r")
                 .trans("q", "a", "*", {0}, "r")
                 .accepting({"r"})
                 .build();
    auto fam = toy_family(m);
    DetState s = det_initial_state(m, fam);
    auto r = det_step(m, fam, s, 0);
    CHECK(r.discarded.size() == 2);
    CHECK(r.discarded[0].config == r.discarded[1].config);
    for (bool b : r.state.inhabited) CHECK_FALSE(b);
}

TEST_CASE("det_step banks always store max(tau - N, 0) of the tracked config") {
    std::mt19937_64 rng(55);
    for (const auto& m : samples::unambiguous_inputs()) {
        auto fam = build_family(m, 24);
        DetState s = det_initial_state(m, fam);
        ShadowState sh = shadow_initial(m, fam);
        for (int step = 0; step < 40; ++step) {
            SymbolId a = std::uniform_int_distribution<int>(0, m.symbol_count() - 1)(rng);
            auto r = det_step(m, fam, s, a);
            sh = shadow_step(m, fam, sh, a);
            s = r.state;
            for (size_t i = 0; i < fam.clubs.size(); ++i) {
                CHECK(s.inhabited[i] == sh.tracked[i].has_value());
                if (s.inhabited[i]) {
                    CHECK(det_tracked_config(fam, s, static_cast<int>(i)) == *sh.tracked[i]);
                    for (size_t j = 0; j < sh.tracked[i]->counters.size(); ++j) {
                        Counter tau = sh.tracked[i]->counters[j];
                        CHECK(s.banks[i][j] == (tau > fam.threshold ? tau - fam.threshold : 0));
                    }
                }
            }
        }
    }
}

TEST_CASE("collision discards are language-empty within oracle caps") {
    // a deliberately ambiguous machine: two ways to reach r with distinct counters
    auto m = Builder("collide", {"a", "b"}, 1)
                 .states({"q", "r"})
                 .initial("q")
                 .trans("q", "a", "*", {1}, "r")
                 .trans("q", "a", "*", {0}, "r")
                 .trans("r", "b", "*", {0}, "q")
                 .accepting({})
                 .build();
    auto fam = toy_family(m);
    DetState s = det_initial_state(m, fam);
    s.inhabited.assign(fam.clubs.size(), false);
    const int ge_club = *fam.club_of(Configuration{0, {2}});
    s.inhabited[static_cast<size_t>(ge_club)] = true;
    s.banks[static_cast<size_t>(ge_club)] = {1};  // tracks (q, 2)

    auto r = det_step(m, fam, s, 0);
    REQUIRE(r.discarded.size() == 2);  // (r,3) and (r,2) share the (>=1) club
    for (const auto& d : r.discarded) {
        auto sys = capped_graph(m, 8, d.config);
        CHECK_FALSE(capped_buchi_nonempty(sys).non_empty);
    }
}

TEST_CASE("determinize: deterministic inputs agree with membership on lasso words") {
    for (int which : {0, 1, 4}) {
        auto m = samples::unambiguous_inputs()[static_cast<size_t>(which)];
        REQUIRE(is_deterministic(m));
        auto det = determinize(m, DeterminizeOptions{.bound = 24});
        CHECK(validate(det.machine).empty());
        CHECK(is_deterministic(det.machine));
        CHECK(det.machine.copy_capable);
        CHECK(det.machine.acceptance.kind == Acceptance::Kind::Muller);

        int decided = 0;
        auto words = words_up_to(m.symbol_count(), 3);
        for (const auto& u : words)
            for (const auto& v : words) {
                if (v.empty()) continue;
                LassoWord w{u, v};
                auto dv = run_deterministic(det.machine, w, 600);
                if (dv.verdict == RunVerdict::Unknown) continue;
                ++decided;
                auto mv = membership_upw(m, w, 30);
                if (dv.verdict == RunVerdict::Accept)
                    CHECK(mv.verdict == MembershipVerdict::Member);
                else
                    CHECK(mv.verdict != MembershipVerdict::Member);
            }
        CHECK(decided > 20);
    }
}

TEST_CASE("determinize: empty language rejects every tested lasso word") {
    auto m = samples::unambiguous_inputs()[2];
    auto det = determinize(m, DeterminizeOptions{.bound = 16});
    auto words = words_up_to(m.symbol_count(), 3);
    for (const auto& v : words) {
        if (v.empty()) continue;
        auto dv = run_deterministic(det.machine, LassoWord{{}, v}, 400);
        CHECK(dv.verdict == RunVerdict::Reject);
    }
}

TEST_CASE("determinize: the nondeterministic-but-unambiguous guess machine") {
    auto m = samples::unambiguous_inputs()[3];
    REQUIRE_FALSE(is_deterministic(m));
    REQUIRE_FALSE(unambiguity_lint(m, 4, 10).violation);

    auto det = determinize(m, DeterminizeOptions{.bound = 24});
    CHECK(is_deterministic(det.machine));

    int decided = 0, accepted = 0;
    auto words = words_up_to(m.symbol_count(), 3);
    for (const auto& u : words)
        for (const auto& v : words) {
            if (v.empty()) continue;
            LassoWord w{u, v};
            auto dv = run_deterministic(det.machine, w, 800);
            if (dv.verdict == RunVerdict::Unknown) continue;
            ++decided;
            auto mv = membership_upw(m, w, 30);
            const bool member = mv.verdict == MembershipVerdict::Member;
            CHECK((dv.verdict == RunVerdict::Accept) == member);
            accepted += member;
        }
    CHECK(decided > 20);
    CHECK(accepted > 3);
}

TEST_CASE("accepting runs are never discarded by the tracking step") {
    for (const auto& m : samples::unambiguous_inputs()) {
        auto fam = build_family(m, 24);
        auto words = words_up_to(m.symbol_count(), 2);
        for (const auto& u : words)
            for (const auto& v : words) {
                if (v.empty()) continue;
                auto mv = membership_upw(m, LassoWord{u, v}, 20);
                if (mv.verdict != MembershipVerdict::Member) continue;
                // replay the accepting run and follow det_step alongside
                RunPrefix run;
                run.configs.push_back(m.initial_configuration());
                DetState s = det_initial_state(m, fam);
                size_t next = 0;
                const auto& pat = mv.witness_transitions;
                for (int step = 0; step < 24; ++step) {
                    const Transition& t =
                        m.transitions[static_cast<size_t>(pat[next])];
                    auto cfg = apply_transition(m, t, run.configs.back());
                    REQUIRE(cfg.has_value());
                    run.transitions.push_back(pat[next]);
                    run.configs.push_back(*cfg);
                    s = det_step(m, fam, s, t.letter).state;
                    auto club = fam.club_of(run.configs.back());
                    REQUIRE(club.has_value());
                    CHECK(s.inhabited[static_cast<size_t>(*club)]);
                    CHECK(det_tracked_config(fam, s, *club) == run.configs.back());
                    ++next;
                    if (next >= pat.size())
                        next = static_cast<size_t>(mv.witness_loop);
                }
            }
    }
}

TEST_CASE("materialized machine mirrors the concrete det_step") {
    std::mt19937_64 rng(2718);
    for (const auto& m : samples::unambiguous_inputs()) {
        auto det = determinize(m, DeterminizeOptions{.bound = 24});
        const auto& fam = det.family;
        const int k = m.counter_count();
        DetState s = det_initial_state(m, fam);
        Configuration mc = det.machine.initial_configuration();
        for (int step = 0; step < 60; ++step) {
            SymbolId a = std::uniform_int_distribution<int>(0, m.symbol_count() - 1)(rng);
            s = det_step(m, fam, s, a).state;
            auto succ = successors(det.machine, mc, a);
            REQUIRE(succ.size() == 1);
            mc = succ.front().second;
            const auto& bitmap = det.control_bitmap[static_cast<size_t>(mc.state)];
            CHECK(bitmap == s.inhabited);
            for (size_t i = 0; i < fam.clubs.size(); ++i)
                if (s.inhabited[i])
                    for (int j = 0; j < k; ++j)
                        CHECK(mc.counters[i * static_cast<size_t>(k) + static_cast<size_t>(j)] ==
                              s.banks[i][static_cast<size_t>(j)]);
        }
    }
}

TEST_CASE("unambiguity_lint") {
    SUBCASE("deterministic machines pass") {
        CHECK_FALSE(unambiguity_lint(samples::unambiguous_inputs()[0], 4, 10).violation);
    }
    SUBCASE("two accepting paths on the same letter violate") {
        auto m = Builder("amb", {"a"}, 1)
                     .states({"q", "f1", "f2"})
                     .initial("q")
                     .trans("q", "a", "*", {0}, "f1")
                     .trans("q", "a", "*", {0}, "f2")
                     .trans("f1", "a", "*", {0}, "f1")
                     .trans("f2", "a", "*", {0}, "f2")
                     .accepting({"f1", "f2"})
                     .build();
        auto lint = unambiguity_lint(m, 4, 8);
        REQUIRE(lint.violation);
        CHECK(lint.run_a.configs != lint.run_b.configs);
        CHECK(check_run(m, lint.run_a));
        CHECK(check_run(m, lint.run_b));
    }
    SUBCASE("A1 is ambiguous: two blocks are choosable") {
        auto lint = unambiguity_lint(build_A1(), 12, 12);
        REQUIRE(lint.violation);
        CHECK(lint.run_a.configs != lint.run_b.configs);
    }
}

TEST_CASE("determinize: a partial input dies into an absorbing empty bitmap") {
    // no b-transition at all: every b-word kills every run
    auto m = Builder("partial", {"a", "b"}, 1)
                 .states({"q"})
                 .initial("q")
                 .trans("q", "a", "*", {0}, "q")
                 .accepting({"q"})
                 .build();
    auto det = determinize(m, DeterminizeOptions{.bound = 12});
    CHECK(is_deterministic(det.machine));

    auto a = run_deterministic(det.machine, LassoWord{{}, {0}}, 200);
    CHECK(a.verdict == RunVerdict::Accept);
    auto ba = run_deterministic(det.machine, LassoWord{{1}, {0}}, 200);
    CHECK(ba.verdict == RunVerdict::Reject);

    // the concrete tracking step agrees: after b nothing is inhabited, ever
    DetState s = det_initial_state(m, det.family);
    s = det_step(m, det.family, s, 1).state;
    for (bool b : s.inhabited) CHECK_FALSE(b);
    s = det_step(m, det.family, s, 0).state;
    for (bool b : s.inhabited) CHECK_FALSE(b);
}

TEST_CASE("determinize rejects unsupported inputs") {
    auto testable = Builder("testable", {"a"}, 1, CounterKind::Testable)
                        .states({"q"})
                        .initial("q")
                        .trans("q", "a", "0", {1}, "q")
                        .accepting({"q"})
                        .build();
    CHECK_THROWS_AS(determinize(testable), PreconditionError);

    CounterMachine muller = test::aomega();
    muller.acceptance = Acceptance::make_muller({{0}});
    CHECK_THROWS_AS(determinize(muller), PreconditionError);
}

TEST_CASE("determinize fails loudly on uncertifiable clubs") {
    // from (q, c) every run dies after c steps: the (>=N) clubs are trivial
    // but the bounded search cannot certify them
    auto m = Builder("drain", {"a"}, 1)
                 .states({"q"})
                 .initial("q")
                 .trans("q", "a", "*", {-1}, "q")
                 .accepting({"q"})
                 .build();
    CHECK_THROWS_AS(determinize(m, DeterminizeOptions{.bound = 8}), UncertifiedClubsError);
}
