#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "bca/machine.hpp"

namespace bca {

/// One coordinate of a club description: an exact natural or (>= N), the
/// threshold N being shared by the whole club.
struct ClubEntry {
    bool ge = false;       // true: the (>= N) symbol; false: exact value
    Counter value = 0;     // meaningful only when !ge

    static ClubEntry exact(Counter v) { return ClubEntry{false, v}; }
    static ClubEntry geq() { return ClubEntry{true, 0}; }

    bool operator==(const ClubEntry&) const = default;
    auto operator<=>(const ClubEntry&) const = default;
};

/// A club [q, gamma]: the configurations (q, tau) with tau_i = gamma_i on
/// exact coordinates and tau_i >= N on (>= N) coordinates.
struct Club {
    StateId state = 0;
    std::vector<ClubEntry> gamma;
    Counter threshold = 0;

    int dimension() const;

    bool operator==(const Club&) const = default;
    auto operator<=>(const Club&) const = default;
};

std::string club_to_string(const CounterMachine& machine, const Club& club);

/// The simulation-least element of the club.
Configuration minimal_config(const Club& club);

/// Replaces every (>= N) by (>= M); requires M >= N.
Club restrict_club(const Club& club, Counter M);

bool club_contains(const Club& club, const Configuration& config);

struct OptimalityResult {
    Cert certificate = Cert::Unknown;
    Counter M = 0;  // threshold at which optimality was certified (or bound-exhausted)
};

/// Tri-state triviality: Yes when L(A,[q,gamma]) is certified empty, No when a
/// witness exists, Unknown when the bounded search is inconclusive.
Cert is_trivial(const CounterMachine& machine, const Club& club, int bound,
                std::uint64_t node_budget = 10'000'000);

/// Tri-state optimality per the minimal-configuration implication. Dimension-0
/// clubs are optimal unconditionally.
Cert is_optimal(const CounterMachine& machine, const Club& club, int bound,
                std::uint64_t node_budget = 10'000'000);

/// Smallest certifiable M >= N with restrict_club(club, M) optimal.
OptimalityResult optimalize(const CounterMachine& machine, const Club& club, int bound,
                            std::uint64_t node_budget = 10'000'000);

struct CertifiedClub {
    Club club;
    Cert optimal = Cert::Unknown;
};

/// Decomposes `club` into finitely many pairwise disjoint optimal clubs
/// (recursion on the dimension). Certification is tri-state per member.
std::vector<CertifiedClub> split_optimal(const CounterMachine& machine, const Club& club,
                                         int bound, std::uint64_t node_budget = 10'000'000);

struct ClubFamily {
    std::vector<Club> clubs;       // canonical order, pairwise disjoint, covering
    Counter threshold = 0;         // shared threshold N > 0
    std::vector<Cert> optimality;  // per club

    std::optional<int> club_of(const Configuration& config) const;
    std::vector<int> clubs_of_state(StateId q) const;
};

/// Splits the full configuration space into disjoint optimal clubs sharing one
/// threshold N > 0.
ClubFamily build_family(const CounterMachine& machine, int bound,
                        std::uint64_t node_budget = 10'000'000);

}  // namespace bca
