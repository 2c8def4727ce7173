#include "bca/clubs.hpp"

#include <algorithm>

#include "bca/emptiness.hpp"

namespace bca {

int Club::dimension() const {
    int d = 0;
    for (const ClubEntry& e : gamma)
        if (e.ge) ++d;
    return d;
}

std::string club_to_string(const CounterMachine& machine, const Club& club) {
    std::string s = "[" + machine.states[club.state] + ",(";
    for (size_t i = 0; i < club.gamma.size(); ++i) {
        if (i) s += ",";
        if (club.gamma[i].ge)
            s += ">=" + std::to_string(club.threshold);
        else
            s += std::to_string(club.gamma[i].value);
    }
    return s + ")]";
}

Configuration minimal_config(const Club& club) {
    Configuration c;
    c.state = club.state;
    c.counters.reserve(club.gamma.size());
    for (const ClubEntry& e : club.gamma) c.counters.push_back(e.ge ? club.threshold : e.value);
    return c;
}

Club restrict_club(const Club& club, Counter M) {
    if (M < club.threshold) throw PreconditionError("restrict_club: M below the club threshold");
    Club out = club;
    out.threshold = M;
    return out;
}

bool club_contains(const Club& club, const Configuration& config) {
    if (config.state != club.state) return false;
    if (config.counters.size() != club.gamma.size()) return false;
    for (size_t i = 0; i < club.gamma.size(); ++i) {
        const ClubEntry& e = club.gamma[i];
        if (e.ge ? config.counters[i] < club.threshold : config.counters[i] != e.value)
            return false;
    }
    return true;
}

Cert is_trivial(const CounterMachine& machine, const Club& club, int bound,
                std::uint64_t node_budget) {
    switch (club_empty(machine, club, bound, node_budget).emptiness.verdict) {
        case EmptinessVerdict::NonEmpty: return Cert::No;
        case EmptinessVerdict::EmptyCertified: return Cert::Yes;
        case EmptinessVerdict::EmptyUpTo: return Cert::Unknown;
    }
    return Cert::Unknown;
}

Cert is_optimal(const CounterMachine& machine, const Club& club, int bound,
                std::uint64_t node_budget) {
    if (club.dimension() == 0) return Cert::Yes;
    Cert trivial = is_trivial(machine, club, bound, node_budget);
    if (trivial == Cert::Yes) return Cert::Yes;  // vacuous implication
    EmptinessResult seeded =
        find_accepting_lasso(machine, bound, node_budget, minimal_config(club));
    if (seeded.verdict == EmptinessVerdict::NonEmpty) return Cert::Yes;
    if (seeded.verdict == EmptinessVerdict::EmptyCertified && trivial == Cert::No)
        return Cert::No;
    return Cert::Unknown;
}

OptimalityResult optimalize(const CounterMachine& machine, const Club& club, int bound,
                            std::uint64_t node_budget) {
    if (club.dimension() == 0) return OptimalityResult{Cert::Yes, club.threshold};
    ClubEmptinessResult r = club_empty(machine, club, bound, node_budget);
    switch (r.emptiness.verdict) {
        case EmptinessVerdict::EmptyCertified:
            // Trivial club: already optimal at its own threshold.
            return OptimalityResult{Cert::Yes, club.threshold};
        case EmptinessVerdict::NonEmpty:
            // The witness pumps the (>= N) coordinates r.M - N times, so the
            // minimal configuration of the restriction to r.M accepts.
            return OptimalityResult{Cert::Yes, r.M};
        case EmptinessVerdict::EmptyUpTo:
            return OptimalityResult{Cert::Unknown, r.M};
    }
    return OptimalityResult{Cert::Unknown, r.M};
}

namespace {

// All clubs with each (>= N) coordinate of `club` either kept at (>= M) or
// fixed to an exact value in [low, M); the all-kept member comes first.
std::vector<Club> coordinate_split(const Club& club, Counter low, Counter M) {
    std::vector<int> ge_coords;
    for (size_t i = 0; i < club.gamma.size(); ++i)
        if (club.gamma[i].ge) ge_coords.push_back(static_cast<int>(i));
    const int d = static_cast<int>(ge_coords.size());

    std::vector<Club> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
        // mask bit set: coordinate becomes exact
        std::vector<int> exact_coords;
        for (int i = 0; i < d; ++i)
            if ((mask >> i) & 1) exact_coords.push_back(ge_coords[i]);
        std::vector<Counter> vals(exact_coords.size(), low);
        bool more = true;
        if (!exact_coords.empty() && low >= M) continue;  // empty exact range
        while (more) {
            Club sub = club;
            sub.threshold = M;
            for (size_t i = 0; i < exact_coords.size(); ++i)
                sub.gamma[exact_coords[i]] = ClubEntry::exact(vals[i]);
            out.push_back(std::move(sub));
            // next value assignment, lexicographic
            more = false;
            for (size_t i = vals.size(); i-- > 0;) {
                if (vals[i] + 1 < M) {
                    ++vals[i];
                    for (size_t j = i + 1; j < vals.size(); ++j) vals[j] = low;
                    more = true;
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<CertifiedClub> split_optimal(const CounterMachine& machine, const Club& club,
                                         int bound, std::uint64_t node_budget) {
    if (club.dimension() == 0) return {CertifiedClub{club, Cert::Yes}};
    OptimalityResult opt = optimalize(machine, club, bound, node_budget);
    if (opt.M == club.threshold) return {CertifiedClub{club, opt.certificate}};

    std::vector<CertifiedClub> out;
    for (Club& sub : coordinate_split(club, club.threshold, opt.M)) {
        if (sub.dimension() == club.dimension()) {
            // the all-kept member [q, gamma restricted to M]
            out.push_back(CertifiedClub{std::move(sub), opt.certificate});
        } else {
            auto rec = split_optimal(machine, sub, bound, node_budget);
            out.insert(out.end(), rec.begin(), rec.end());
        }
    }
    return out;
}

std::optional<int> ClubFamily::club_of(const Configuration& config) const {
    for (size_t i = 0; i < clubs.size(); ++i)
        if (club_contains(clubs[i], config)) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<int> ClubFamily::clubs_of_state(StateId q) const {
    std::vector<int> out;
    for (size_t i = 0; i < clubs.size(); ++i)
        if (clubs[i].state == q) out.push_back(static_cast<int>(i));
    return out;
}

ClubFamily build_family(const CounterMachine& machine, int bound, std::uint64_t node_budget) {
    const int k = machine.counter_count();
    std::vector<CertifiedClub> members;
    for (StateId q = 0; q < machine.state_count(); ++q) {
        Club full;
        full.state = q;
        full.gamma.assign(k, ClubEntry::geq());
        full.threshold = 0;
        auto part = split_optimal(machine, full, bound, node_budget);
        members.insert(members.end(), part.begin(), part.end());
    }

    Counter unified = 1;
    for (const CertifiedClub& m : members)
        if (m.club.dimension() > 0) unified = std::max(unified, m.club.threshold);

    // Raise every positive-dimension club to the unified threshold. Subsets of
    // an optimal club stay optimal, so no further emptiness queries are needed.
    std::vector<CertifiedClub> flat;
    for (const CertifiedClub& m : members) {
        if (m.club.dimension() == 0 || m.club.threshold == unified) {
            CertifiedClub kept = m;
            if (kept.club.dimension() == 0) kept.club.threshold = unified;
            flat.push_back(std::move(kept));
            continue;
        }
        for (Club& sub : coordinate_split(m.club, m.club.threshold, unified))
            flat.push_back(CertifiedClub{std::move(sub), m.optimal});
    }

    std::sort(flat.begin(), flat.end(),
              [](const CertifiedClub& a, const CertifiedClub& b) { return a.club < b.club; });

    ClubFamily fam;
    fam.threshold = unified;
    for (CertifiedClub& m : flat) {
        fam.clubs.push_back(std::move(m.club));
        fam.optimality.push_back(m.optimal);
    }
    return fam;
}

}  // namespace bca
