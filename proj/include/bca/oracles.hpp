#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bca/machine.hpp"
#include "bca/semantics.hpp"

namespace bca {

/// Explicit finite configuration graph of a machine with counters saturated
/// at `cap`: increments clamp at the cap, decrements still block at zero.
/// Exact for blind machines; used only as a test-side reference.
struct CappedSystem {
    const CounterMachine* machine = nullptr;
    Counter cap = 0;
    std::vector<Configuration> nodes;
    std::vector<std::vector<std::pair<int, int>>> edges;  // (transition idx, target node)
    std::map<Configuration, int> index;
    int initial_node = -1;
};

CappedSystem capped_graph(const CounterMachine& machine, Counter cap,
                          const std::optional<Configuration>& seed = std::nullopt,
                          std::uint64_t node_limit = 2'000'000,
                          std::optional<std::uint64_t> depth_cap = std::nullopt);

struct CappedWitness {
    bool non_empty = false;
    std::vector<int> spoke;  // transition indices: initial -> anchor
    std::vector<int> cycle;  // transition indices: anchor -> anchor
};

/// Accepting-cycle detection on the capped graph (Buchi non-emptiness of the
/// finite system): a reachable accepting node inside an SCC with a cycle.
CappedWitness capped_buchi_nonempty(const CappedSystem& system);

/// One transition graph of the determinised machine: the surviving
/// (source club, target club) pairs.
struct ThetaGraph {
    std::vector<std::pair<int, int>> pairs;  // sorted, unique

    static ThetaGraph of(std::vector<std::pair<int, int>> p);
    bool operator==(const ThetaGraph&) const = default;
    auto operator<=>(const ThetaGraph&) const = default;
};

/// Exact decision, by relation composition over the period, whether the
/// ultimately periodic theta-word spoke . period^omega contains a path
/// visiting accepting clubs infinitely often.
bool theta_path_oracle(const std::vector<ThetaGraph>& spoke,
                       const std::vector<ThetaGraph>& period,
                       int club_count,
                       const std::vector<bool>& accepting_clubs);

/// Longest strictly <_inf-descending chain with strictly increasing lengths
/// over an explicit node set; the engine behind the finite IF_inf proxy.
std::vector<std::string> descending_chain_oracle(const std::set<std::string>& nodes);

}  // namespace bca
