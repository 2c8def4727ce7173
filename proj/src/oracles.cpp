#include "bca/oracles.hpp"

#include <algorithm>
#include <deque>

#include "bca/sigma11.hpp"

namespace bca {

namespace {

bool guard_matches(Guard g, Counter value) {
    switch (g) {
        case Guard::Zero: return value == 0;
        case Guard::Positive: return value > 0;
        case Guard::Any: return true;
    }
    return false;
}

// Saturating transition application: increments clamp at cap.
std::optional<Configuration> apply_capped(const CounterMachine& m, const Transition& t,
                                          const Configuration& c, Counter cap) {
    Configuration next;
    next.state = t.target;
    next.counters = c.counters;
    for (auto [dst, src] : t.copies) next.counters[dst] = c.counters[src];
    for (int i = 0; i < m.counter_count(); ++i) {
        int d = t.deltas[i];
        if (d < 0) {
            if (next.counters[i] == 0) return std::nullopt;
            --next.counters[i];
        } else if (d > 0) {
            if (next.counters[i] < cap) ++next.counters[i];
        }
    }
    return next;
}

}  // namespace

CappedSystem capped_graph(const CounterMachine& machine, Counter cap,
                          const std::optional<Configuration>& seed,
                          std::uint64_t node_limit,
                          std::optional<std::uint64_t> depth_cap) {
    CappedSystem sys;
    sys.machine = &machine;
    sys.cap = cap;

    Configuration start = seed ? *seed : machine.initial_configuration();
    for (Counter& v : start.counters) v = std::min(v, cap);

    auto intern = [&sys](const Configuration& c) {
        auto [it, fresh] = sys.index.try_emplace(c, static_cast<int>(sys.nodes.size()));
        if (fresh) {
            sys.nodes.push_back(c);
            sys.edges.emplace_back();
        }
        return std::make_pair(it->second, fresh);
    };

    std::deque<int> queue;
    std::vector<std::uint64_t> depth;
    sys.initial_node = intern(start).first;
    depth.push_back(0);
    queue.push_back(sys.initial_node);
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        if (depth_cap && depth[static_cast<size_t>(n)] >= *depth_cap) continue;
        const Configuration here = sys.nodes[n];
        for (size_t i = 0; i < machine.transitions.size(); ++i) {
            const Transition& t = machine.transitions[i];
            if (t.source != here.state) continue;
            bool ok = true;
            for (int c = 0; c < machine.counter_count() && ok; ++c)
                ok = guard_matches(t.guards[c], here.counters[c]);
            if (!ok) continue;
            auto next = apply_capped(machine, t, here, cap);
            if (!next) continue;
            auto [m, fresh] = intern(*next);
            sys.edges[n].emplace_back(static_cast<int>(i), m);
            if (fresh) {
                if (sys.nodes.size() > node_limit)
                    throw BudgetExceededError("capped_graph: node limit exceeded");
                depth.push_back(depth[static_cast<size_t>(n)] + 1);
                queue.push_back(m);
            }
        }
    }
    return sys;
}

namespace {

// Iterative Tarjan SCC.
std::vector<int> scc_of(const CappedSystem& sys) {
    const int n = static_cast<int>(sys.nodes.size());
    std::vector<int> comp(n, -1), low(n), num(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0, comps = 0;

    struct Frame {
        int node;
        size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < sys.edges[f.node].size()) {
                int next = sys.edges[f.node][f.edge++].second;
                if (num[next] == -1) {
                    num[next] = low[next] = counter++;
                    stack.push_back(next);
                    on_stack[next] = true;
                    frames.push_back({next, 0});
                } else if (on_stack[next]) {
                    low[f.node] = std::min(low[f.node], num[next]);
                }
            } else {
                if (low[f.node] == num[f.node]) {
                    while (true) {
                        int v = stack.back();
                        stack.pop_back();
                        on_stack[v] = false;
                        comp[v] = comps;
                        if (v == f.node) break;
                    }
                    ++comps;
                }
                int done = f.node;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().node] = std::min(low[frames.back().node], low[done]);
            }
        }
    }
    return comp;
}

std::vector<int> bfs_path(const CappedSystem& sys, int from, int to, bool proper) {
    // Transition-index path from -> to; with `proper` the path has >= 1 edge.
    if (from == to && !proper) return {};
    std::vector<int> parent_edge(sys.nodes.size(), -1), parent_node(sys.nodes.size(), -1);
    std::vector<bool> seen(sys.nodes.size(), false);
    std::deque<int> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        for (auto [t, m] : sys.edges[n]) {
            if (m == to) {
                std::vector<int> path{t};
                for (int cur = n; cur != from; cur = parent_node[cur])
                    path.push_back(parent_edge[cur]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (!seen[m]) {
                seen[m] = true;
                parent_node[m] = n;
                parent_edge[m] = t;
                queue.push_back(m);
            }
        }
    }
    return {};
}

}  // namespace

CappedWitness capped_buchi_nonempty(const CappedSystem& system) {
    CappedWitness w;
    if (system.machine->acceptance.kind != Acceptance::Kind::Buchi)
        throw PreconditionError("capped_buchi_nonempty: Buchi acceptance required");
    auto comp = scc_of(system);

    std::vector<bool> comp_has_cycle(system.nodes.size(), false);
    std::vector<int> comp_size(system.nodes.size(), 0);
    for (size_t n = 0; n < system.nodes.size(); ++n) ++comp_size[comp[n]];
    for (size_t n = 0; n < system.nodes.size(); ++n)
        for (auto [t, m] : system.edges[n])
            if (comp[m] == comp[static_cast<int>(n)] &&
                (comp_size[comp[n]] > 1 || m == static_cast<int>(n)))
                comp_has_cycle[comp[n]] = true;

    for (size_t n = 0; n < system.nodes.size(); ++n) {
        if (!comp_has_cycle[comp[n]]) continue;
        if (!system.machine->acceptance.buchi_accepts(system.nodes[n].state)) continue;
        // all interned nodes are reachable from the initial node by construction
        w.non_empty = true;
        w.spoke = bfs_path(system, system.initial_node, static_cast<int>(n), false);
        w.cycle = bfs_path(system, static_cast<int>(n), static_cast<int>(n), true);
        return w;
    }
    return w;
}

ThetaGraph ThetaGraph::of(std::vector<std::pair<int, int>> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return ThetaGraph{std::move(p)};
}

namespace {

// Flagged relation: entry (a,b) -> 0/1/absent; flag 1 means some path a->b
// passes an accepting club (counting club b itself, not a).
using FlaggedRel = std::vector<std::vector<int>>;  // -1 absent, else max flag

FlaggedRel rel_of_theta(const ThetaGraph& g, int n, const std::vector<bool>& accepting) {
    FlaggedRel r(n, std::vector<int>(n, -1));
    for (auto [a, b] : g.pairs)
        if (a >= 0 && a < n && b >= 0 && b < n)
            r[a][b] = std::max(r[a][b], accepting[b] ? 1 : 0);
    return r;
}

FlaggedRel compose(const FlaggedRel& x, const FlaggedRel& y) {
    const int n = static_cast<int>(x.size());
    FlaggedRel r(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (x[a][b] < 0) continue;
            for (int c = 0; c < n; ++c) {
                if (y[b][c] < 0) continue;
                r[a][c] = std::max(r[a][c], std::max(x[a][b], y[b][c]));
            }
        }
    return r;
}

}  // namespace

bool theta_path_oracle(const std::vector<ThetaGraph>& spoke,
                       const std::vector<ThetaGraph>& period,
                       int club_count,
                       const std::vector<bool>& accepting_clubs) {
    if (period.empty()) throw PreconditionError("theta_path_oracle: empty period");
    const int n = club_count;

    // Clubs possible at the start of the first period iteration. A path may
    // start at any club; an accepting visit inside the spoke is irrelevant.
    std::vector<bool> start(n, true);
    for (const ThetaGraph& g : spoke) {
        std::vector<bool> next(n, false);
        for (auto [a, b] : g.pairs)
            if (a >= 0 && a < n && b >= 0 && b < n && start[a]) next[b] = true;
        start = std::move(next);
    }

    FlaggedRel p = rel_of_theta(period.front(), n, accepting_clubs);
    for (size_t i = 1; i < period.size(); ++i)
        p = compose(p, rel_of_theta(period[i], n, accepting_clubs));

    // Accepting path exists iff some flag-1 period-edge (a,b) lies on a cycle
    // of the period graph reachable from a start club.
    auto reach = [&](const std::vector<bool>& from) {
        std::vector<bool> seen = from;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int a = 0; a < n; ++a) {
                if (!seen[a]) continue;
                for (int b = 0; b < n; ++b)
                    if (p[a][b] >= 0 && !seen[b]) {
                        seen[b] = true;
                        changed = true;
                    }
            }
        }
        return seen;
    };
    std::vector<bool> reachable = reach(start);
    for (int a = 0; a < n; ++a) {
        if (!reachable[a]) continue;
        for (int b = 0; b < n; ++b) {
            if (p[a][b] != 1) continue;
            std::vector<bool> from_b(n, false);
            from_b[b] = true;
            if (reach(from_b)[a]) return true;
        }
    }
    return false;
}

std::vector<std::string> descending_chain_oracle(const std::set<std::string>& nodes) {
    std::vector<std::string> v(nodes.begin(), nodes.end());
    std::sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) {
        return a.size() < b.size();
    });
    const int n = static_cast<int>(v.size());
    std::vector<int> best(n, 1), prev(n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            // chain ... v[j] then v[i]: strictly descending, lengths increase
            if (v[j].size() >= v[i].size()) continue;
            if (!(leq_inf(v[i], v[j]) && v[i] != v[j])) continue;
            if (best[j] + 1 > best[i]) {
                best[i] = best[j] + 1;
                prev[i] = j;
            }
        }
    int arg = -1, len = 0;
    for (int i = 0; i < n; ++i)
        if (best[i] > len) {
            len = best[i];
            arg = i;
        }
    std::vector<std::string> chain;
    for (int cur = arg; cur != -1; cur = prev[cur]) chain.push_back(v[cur]);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace bca
