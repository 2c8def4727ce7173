#include "bca/pathmuller.hpp"

#include <algorithm>

#include "bca/types.hpp"

namespace bca {

PathMullerAutomaton::PathMullerAutomaton(int club_count, std::vector<bool> accepting_clubs)
    : clubs_(club_count), accepting_(std::move(accepting_clubs)), nba_states_(club_count + 1) {
    if (club_count < 0 || club_count > 62)
        throw PreconditionError("path automaton supports at most 62 clubs");
    if (static_cast<int>(accepting_.size()) != club_count)
        throw PreconditionError("accepting flag vector does not match the club count");
    for (int c = 0; c < clubs_; ++c)
        if (accepting_[c]) nba_accepting_mask_ |= std::uint64_t{1} << c;

    // Initial Safra tree: one node holding the NBA's initial state.
    Tree init;
    init.nodes.push_back(Node{0, std::uint64_t{1} << clubs_, false, {}});
    intern(init);
}

std::string PathMullerAutomaton::Tree::key() const {
    std::string k;
    // Pre-order serialization; child order is age order, so this is canonical.
    auto rec = [&](auto&& self, int n) -> void {
        const Node& node = nodes[static_cast<size_t>(n)];
        k += std::to_string(node.name);
        k += node.marked ? "!" : ".";
        k += std::to_string(node.label);
        k += "(";
        for (int c : node.children) self(self, c);
        k += ")";
    };
    if (!nodes.empty()) rec(rec, 0);
    return k;
}

PathMullerAutomaton::Tree PathMullerAutomaton::apply(const Tree& tree,
                                                     const ThetaGraph& theta) const {
    // NBA successor masks under this letter.
    std::vector<std::uint64_t> succ(static_cast<size_t>(nba_states_), 0);
    for (auto [a, b] : theta.pairs) {
        if (a < 0 || a >= clubs_ || b < 0 || b >= clubs_) continue;
        succ[static_cast<size_t>(a)] |= std::uint64_t{1} << b;
        succ[static_cast<size_t>(clubs_)] |= std::uint64_t{1} << b;  // the initial state
    }
    auto delta = [&](std::uint64_t label) {
        std::uint64_t out = 0;
        for (int q = 0; q < nba_states_; ++q)
            if ((label >> q) & 1) out |= succ[static_cast<size_t>(q)];
        return out;
    };

    Tree t = tree;
    for (Node& n : t.nodes) n.marked = false;

    // Branch: every node with accepting NBA states spawns a youngest child.
    // Fresh names are the smallest unused, assigned in pre-order.
    std::set<int> used;
    for (const Node& n : t.nodes) used.insert(n.name);
    auto fresh_name = [&used]() {
        int n = 0;
        while (used.count(n)) ++n;
        used.insert(n);
        return n;
    };
    std::vector<int> order;
    auto preorder = [&](auto&& self, int n) -> void {
        order.push_back(n);
        for (int c : t.nodes[static_cast<size_t>(n)].children) self(self, c);
    };
    if (!t.nodes.empty()) preorder(preorder, 0);
    for (int n : order) {
        std::uint64_t acc = t.nodes[static_cast<size_t>(n)].label & nba_accepting_mask_;
        if (acc == 0) continue;
        const int child = static_cast<int>(t.nodes.size());
        t.nodes.push_back(Node{fresh_name(), acc, false, {}});
        t.nodes[static_cast<size_t>(n)].children.push_back(child);
    }

    // Powerset step on every label.
    for (Node& n : t.nodes) n.label = delta(n.label);

    // Horizontal merge: younger siblings lose states owned by older siblings.
    auto strip = [&](auto&& self, int n, std::uint64_t remove) -> void {
        t.nodes[static_cast<size_t>(n)].label &= ~remove;
        for (int c : t.nodes[static_cast<size_t>(n)].children) self(self, c, remove);
    };
    auto horizontal = [&](auto&& self, int n) -> void {
        std::uint64_t taken = 0;
        for (int c : t.nodes[static_cast<size_t>(n)].children) {
            strip(strip, c, taken);
            taken |= t.nodes[static_cast<size_t>(c)].label;
            self(self, c);
        }
    };
    if (!t.nodes.empty()) horizontal(horizontal, 0);

    // Rebuild the tree without empty nodes; a parent whose label equals the
    // union of its children drops all descendants and becomes marked.
    Tree out;
    auto rebuild = [&](auto&& self, int n) -> int {
        const Node& src = t.nodes[static_cast<size_t>(n)];
        if (src.label == 0) return -1;
        const int id = static_cast<int>(out.nodes.size());
        out.nodes.push_back(Node{src.name, src.label, false, {}});
        std::uint64_t child_union = 0;
        for (int c : t.nodes[static_cast<size_t>(n)].children)
            child_union |= t.nodes[static_cast<size_t>(c)].label;
        if (child_union == src.label && src.label != 0) {
            out.nodes[static_cast<size_t>(id)].marked = true;  // vertical merge
            return id;
        }
        for (int c : src.children) {
            int cc = self(self, c);
            if (cc >= 0) out.nodes[static_cast<size_t>(id)].children.push_back(cc);
        }
        return id;
    };
    if (!t.nodes.empty() && t.nodes[0].label != 0) rebuild(rebuild, 0);
    return out;
}

int PathMullerAutomaton::intern(const Tree& tree) {
    const std::string key = tree.key();
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(states_.size());
    states_.push_back(tree);
    std::set<int> present, marked;
    for (const Node& n : tree.nodes) {
        present.insert(n.name);
        if (n.marked) marked.insert(n.name);
    }
    names_present_.push_back(std::move(present));
    names_marked_.push_back(std::move(marked));
    index_.emplace(key, id);
    return id;
}

int PathMullerAutomaton::step(int dstate, const ThetaGraph& theta) {
    auto cached = step_cache_.find({dstate, theta});
    if (cached != step_cache_.end()) return cached->second;
    const int next = intern(apply(states_.at(static_cast<size_t>(dstate)), theta));
    step_cache_.emplace(std::make_pair(dstate, theta), next);
    return next;
}

bool PathMullerAutomaton::muller_accepts(const std::vector<int>& infinity_set) const {
    if (infinity_set.empty()) return false;
    // Rabin over Safra names: some name present in every state of the set and
    // marked in at least one.
    std::set<int> candidates = names_marked_.at(static_cast<size_t>(infinity_set.front()));
    for (int s : infinity_set)
        for (int n : names_marked_.at(static_cast<size_t>(s))) candidates.insert(n);
    for (int name : candidates) {
        bool everywhere = true;
        for (int s : infinity_set)
            if (!names_present_.at(static_cast<size_t>(s)).count(name)) {
                everywhere = false;
                break;
            }
        if (!everywhere) continue;
        for (int s : infinity_set)
            if (names_marked_.at(static_cast<size_t>(s)).count(name)) return true;
    }
    return false;
}

bool PathMullerAutomaton::accepts_lasso(const std::vector<ThetaGraph>& spoke,
                                        const std::vector<ThetaGraph>& period) {
    if (period.empty()) throw PreconditionError("accepts_lasso: empty period");
    int state = initial_state();
    for (const ThetaGraph& g : spoke) state = step(state, g);

    std::map<std::pair<size_t, int>, int> seen;  // (period position, state) -> time
    std::vector<int> visited;                    // state before each period letter
    size_t pos = 0;
    while (true) {
        auto key = std::make_pair(pos, state);
        auto it = seen.find(key);
        if (it != seen.end()) {
            std::set<int> in_set(visited.begin() + it->second, visited.end());
            return muller_accepts(std::vector<int>(in_set.begin(), in_set.end()));
        }
        seen.emplace(key, static_cast<int>(visited.size()));
        visited.push_back(state);
        state = step(state, period[pos]);
        pos = (pos + 1) % period.size();
    }
}

PathMullerAutomaton build_path_muller(int club_count, std::vector<bool> accepting_clubs) {
    return PathMullerAutomaton(club_count, std::move(accepting_clubs));
}

}  // namespace bca
