#include "bca/sigma11.hpp"

#include <algorithm>

#include "bca/oracles.hpp"

namespace bca {

bool is_tree_node(const std::string& v) {
    return std::all_of(v.begin(), v.end(), [](char c) { return c == 'L' || c == 'R'; });
}

namespace {

int dir_rank(char c) {
    switch (c) {
        case 'L': return 0;
        case 'M': return 1;
        case 'R': return 2;
    }
    throw PreconditionError(std::string("not a direction: ") + c);
}

}  // namespace

bool leq_inf(const std::string& v, const std::string& x) {
    const size_t n = std::max(v.size(), x.size());
    for (size_t i = 0; i < n; ++i) {
        int a = dir_rank(i < v.size() ? v[i] : 'M');
        int b = dir_rank(i < x.size() ? x[i] : 'M');
        if (a != b) return a < b;
    }
    return true;
}

bool leq_lex(const std::string& v, const std::string& x) {
    const size_t n = std::min(v.size(), x.size());
    for (size_t i = 0; i < n; ++i) {
        int a = dir_rank(v[i]), b = dir_rank(x[i]);
        if (a != b) return a < b;
    }
    return v.size() <= x.size();
}

Counter b_value(const std::string& v) {
    Counter b = 0;
    for (char c : v) {
        b = checked_mul(b, 2);
        if (c == 'R')
            b = checked_add(b, 1);
        else if (c != 'L')
            throw PreconditionError("b_value: node contains a non-direction");
    }
    return b;
}

Counter m_value(int n) {
    if (n < -1) throw PreconditionError("m_value: argument below -1");
    Counter m = 1;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < i; ++j) m = checked_add(m, m);  // m *= 2^i
    return m;
}

Counter e_value(const std::string& v) {
    return checked_mul(m_value(static_cast<int>(v.size()) - 1), b_value(v));
}

FiniteTreeSet make_tree_set(std::set<std::string> nodes) {
    FiniteTreeSet x;
    for (const std::string& v : nodes)
        if (!is_tree_node(v)) throw PreconditionError("tree set node contains a non-direction");
    for (const std::string& v : nodes)
        x.max_depth = std::max(x.max_depth, static_cast<int>(v.size()));
    x.nodes = std::move(nodes);
    return x;
}

FiniteTreeSet make_left_spine(int depth) {
    FiniteTreeSet x;
    x.max_depth = depth;
    for (int i = 0; i <= depth; ++i) x.nodes.insert(std::string(i, 'L'));
    return x;
}

FiniteTreeSet make_right_spine(int depth) {
    FiniteTreeSet x;
    x.max_depth = depth;
    for (int i = 0; i <= depth; ++i) x.nodes.insert(std::string(i, 'R'));
    return x;
}

FiniteTreeSet make_full_tree(int depth) {
    FiniteTreeSet x;
    x.max_depth = depth;
    std::vector<std::string> layer{""};
    x.nodes.insert("");
    for (int i = 0; i < depth; ++i) {
        std::vector<std::string> next;
        for (const std::string& v : layer)
            for (char d : {'L', 'R'}) {
                next.push_back(v + d);
                x.nodes.insert(v + d);
            }
        layer = std::move(next);
    }
    return x;
}

FiniteTreeSet make_empty_tree(int depth) {
    FiniteTreeSet x;
    x.max_depth = depth;
    return x;
}

std::string block_encode(char s, Counter n, Counter m) {
    if (s != '+' && s != '-') throw PreconditionError("block_encode: sign must be + or -");
    std::string out;
    out.reserve(static_cast<size_t>(n + m) + 4);
    out += '<';
    out.append(static_cast<size_t>(n), 'd');
    out += '|';
    out.append(static_cast<size_t>(m), 'i');
    out += s;
    out += '>';
    return out;
}

namespace {

std::string node_of(Counter b, int depth) {
    std::string v(static_cast<size_t>(depth), 'L');
    for (int i = 0; i < depth; ++i)
        if ((b >> (depth - 1 - i)) & 1) v[static_cast<size_t>(i)] = 'R';
    return v;
}

}  // namespace

std::string alpha_phase(const FiniteTreeSet& X, int n) {
    if (n < 0) throw PreconditionError("alpha_phase: negative phase");
    if (n > X.max_depth) throw PreconditionError("alpha_phase: phase exceeds the set's depth");
    std::string out;
    const Counter count = Counter{1} << n;
    for (Counter bv = 0; bv < count; ++bv) {
        const std::string v = node_of(bv, n);
        const Counter ev = e_value(v);
        for (char d : {'L', 'R'}) {
            char s = (d == 'L' && X.contains(v)) ? '+' : '-';
            out += block_encode(s, ev, e_value(v + d));
        }
    }
    return out;
}

std::string alpha_prefix(const FiniteTreeSet& X, int phases) {
    std::string out;
    for (int n = 0; n < phases; ++n) {
        out += alpha_phase(X, n);
        out += '#';
    }
    return out;
}

namespace a1 {

// Transition indices of build_A1, fixed by construction order.
constexpr int kLoop0Base = 0;   // q0 loops over the seven block letters
constexpr int kChoose = 7;      // q0 -< -> q1
constexpr int kDrain = 8;       // q1 d:-1
constexpr int kBar = 9;         // q1 -| -> q2
constexpr int kInc = 10;        // q2 i:+1
constexpr int kPlus = 11;       // q2 -+ -> qa
constexpr int kMinus = 12;      // q2 -- -> qr
constexpr int kAcceptOut = 13;  // qa -> -> q3
constexpr int kRejectOut = 14;  // qr -> -> q3
constexpr int kLoop3Base = 15;  // q3 loops over the seven block letters
constexpr int kNextPhase = 22;  // q3 -# -> q0

}  // namespace a1

CounterMachine build_A1() {
    CounterMachine m;
    m.name = "A1";
    m.alphabet = {"<", "d", "|", "i", "+", "-", ">", "#"};
    m.counter_kinds = {CounterKind::Blind};
    for (const char* s : {"q0", "q1", "q2", "qa", "qr", "q3"}) m.add_state(s);
    const StateId q0 = 0, q1 = 1, q2 = 2, qa = 3, qr = 4, q3 = 5;
    m.initial = q0;

    auto add = [&m](StateId src, SymbolId a, int delta, StateId dst) {
        Transition t;
        t.source = src;
        t.letter = a;
        t.guards = m.any_guards();
        t.deltas = {delta};
        t.target = dst;
        m.transitions.push_back(std::move(t));
    };

    for (SymbolId a = 0; a < 7; ++a) add(q0, a, 0, q0);  // skim before the choice
    add(q0, 0, 0, q1);                                   // choose a block on '<'
    add(q1, 1, -1, q1);                                  // d: -1
    add(q1, 2, 0, q2);                                   // '|'
    add(q2, 3, +1, q2);                                  // i: +1
    add(q2, 4, 0, qa);                                   // '+'
    add(q2, 5, 0, qr);                                   // '-'
    add(qa, 6, 0, q3);                                   // '>'
    add(qr, 6, 0, q3);
    for (SymbolId a = 0; a < 7; ++a) add(q3, a, 0, q3);  // skim after the choice
    add(q3, 7, 0, q0);                                   // '#'

    m.acceptance = Acceptance::make_buchi({qa});
    return m;
}

bool is_correct_chain(const CorrectChain& chain) {
    if (chain.nodes.empty() || !chain.nodes.front().empty()) return false;
    for (const std::string& v : chain.nodes)
        if (!is_tree_node(v)) return false;
    for (size_t n = 0; n + 1 < chain.nodes.size(); ++n) {
        if (chain.nodes[n + 1].size() != chain.nodes[n].size() + 1) return false;
        if (!leq_inf(chain.nodes[n + 1], chain.nodes[n] + 'R')) return false;
    }
    return true;
}

bool is_witnessing(const CorrectChain& chain, const FiniteTreeSet& X,
                   const std::set<int>& hits) {
    for (int n : hits) {
        if (n < 0 || n + 1 >= static_cast<int>(chain.nodes.size())) return false;
        if (!X.contains(chain.nodes[n])) return false;
        if (!leq_inf(chain.nodes[n + 1], chain.nodes[n] + 'L')) return false;
    }
    return true;
}

ChainWithHits chain_from_descending(const std::vector<std::string>& xs) {
    if (xs.empty())
        throw PreconditionError("chain_from_descending: empty descending sequence");
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!is_tree_node(xs[i]))
            throw PreconditionError("chain_from_descending: not a tree node");
        if (i + 1 < xs.size()) {
            if (xs[i + 1].size() <= xs[i].size())
                throw PreconditionError("chain_from_descending: lengths must strictly increase");
            if (!(leq_inf(xs[i + 1], xs[i]) && xs[i + 1] != xs[i]))
                throw PreconditionError("chain_from_descending: sequence not strictly descending");
        }
    }

    ChainWithHits out;
    size_t i = 0;
    const size_t last_len = xs.back().size();
    for (size_t n = 0; n <= last_len; ++n) {
        if (n > xs[i].size()) ++i;
        out.chain.nodes.push_back(xs[i].substr(0, n));
    }
    // Hits at n = |x_i|; the final index carries no successor in the finite
    // prefix, so it cannot witness.
    for (const std::string& x : xs)
        if (x.size() < last_len) out.hits.insert(static_cast<int>(x.size()));
    return out;
}

RunPrefix chain_to_run(const CorrectChain& chain, const std::set<int>& hits,
                       const FiniteTreeSet& X) {
    if (!is_correct_chain(chain)) throw PreconditionError("chain_to_run: chain is not correct");
    if (!is_witnessing(chain, X, hits))
        throw PreconditionError("chain_to_run: hits are not witnessing for X");
    const int phases = static_cast<int>(chain.nodes.size());
    if (phases - 1 > X.max_depth)
        throw PreconditionError("chain_to_run: chain deeper than the tree set");

    RunPrefix run;
    run.configs.push_back(Configuration{0, {0}});
    Counter c = 0;
    StateId state = 0;

    auto step = [&run, &c, &state](int trans, int delta, StateId target) {
        if (delta < 0 && c == 0)
            throw PreconditionError("chain_to_run: counter underflow (invariant broken)");
        c = delta < 0 ? c - 1 : (delta > 0 ? checked_add(c, 1) : c);
        state = target;
        run.transitions.push_back(trans);
        run.configs.push_back(Configuration{state, {c}});
    };
    auto skim = [&](const std::string& word, bool before_choice) {
        static const std::string letters = "<d|i+->";
        for (char ch : word) {
            int off = static_cast<int>(letters.find(ch));
            step((before_choice ? a1::kLoop0Base : a1::kLoop3Base) + off, 0,
                 before_choice ? 0 : 5);
        }
    };

    for (int n = 0; n < phases; ++n) {
        const std::string& v = chain.nodes[static_cast<size_t>(n)];
        const bool hit = hits.count(n) != 0;
        const char d = hit ? 'L' : 'R';
        const Counter chosen = checked_add(checked_mul(b_value(v), 2), d == 'R' ? 1 : 0);

        const Counter block_count = Counter{1} << n;
        for (Counter bv = 0; bv < block_count; ++bv) {
            const std::string node = node_of(bv, n);
            const Counter ev = e_value(node);
            for (char dd : {'L', 'R'}) {
                const Counter idx = checked_add(checked_mul(bv, 2), dd == 'R' ? 1 : 0);
                const char s = (dd == 'L' && X.contains(node)) ? '+' : '-';
                const Counter evd = e_value(node + dd);
                if (idx != chosen) {
                    skim(block_encode(s, ev, evd), idx < chosen);
                    continue;
                }
                step(a1::kChoose, 0, 1);
                for (Counter t = 0; t < ev; ++t) step(a1::kDrain, -1, 1);
                step(a1::kBar, 0, 2);
                for (Counter t = 0; t < evd; ++t) step(a1::kInc, +1, 2);
                if (s == '+')
                    step(a1::kPlus, 0, 3);
                else
                    step(a1::kMinus, 0, 4);
                step(s == '+' ? a1::kAcceptOut : a1::kRejectOut, 0, 5);
            }
        }
        step(a1::kNextPhase, 0, 0);
    }
    return run;
}

DecodedChain run_to_chain(const RunPrefix& run) {
    const CounterMachine m = build_A1();
    DecodedChain out;

    size_t pos = 0;  // index into run.transitions
    int phase = 0;
    while (true) {
        // Find the extent of the next complete phase (through its '#').
        size_t end = pos;
        bool complete = false;
        while (end < run.transitions.size()) {
            if (run.transitions[end] == a1::kNextPhase) {
                complete = true;
                break;
            }
            ++end;
        }
        if (!complete) break;

        const Counter c_n = run.configs[pos].counters[0];
        if (c_n >= m_value(phase))
            throw PreconditionError("run_to_chain: phase counter breaks the c_n < m(n) bound");

        // Chosen block = number of skimmed '<' before entering q1.
        Counter skimmed = 0;
        size_t i = pos;
        for (; i < end; ++i) {
            if (run.transitions[i] == a1::kChoose) break;
            if (run.transitions[i] == a1::kLoop0Base) ++skimmed;  // '<' in q0
        }
        if (i == end) throw PreconditionError("run_to_chain: phase without a chosen block");

        const std::string v = node_of(skimmed / 2, phase);
        const char d = (skimmed % 2 == 0) ? 'L' : 'R';
        Counter drains = 0, incs = 0;
        bool hit = false;
        for (size_t j = i; j < end; ++j) {
            if (run.transitions[j] == a1::kDrain) ++drains;
            if (run.transitions[j] == a1::kInc) ++incs;
            if (run.transitions[j] == a1::kPlus) hit = true;
        }
        if (drains != e_value(v) || incs != e_value(v + d))
            throw PreconditionError("run_to_chain: block letters disagree with an alpha word");
        if (e_value(v) > c_n)
            throw PreconditionError("run_to_chain: counter below e(v_n) (invariant broken)");

        out.chain.nodes.push_back(v);
        out.phase_counters.push_back(c_n);
        if (hit) out.hits.insert(phase);
        pos = end + 1;
        ++phase;
    }

    if (out.chain.nodes.empty()) out.chain.nodes.push_back("");  // zero complete phases
    return out;
}

int oracle_if_inf(const FiniteTreeSet& X) {
    return static_cast<int>(descending_chain_oracle(X.nodes).size());
}

}  // namespace bca
