#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bca/machine.hpp"
#include "bca/semantics.hpp"

namespace bca {

/// Tree nodes are words over the directions L and R; M is reserved for order
/// comparisons only and never occurs in a node.
bool is_tree_node(const std::string& v);

/// Infix order: v M^omega lexicographically <= x M^omega with L < M < R.
bool leq_inf(const std::string& v, const std::string& x);
/// Plain lexicographic order with L < M < R (the empty word is minimal).
bool leq_lex(const std::string& v, const std::string& x);

/// Binary value of a node: b(eps)=0, b(vL)=2b(v), b(vR)=2b(v)+1.
Counter b_value(const std::string& v);
/// m(-1)=1, m(n)=m(n-1)*2^n; checked 64-bit.
Counter m_value(int n);
/// e(v) = m(|v|-1) * b(v).
Counter e_value(const std::string& v);

struct FiniteTreeSet {
    std::set<std::string> nodes;
    int max_depth = 0;

    bool contains(const std::string& v) const { return nodes.count(v) != 0; }
};

FiniteTreeSet make_tree_set(std::set<std::string> nodes);
FiniteTreeSet make_left_spine(int depth);
FiniteTreeSet make_right_spine(int depth);
FiniteTreeSet make_full_tree(int depth);
FiniteTreeSet make_empty_tree(int depth);

/// The block <' d^n '|' i^m s '>' over the seven-letter block alphabet.
std::string block_encode(char s, Counter n, Counter m);

/// Phase u_n: for every v in {L,R}^n and d in {L,R} in lexicographic (v,d)
/// order, the block B^s(-e(v), +e(vd)) with s='+' iff v in X and d=L.
std::string alpha_phase(const FiniteTreeSet& X, int n);

/// Phases 0..phases-1 joined with a trailing '#' after each phase.
std::string alpha_prefix(const FiniteTreeSet& X, int phases);

/// The six-state one-blind-counter Buchi automaton over < d | i + - > #
/// whose runs choose one block per phase and accept iff infinitely many
/// chosen blocks are accepting.
CounterMachine build_A1();

struct CorrectChain {
    std::vector<std::string> nodes;  // v_0 = eps, |v_{n+1}| = |v_n| + 1
};

bool is_correct_chain(const CorrectChain& chain);
/// Every hit index n must satisfy v_n in X and v_{n+1} <=_inf v_n L.
bool is_witnessing(const CorrectChain& chain, const FiniteTreeSet& X,
                   const std::set<int>& hits);

/// Interpolates a strictly <_inf-descending, length-increasing node sequence
/// into a correct chain via prefix extraction; hits are at n = |x_i|.
struct ChainWithHits {
    CorrectChain chain;
    std::set<int> hits;
};
ChainWithHits chain_from_descending(const std::vector<std::string>& xs);

/// Builds the run of A1 over alpha_prefix(X, chain length - 1) that chooses
/// the (v_n, L) block at hit phases and the (v_n, R) block otherwise.
RunPrefix chain_to_run(const CorrectChain& chain, const std::set<int>& hits,
                       const FiniteTreeSet& X);

/// Decodes a run of A1 over an alpha prefix back into the chosen chain and
/// the hit phases; validates e(v_n) <= c_n < m(n) along the way.
struct DecodedChain {
    CorrectChain chain;
    std::set<int> hits;
    std::vector<Counter> phase_counters;  // c_n before each completed phase
};
DecodedChain run_to_chain(const RunPrefix& run);

/// Finite-depth IF_inf proxy: length of the longest strictly <_inf-descending,
/// length-increasing chain inside X.
int oracle_if_inf(const FiniteTreeSet& X);

}  // namespace bca
