#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bca/types.hpp"

namespace bca {

/// Per-counter transition guard. Blind counters always carry Any.
enum class Guard : unsigned char { Zero, Positive, Any };

enum class CounterKind : unsigned char { Blind, Testable };

/// One transition of a counter machine.
///
/// Update order on firing: copies first (all simultaneous, reading the
/// pre-transition counter values), then deltas on every counter. A counter
/// that is both copy target and delta target ends at copied value + delta.
struct Transition {
    StateId source = 0;
    SymbolId letter = 0;
    std::vector<Guard> guards;                  // size k
    std::vector<int> deltas;                    // size k, entries in {-1,0,+1}
    std::vector<std::pair<int, int>> copies;    // (dst, src) counter pairs
    StateId target = 0;

    bool operator==(const Transition&) const = default;
};

struct Acceptance {
    enum class Kind { Buchi, Muller };

    Kind kind = Kind::Buchi;
    std::vector<StateId> buchi;                 // sorted, unique
    std::vector<std::vector<StateId>> muller;   // each sorted, unique

    static Acceptance make_buchi(std::vector<StateId> accepting);
    static Acceptance make_muller(std::vector<std::vector<StateId>> family);

    bool buchi_accepts(StateId q) const;
    /// Exact-set membership of `states` (sorted, unique) in the Muller family.
    bool muller_contains(const std::vector<StateId>& states) const;

    bool operator==(const Acceptance&) const = default;
};

struct Configuration {
    StateId state = 0;
    std::vector<Counter> counters;

    bool operator==(const Configuration&) const = default;
    auto operator<=>(const Configuration&) const = default;
};

/// A real-time k-counter machine with Buchi or Muller acceptance.
///
/// States and symbols are indices into `states` / `alphabet`. The blindness
/// discipline is not enforced by construction; `validate` reports breaches.
struct CounterMachine {
    std::string name;
    std::vector<std::string> alphabet;
    std::vector<CounterKind> counter_kinds;
    std::vector<std::string> states;
    StateId initial = 0;
    std::vector<Transition> transitions;
    Acceptance acceptance;
    bool copy_capable = false;

    int counter_count() const { return static_cast<int>(counter_kinds.size()); }
    int state_count() const { return static_cast<int>(states.size()); }
    int symbol_count() const { return static_cast<int>(alphabet.size()); }

    std::optional<StateId> state_index(const std::string& name) const;
    std::optional<SymbolId> symbol_index(const std::string& name) const;

    StateId add_state(const std::string& name);
    SymbolId require_symbol(const std::string& name) const;

    /// All-blind guard/delta vectors of the right arity.
    std::vector<Guard> any_guards() const { return std::vector<Guard>(counter_kinds.size(), Guard::Any); }
    std::vector<int> zero_deltas() const { return std::vector<int>(counter_kinds.size(), 0); }

    Configuration initial_configuration() const;

    bool operator==(const CounterMachine&) const = default;
};

struct Violation {
    std::string code;      // stable identifier, e.g. "guard on blind counter"
    std::string message;   // human-readable detail
};

/// Structural validation. Empty report iff all model invariants hold:
/// transitions reference existing states/symbols with matching arity, blind
/// counters carry only Any guards, zero-guarded deltas are in {0,+1},
/// copies only on copy-capable machines, acceptance references real states.
std::vector<Violation> validate(const CounterMachine& machine);

/// True iff for every (state, letter, guard valuation in {0,1}^k) exactly one
/// transition applies.
bool is_deterministic(const CounterMachine& machine);

/// Simulation order: same state and coordinate-wise c1 >= c2.
bool simulates(const Configuration& c1, const Configuration& c2);

}  // namespace bca
