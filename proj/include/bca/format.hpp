#pragma once

#include <string>
#include <vector>

#include "bca/machine.hpp"
#include "bca/semantics.hpp"

namespace bca {

/// Parses the plain-text machine format; throws FormatError with a line
/// number on syntax errors (semantic checks beyond name resolution and the
/// blindness discipline are left to validate()).
CounterMachine parse_machine(const std::string& text);

/// Canonical serialization; parse_machine(serialize_machine(m)) == m.
std::string serialize_machine(const CounterMachine& machine);

/// Splits a CLI word argument into machine symbols: single characters when
/// every alphabet symbol is one character, whitespace-separated tokens
/// otherwise.
std::vector<SymbolId> parse_word(const CounterMachine& machine, const std::string& text);

}  // namespace bca
