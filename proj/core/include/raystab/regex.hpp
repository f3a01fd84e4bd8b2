#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

#include "raystab/automaton.hpp"

namespace raystab {

using SymbolResolver = std::function<std::optional<Symbol>(std::string_view)>;

// Regular expression over whitespace separated symbol names with ( ) | * + ?.
// "eps" denotes the empty word and "empty" the empty language.
// Throws ParseError on bad syntax or unknown names, CapExceeded when the
// determinized automaton would exceed state_cap states.
Dfa compile_regex(std::string_view text, const SymbolResolver& resolve, std::size_t state_cap = 200000);

}  // namespace raystab
