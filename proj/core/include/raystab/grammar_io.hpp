#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "raystab/et0l.hpp"

namespace raystab {

// Text format:
//   terminals: a b
//   nonterminals: S A
//   start: S
//   graph G {                          shared edge structure (optional)
//     states 4
//     edge 0 a 1
//   }
//   table alpha {
//     S -> a A b S | eps                regular expression
//     A -> automaton {
//       state p q
//       accept q
//       edge p a q
//     }
//     B -> graph G start 0 accept all self
//   }
//   control: alpha beta* gamma          or  control: automaton { ... }
// '#' starts a comment. Unlisted nonterminals map to themselves.
Et0lGrammar parse_grammar(std::string_view text);
Et0lGrammar load_grammar(const std::filesystem::path& path);
std::string format_grammar(const Et0lGrammar& grammar);
void save_grammar(const Et0lGrammar& grammar, const std::filesystem::path& path);

}  // namespace raystab
