#pragma once

// Nondeterministic automata with epsilon moves, used while building regular
// images before they are handed out as deterministic languages.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "raystab/automaton.hpp"
#include "raystab/errors.hpp"

namespace raystab::detail {

struct Nfa {
  static constexpr Symbol kEps = ~Symbol{0};
  std::vector<std::vector<std::pair<Symbol, std::size_t>>> out;
  std::vector<bool> accepting;

  std::size_t add(bool accept = false) {
    out.emplace_back();
    accepting.push_back(accept);
    return out.size() - 1;
  }
  void link(std::size_t from, std::size_t to) { out[from].emplace_back(kEps, to); }
  void add_edge(std::size_t from, Symbol s, std::size_t to) { out[from].emplace_back(s, to); }

  std::set<std::size_t> closure(std::set<std::size_t> states) const {
    std::vector<std::size_t> todo(states.begin(), states.end());
    while (!todo.empty()) {
      std::size_t s = todo.back();
      todo.pop_back();
      for (auto [sym, t] : out[s])
        if (sym == kEps && states.insert(t).second) todo.push_back(t);
    }
    return states;
  }
};

// Subset construction from the given start state.
inline Dfa determinize(const Nfa& nfa, std::size_t start, std::size_t state_cap, const std::string& what) {
  Dfa dfa;
  std::map<std::set<std::size_t>, StateIndex> ids;
  std::vector<std::set<std::size_t>> subsets;
  auto intern = [&](std::set<std::size_t> subset) {
    auto it = ids.find(subset);
    if (it != ids.end()) return it->second;
    if (subsets.size() >= state_cap) throw CapExceeded(what + " determinization exceeds state cap");
    bool accept = false;
    for (std::size_t s : subset) accept = accept || nfa.accepting[s];
    StateIndex id = dfa.add_state(accept);
    ids.emplace(subset, id);
    subsets.push_back(std::move(subset));
    return id;
  };
  dfa.set_start(intern(nfa.closure({start})));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::map<Symbol, std::set<std::size_t>> moves;
    for (std::size_t s : subsets[i])
      for (auto [sym, t] : nfa.out[s])
        if (sym != Nfa::kEps) moves[sym].insert(t);
    for (auto& [sym, targets] : moves) {
      StateIndex to = intern(nfa.closure(std::move(targets)));
      dfa.add_edge(static_cast<StateIndex>(i), sym, to);
    }
  }
  return dfa;
}

}  // namespace raystab::detail
