#include "raystab/automaton.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "raystab/errors.hpp"

namespace raystab {

std::optional<StateIndex> step(const Language& lang, StateIndex state, Symbol symbol) {
  auto edges = lang.edges(state);
  auto it = std::lower_bound(edges.begin(), edges.end(), symbol,
                             [](const Edge& e, Symbol s) { return e.symbol < s; });
  if (it == edges.end() || it->symbol != symbol) return std::nullopt;
  return it->target;
}

bool accepts(const Language& lang, const Word& w) {
  StateIndex s = lang.start();
  for (Symbol x : w) {
    auto t = step(lang, s, x);
    if (!t) return false;
    s = *t;
  }
  return lang.accepting(s);
}

bool accepts_empty_word(const Language& lang) { return lang.accepting(lang.start()); }

std::vector<StateIndex> reachable_states(const Language& lang) {
  std::vector<StateIndex> order{lang.start()};
  std::set<StateIndex> seen{lang.start()};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const Edge& e : lang.edges(order[i]))
      if (seen.insert(e.target).second) order.push_back(e.target);
  return order;
}

bool is_empty(const Language& lang) {
  for (StateIndex s : reachable_states(lang))
    if (lang.accepting(s)) return false;
  return true;
}

std::vector<Word> words_up_to(const Language& lang, std::size_t max_len) {
  std::vector<Word> out;
  std::vector<std::pair<StateIndex, Word>> layer{{lang.start(), {}}};
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    std::vector<std::pair<StateIndex, Word>> next;
    for (auto& [s, w] : layer) {
      if (lang.accepting(s)) out.push_back(w);
      if (len == max_len) continue;
      for (const Edge& e : lang.edges(s)) {
        Word v = w;
        v.push_back(e.symbol);
        next.emplace_back(e.target, std::move(v));
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    layer.swap(next);
  }
  return out;
}

bool equivalent(const Language& lhs, const Language& rhs) {
  constexpr StateIndex kDead = ~StateIndex{0};
  using Pair = std::pair<StateIndex, StateIndex>;
  std::set<Pair> seen;
  std::vector<Pair> todo{{lhs.start(), rhs.start()}};
  seen.insert(todo.front());
  while (!todo.empty()) {
    auto [p, q] = todo.back();
    todo.pop_back();
    bool acc_p = p != kDead && lhs.accepting(p);
    bool acc_q = q != kDead && rhs.accepting(q);
    if (acc_p != acc_q) return false;
    std::set<Symbol> symbols;
    if (p != kDead)
      for (const Edge& e : lhs.edges(p)) symbols.insert(e.symbol);
    if (q != kDead)
      for (const Edge& e : rhs.edges(q)) symbols.insert(e.symbol);
    for (Symbol x : symbols) {
      StateIndex p2 = kDead, q2 = kDead;
      if (p != kDead)
        if (auto t = step(lhs, p, x)) p2 = *t;
      if (q != kDead)
        if (auto t = step(rhs, q, x)) q2 = *t;
      if (seen.insert({p2, q2}).second) todo.emplace_back(p2, q2);
    }
  }
  return true;
}

// ---------------------------------------------------------------- Dfa

Dfa Dfa::empty_language() {
  Dfa d;
  d.add_state(false);
  return d;
}

Dfa Dfa::epsilon() {
  Dfa d;
  d.add_state(true);
  return d;
}

Dfa Dfa::single_word(const Word& w) {
  Dfa d;
  StateIndex s = d.add_state(w.empty());
  for (std::size_t i = 0; i < w.size(); ++i) {
    StateIndex t = d.add_state(i + 1 == w.size());
    d.add_edge(s, w[i], t);
    s = t;
  }
  return d;
}

StateIndex Dfa::add_state(bool accepting) {
  accepting_.push_back(accepting);
  edges_.emplace_back();
  return static_cast<StateIndex>(accepting_.size() - 1);
}

void Dfa::add_edge(StateIndex from, Symbol symbol, StateIndex to) {
  if (from >= size() || to >= size()) throw Error("automaton edge references a missing state");
  auto& list = edges_[from];
  auto it = std::lower_bound(list.begin(), list.end(), symbol, [](const Edge& e, Symbol s) { return e.symbol < s; });
  if (it != list.end() && it->symbol == symbol) {
    if (it->target != to) throw Error("automaton is not deterministic");
    return;
  }
  list.insert(it, Edge{symbol, to});
}

// ---------------------------------------------------------------- GraphLanguage

GraphLanguage::GraphLanguage(std::shared_ptr<const SharedGraph> graph, StateIndex start, Accept mode,
                             std::optional<StateIndex> marked, std::optional<Symbol> self)
    : graph_(std::move(graph)), graph_start_(start), start_(start), mode_(mode), marked_(marked), self_(self) {
  if (start >= graph_->edges.size()) throw Error("graph language start out of range");
  if (mode != Accept::All && !marked) throw Error("graph language needs a marked state");
  if (self) {
    // Synthetic start = n + 1 carrying the extra edge to the accepting sink n.
    const StateIndex n = static_cast<StateIndex>(graph_->edges.size());
    start_ = n + 1;
    start_edges_ = graph_->edges[start];
    auto it = std::lower_bound(start_edges_.begin(), start_edges_.end(), *self,
                               [](const Edge& e, Symbol s) { return e.symbol < s; });
    if (it != start_edges_.end() && it->symbol == *self) throw Error("self symbol already labels an edge");
    start_edges_.insert(it, Edge{*self, n});
  }
}

bool GraphLanguage::accepting(StateIndex state) const {
  const StateIndex n = static_cast<StateIndex>(graph_->edges.size());
  if (self_ && state == n) return true;
  if (self_ && state == n + 1) state = graph_start_;
  switch (mode_) {
    case Accept::All:
      return true;
    case Accept::Only:
      return state == *marked_;
    case Accept::Except:
      return state != *marked_;
  }
  return false;
}

std::span<const Edge> GraphLanguage::edges(StateIndex state) const {
  const StateIndex n = static_cast<StateIndex>(graph_->edges.size());
  if (self_ && state == n) return {};
  if (self_ && state == n + 1) return start_edges_;
  return graph_->edges[state];
}

}  // namespace raystab
