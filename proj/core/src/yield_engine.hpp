#pragma once

// Fixpoint evaluation of limiting grammars over a pluggable semiring.
// Y(A, 0) sums gamma(A); Y(A, n + 1) sums beta(A) over Y(., n); the top value
// of round n sums alpha(start) over Y(., n).

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "raystab/automaton.hpp"
#include "raystab/errors.hpp"
#include "raystab/et0l.hpp"
#include "raystab/numeric.hpp"

namespace raystab::detail {

// Sums the semiring value of every accepted path. value_of(symbol) returns a
// pointer to the symbol's value or nullptr for zero.
template <class S, class ValueOf>
typename S::Value automaton_sum(const S& sr, const Language& lang, ValueOf&& value_of) {
  using V = typename S::Value;
  std::unordered_map<StateIndex, V> acc;
  std::unordered_map<StateIndex, V> pending;
  std::deque<StateIndex> queue;
  std::unordered_set<StateIndex> queued;
  pending.emplace(lang.start(), sr.one());
  queue.push_back(lang.start());
  queued.insert(lang.start());
  std::size_t work = 0;
  while (!queue.empty()) {
    StateIndex s = queue.front();
    queue.pop_front();
    queued.erase(s);
    auto node = pending.extract(s);
    V fresh = sr.absorb(acc[s], node.mapped());
    if (sr.is_zero(fresh)) continue;
    if (++work > 200000 + 64 * (acc.size() + 1) * sr.depth())
      throw DivergentSeries("infinitely many derivations contribute to a bounded coefficient");
    for (const Edge& e : lang.edges(s)) {
      const V* w = value_of(e.symbol);
      if (w == nullptr) continue;
      V contribution = sr.product(fresh, *w);
      if (sr.is_zero(contribution)) continue;
      sr.add(pending[e.target], contribution);
      if (queued.insert(e.target).second) queue.push_back(e.target);
    }
  }
  V result = sr.zero();
  for (auto& [s, v] : acc)
    if (lang.accepting(s)) sr.add(result, v);
  return result;
}

// Sets of words with at most max_len symbols.
struct WordSetSemiring {
  using Value = std::set<Word>;
  std::size_t max_len;

  Value zero() const { return {}; }
  Value one() const { return {Word{}}; }
  Value unit(Symbol s) const { return {Word{s}}; }
  bool is_zero(const Value& v) const { return v.empty(); }
  std::size_t depth() const { return max_len + 2; }
  Value product(const Value& x, const Value& y) const {
    Value out;
    for (const Word& a : x)
      for (const Word& b : y) {
        if (a.size() + b.size() > max_len) continue;
        Word w = a;
        w.insert(w.end(), b.begin(), b.end());
        out.insert(std::move(w));
      }
    return out;
  }
  void add(Value& acc, const Value& delta) const { acc.insert(delta.begin(), delta.end()); }
  Value absorb(Value& acc, const Value& delta) const {
    Value fresh;
    for (const Word& w : delta)
      if (acc.insert(w).second) fresh.insert(w);
    return fresh;
  }
};

// Truncated power series in one variable counting symbols; empty vector is zero.
struct SeriesSemiring {
  using Value = std::vector<BigInt>;
  std::size_t max_len;

  Value zero() const { return {}; }
  Value one() const {
    Value v(max_len + 1, 0);
    v[0] = 1;
    return v;
  }
  Value unit(Symbol) const {
    Value v(max_len + 1, 0);
    if (max_len >= 1) v[1] = 1;
    return v;
  }
  bool is_zero(const Value& v) const {
    return std::all_of(v.begin(), v.end(), [](const BigInt& c) { return c == 0; });
  }
  std::size_t depth() const { return max_len + 2; }
  Value product(const Value& x, const Value& y) const {
    if (x.empty() || y.empty()) return {};
    Value out(max_len + 1, 0);
    for (std::size_t i = 0; i <= max_len; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; i + j <= max_len; ++j)
        if (y[j] != 0) out[i + j] += x[i] * y[j];
    }
    return out;
  }
  void add(Value& acc, const Value& delta) const {
    if (delta.empty()) return;
    if (acc.empty()) acc.assign(max_len + 1, 0);
    for (std::size_t i = 0; i <= max_len; ++i) acc[i] += delta[i];
  }
  Value absorb(Value& acc, const Value& delta) const {
    add(acc, delta);
    return delta;
  }
};

// Sentential forms of bounded length with saturating derivation counts.
struct FormCountSemiring {
  using Value = std::map<Word, std::uint64_t>;
  static constexpr std::uint64_t kMany = ~std::uint64_t{0};
  std::size_t max_len;

  static std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kMany - b ? kMany : a + b; }
  static std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kMany / b ? kMany : a * b;
  }

  Value zero() const { return {}; }
  Value one() const { return {{Word{}, 1}}; }
  Value unit(Symbol s) const { return {{Word{s}, 1}}; }
  bool is_zero(const Value& v) const { return v.empty(); }
  std::size_t depth() const { return max_len + 2; }
  Value product(const Value& x, const Value& y) const {
    Value out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) {
        if (a.size() + b.size() > max_len) continue;
        Word w = a;
        w.insert(w.end(), b.begin(), b.end());
        auto& slot = out[w];
        slot = sat_add(slot, sat_mul(ca, cb));
      }
    return out;
  }
  void add(Value& acc, const Value& delta) const {
    for (const auto& [w, c] : delta) {
      auto& slot = acc[w];
      slot = sat_add(slot, c);
    }
  }
  Value absorb(Value& acc, const Value& delta) const {
    add(acc, delta);
    return delta;
  }
};

std::vector<Symbol> language_symbols(const Language& lang);

template <class S>
class RoundEngine {
 public:
  using V = typename S::Value;

  // With keep_nonterminals, nonterminals left by gamma count as themselves.
  RoundEngine(const LimitingGrammar& grammar, S sr, bool keep_nonterminals)
      : grammar_(grammar), sr_(std::move(sr)), keep_nonterminals_(keep_nonterminals) {
    const Et0lGrammar& g = grammar.grammar();
    slot_.assign(g.symbols.size(), -1);
    std::vector<Symbol> seeds;
    if (const Language* a = grammar.alpha().image(g.start))
      seeds = language_symbols(*a);
    else
      seeds = {g.start};
    for (Symbol s : seeds) visit(s);
    for (std::size_t i = 0; i < nonterminals_.size(); ++i) {
      Symbol a = nonterminals_[i];
      if (const Language* b = grammar.beta().image(a))
        for (Symbol s : language_symbols(*b)) {
          if (g.symbols.is_terminal(s)) continue;
          visit(s);
          dependents_[static_cast<std::size_t>(slot_[s])].push_back(i);
        }
    }
    for (Symbol s = 0; s < g.symbols.size(); ++s) units_.push_back(sr_.unit(s));
    values_.resize(nonterminals_.size());
    for (std::size_t i = 0; i < nonterminals_.size(); ++i) values_[i] = finish(nonterminals_[i]);
    changed_.resize(nonterminals_.size());
    for (std::size_t i = 0; i < nonterminals_.size(); ++i) changed_[i] = i;
  }

  std::size_t round() const { return round_; }
  std::size_t nonterminal_count() const { return nonterminals_.size(); }

  V top() const {
    const Et0lGrammar& g = grammar_.grammar();
    const Language* a = grammar_.alpha().image(g.start);
    if (a == nullptr) return values_[static_cast<std::size_t>(slot_[g.start])];
    return automaton_sum(sr_, *a, [&](Symbol s) { return current(s); });
  }

  // Moves to the next round; false when every nonterminal value is unchanged.
  bool advance() {
    std::set<std::size_t> todo;
    for (std::size_t i : changed_)
      for (std::size_t j : dependents_[i]) todo.insert(j);
    std::vector<std::pair<std::size_t, V>> updates;
    for (std::size_t i : todo) {
      const Language* b = grammar_.beta().image(nonterminals_[i]);
      if (b == nullptr) continue;
      V next = automaton_sum(sr_, *b, [&](Symbol s) { return current(s); });
      if (next != values_[i]) updates.emplace_back(i, std::move(next));
    }
    changed_.clear();
    for (auto& [i, v] : updates) {
      values_[i] = std::move(v);
      changed_.push_back(i);
    }
    ++round_;
    return !changed_.empty();
  }

 private:
  void visit(Symbol s) {
    const Et0lGrammar& g = grammar_.grammar();
    if (g.symbols.is_terminal(s) || slot_[s] >= 0) return;
    slot_[s] = static_cast<std::int64_t>(nonterminals_.size());
    nonterminals_.push_back(s);
    dependents_.emplace_back();
  }

  const V* current(Symbol s) const {
    if (grammar_.grammar().symbols.is_terminal(s)) return &units_[s];
    const V& v = values_[static_cast<std::size_t>(slot_[s])];
    return sr_.is_zero(v) ? nullptr : &v;
  }

  V finish(Symbol a) const {
    const Et0lGrammar& g = grammar_.grammar();
    auto leaf = [&](Symbol s) -> const V* {
      if (g.symbols.is_terminal(s) || keep_nonterminals_) return &units_[s];
      return nullptr;
    };
    if (const Language* c = grammar_.gamma().image(a)) return automaton_sum(sr_, *c, leaf);
    const V* v = leaf(a);
    return v ? *v : sr_.zero();
  }

  const LimitingGrammar& grammar_;
  S sr_;
  bool keep_nonterminals_;
  std::vector<std::int64_t> slot_;
  std::vector<Symbol> nonterminals_;
  std::vector<std::vector<std::size_t>> dependents_;
  std::vector<V> units_;
  std::vector<V> values_;
  std::vector<std::size_t> changed_;
  std::size_t round_ = 0;
};

}  // namespace raystab::detail
