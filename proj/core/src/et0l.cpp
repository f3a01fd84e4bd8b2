#include "raystab/et0l.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "raystab/errors.hpp"
#include "yield_engine.hpp"

namespace raystab {

// ---------------------------------------------------------------- SymbolSpace

Symbol SymbolSpace::add(std::string name, bool terminal) {
  if (name.empty()) throw Error("symbol name must be non-empty");
  if (index_.count(name)) throw Error("duplicate symbol '" + name + "'");
  Symbol id = static_cast<Symbol>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  terminal_.push_back(terminal);
  return id;
}

std::optional<Symbol> SymbolSpace::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Symbol> SymbolSpace::terminals() const {
  std::vector<Symbol> out;
  for (Symbol s = 0; s < size(); ++s)
    if (terminal_[s]) out.push_back(s);
  return out;
}

std::vector<Symbol> SymbolSpace::nonterminals() const {
  std::vector<Symbol> out;
  for (Symbol s = 0; s < size(); ++s)
    if (!terminal_[s]) out.push_back(s);
  return out;
}

std::string SymbolSpace::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(' ');
    out += name(w[i]);
  }
  return out;
}

bool SymbolSpace::all_terminal(const Word& w) const {
  return std::all_of(w.begin(), w.end(), [&](Symbol s) { return is_terminal(s); });
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// ---------------------------------------------------------------- Table

void Table::set(Symbol nonterminal, std::shared_ptr<const Language> image) {
  if (images_.size() <= nonterminal) images_.resize(nonterminal + 1);
  images_[nonterminal] = std::move(image);
}

std::vector<Symbol> Table::entries() const {
  std::vector<Symbol> out;
  for (Symbol s = 0; s < images_.size(); ++s)
    if (images_[s]) out.push_back(s);
  return out;
}

std::optional<std::size_t> Et0lGrammar::table_index(std::string_view name) const {
  for (std::size_t i = 0; i < tables.size(); ++i)
    if (tables[i]->name() == name) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------- structure

namespace {

struct Roles {
  std::size_t alpha, beta, gamma;
};

std::optional<Roles> find_roles(const Et0lGrammar& g) {
  if (g.tables.size() != 3) return std::nullopt;
  std::vector<std::array<std::size_t, 3>> orders;
  auto a = g.table_index("alpha"), b = g.table_index("beta"), c = g.table_index("gamma");
  if (a && b && c) orders.push_back({*a, *b, *c});
  std::array<std::size_t, 3> p{0, 1, 2};
  do orders.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (const auto& o : orders) {
    Dfa shape;
    StateIndex s0 = shape.add_state(), s1 = shape.add_state(), s2 = shape.add_state(true);
    shape.add_edge(s0, static_cast<Symbol>(o[0]), s1);
    shape.add_edge(s1, static_cast<Symbol>(o[1]), s1);
    shape.add_edge(s1, static_cast<Symbol>(o[2]), s2);
    if (equivalent(g.control, shape)) return Roles{o[0], o[1], o[2]};
  }
  return std::nullopt;
}

}  // namespace

std::vector<Violation> check_structure(const Et0lGrammar& g) {
  std::vector<Violation> out;
  if (g.start >= g.symbols.size() || g.symbols.is_terminal(g.start))
    out.push_back({"structure", "start symbol must be a nonterminal", ""});
  if (g.tables.size() != 3) {
    out.push_back({"structure", "item 1: expected exactly three tables, found " + std::to_string(g.tables.size()), ""});
    return out;
  }
  auto roles = find_roles(g);
  if (!roles) {
    out.push_back({"structure", "item 2: control is not of the form alpha beta* gamma", ""});
    return out;
  }
  const Table& beta = *g.tables[roles->beta];
  const Table& gamma = *g.tables[roles->gamma];
  for (Symbol v : beta.entries())
    if (accepts_empty_word(*beta.image(v)))
      out.push_back({"structure", "item 3: table " + beta.name() + " maps a nonterminal to the empty word",
                     g.symbols.name(v)});
  for (Symbol v : gamma.entries())
    if (is_empty(*gamma.image(v)))
      out.push_back({"structure", "item 4: table " + gamma.name() + " maps a nonterminal to the empty set",
                     g.symbols.name(v)});
  return out;
}

LimitingGrammar LimitingGrammar::create(Et0lGrammar grammar) {
  auto violations = check_structure(grammar);
  if (!violations.empty()) {
    std::string msg = "grammar is not limiting:";
    for (const auto& v : violations) msg += " " + v.message + (v.witness.empty() ? "" : " (" + v.witness + ")") + ";";
    throw NotLimiting(msg);
  }
  Roles r = *find_roles(grammar);
  return LimitingGrammar(std::move(grammar), r.alpha, r.beta, r.gamma);
}

// ---------------------------------------------------------------- bounded generation

namespace {

struct Caps {
  std::size_t terminals;
  std::size_t nonterminals;
  std::size_t length;
};

struct Counted {
  Word word;
  std::size_t terminals = 0;
  std::size_t nonterminals = 0;
};

// Words of one symbol's image within the caps; sets *pruned when a cap cut something.
std::vector<Counted> image_words(Symbol v, const Table& table, const SymbolSpace& symbols, const Caps& caps,
                                 bool* pruned) {
  const Language* lang = symbols.is_terminal(v) ? nullptr : table.image(v);
  if (lang == nullptr) {
    Counted c{{v}, symbols.is_terminal(v) ? 1u : 0u, symbols.is_terminal(v) ? 0u : 1u};
    if (c.terminals > caps.terminals || c.nonterminals > caps.nonterminals || caps.length < 1) {
      if (pruned) *pruned = true;
      return {};
    }
    return {c};
  }
  std::vector<Counted> out;
  std::vector<std::pair<StateIndex, Counted>> layer{{lang->start(), {}}};
  while (!layer.empty()) {
    std::vector<std::pair<StateIndex, Counted>> next;
    for (auto& [s, c] : layer) {
      if (lang->accepting(s)) out.push_back(c);
      for (const Edge& e : lang->edges(s)) {
        Counted d = c;
        d.word.push_back(e.symbol);
        (symbols.is_terminal(e.symbol) ? d.terminals : d.nonterminals)++;
        if (d.terminals > caps.terminals || d.nonterminals > caps.nonterminals || d.word.size() > caps.length) {
          if (pruned) *pruned = true;
          continue;
        }
        next.emplace_back(e.target, std::move(d));
      }
    }
    layer.swap(next);
  }
  return out;
}

std::vector<Word> apply_capped(const Word& w, const Table& table, const SymbolSpace& symbols, const Caps& caps,
                               bool* pruned) {
  std::map<Word, std::pair<std::size_t, std::size_t>> forms{{Word{}, {0, 0}}};
  for (Symbol v : w) {
    std::vector<Counted> pieces = image_words(v, table, symbols, caps, pruned);
    std::map<Word, std::pair<std::size_t, std::size_t>> next;
    for (const auto& [prefix, counts] : forms)
      for (const Counted& piece : pieces) {
        std::size_t t = counts.first + piece.terminals;
        std::size_t n = counts.second + piece.nonterminals;
        if (t > caps.terminals || n > caps.nonterminals || prefix.size() + piece.word.size() > caps.length) {
          if (pruned) *pruned = true;
          continue;
        }
        Word joined = prefix;
        joined.insert(joined.end(), piece.word.begin(), piece.word.end());
        next.emplace(std::move(joined), std::make_pair(t, n));
      }
    forms.swap(next);
    if (forms.empty()) break;
  }
  std::vector<Word> out;
  for (auto& [form, counts] : forms) out.push_back(form);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

}  // namespace

std::vector<Word> apply_table(const Word& w, const Table& table, const SymbolSpace& symbols, std::size_t len_cap) {
  return apply_capped(w, table, symbols, Caps{len_cap, len_cap, len_cap}, nullptr);
}

GenerateResult generate(const Et0lGrammar& g, std::size_t len_cap, std::size_t control_cap,
                        std::size_t nonterminal_cap) {
  if (nonterminal_cap == 0) nonterminal_cap = 2 * len_cap + 2;
  const Caps caps{len_cap, nonterminal_cap, len_cap + nonterminal_cap};
  GenerateResult result;
  std::set<Word> found;
  using Node = std::pair<Word, StateIndex>;
  std::set<Node> seen;
  std::vector<Node> layer{{Word{g.start}, g.control.start()}};
  seen.insert(layer.front());
  for (std::size_t depth = 0; !layer.empty(); ++depth) {
    std::vector<Node> next;
    for (const auto& [form, c] : layer) {
      if (g.control.accepting(c) && g.symbols.all_terminal(form)) found.insert(form);
      if (depth == control_cap) {
        if (!g.control.edges(c).empty()) result.truncated = true;
        continue;
      }
      for (const Edge& e : g.control.edges(c)) {
        const Table& table = *g.tables.at(e.symbol);
        for (Word& w : apply_capped(form, table, g.symbols, caps, &result.truncated)) {
          Node node{std::move(w), e.target};
          if (seen.insert(node).second) next.push_back(std::move(node));
        }
      }
    }
    layer.swap(next);
  }
  result.words.assign(found.begin(), found.end());
  std::sort(result.words.begin(), result.words.end(), shortlex_less);
  return result;
}

// ---------------------------------------------------------------- derivation counting

namespace {

using Count = std::optional<BigInt>;  // nullopt is infinity

bool is_zero(const Count& c) { return c && *c == 0; }
Count add(const Count& a, const Count& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}
Count get(const std::map<StateIndex, Count>& m, StateIndex s) {
  auto it = m.find(s);
  return it == m.end() ? Count(BigInt(0)) : it->second;
}
Count mul(const Count& a, const Count& b) {
  if (is_zero(a) || is_zero(b)) return BigInt(0);
  if (!a || !b) return std::nullopt;
  return *a * *b;
}

class DerivationCounter {
 public:
  DerivationCounter(const Et0lGrammar& g, const Word& w, const std::vector<std::size_t>& control)
      : g_(g), w_(w), control_(control) {}

  Count count(std::size_t level, Symbol x, std::size_t a, std::size_t b) {
    if (level == control_.size()) return BigInt(b - a == 1 && w_[a] == x ? 1 : 0);
    auto key = std::make_tuple(level, x, a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Table& table = *g_.tables.at(control_[level]);
    const Language* lang = g_.symbols.is_terminal(x) ? nullptr : table.image(x);
    Count result = lang ? through(*lang, level + 1, a, b) : count(level + 1, x, a, b);
    memo_.emplace(key, result);
    return result;
  }

 private:
  // Sum over words of lang of the ways to split w[a, b) among their letters.
  Count through(const Language& lang, std::size_t level, std::size_t a, std::size_t b) {
    std::vector<std::map<StateIndex, Count>> at(b - a + 1);
    at[0][lang.start()] = BigInt(1);
    for (std::size_t p = a; p <= b; ++p) {
      auto& here = at[p - a];
      close_empty(lang, level, p, here);
      for (auto& [s, c] : here) {
        if (is_zero(c)) continue;
        for (const Edge& e : lang.edges(s))
          for (std::size_t q = p + 1; q <= b; ++q) {
            Count k = count(level, e.symbol, p, q);
            if (is_zero(k)) continue;
            auto& row = at[q - a];
            row.insert_or_assign(e.target, add(get(row, e.target), mul(c, k)));
          }
      }
    }
    Count total = BigInt(0);
    for (auto& [s, c] : at[b - a])
      if (lang.accepting(s)) total = add(total, c);
    return total;
  }

  // Propagates counts along edges whose symbol derives the empty word at position p.
  void close_empty(const Language& lang, std::size_t level, std::size_t p, std::map<StateIndex, Count>& here) {
    std::map<StateIndex, std::vector<std::pair<StateIndex, Count>>> out;
    std::vector<StateIndex> todo;
    std::set<StateIndex> seen;
    for (auto& [s, c] : here)
      if (!is_zero(c) && seen.insert(s).second) todo.push_back(s);
    while (!todo.empty()) {
      StateIndex s = todo.back();
      todo.pop_back();
      for (const Edge& e : lang.edges(s)) {
        Count k = count(level, e.symbol, p, p);
        if (is_zero(k)) continue;
        out[s].emplace_back(e.target, k);
        if (seen.insert(e.target).second) todo.push_back(e.target);
      }
    }
    if (out.empty()) return;
    // Topological order over the empty-derivation edges; a cycle means infinitely many trees.
    std::map<StateIndex, int> mark;
    std::vector<StateIndex> order;
    bool cyclic = false;
    std::function<void(StateIndex)> dfs = [&](StateIndex s) {
      mark[s] = 1;
      for (auto& [t, k] : out[s]) {
        if (mark[t] == 1) cyclic = true;
        else if (mark[t] == 0) dfs(t);
      }
      mark[s] = 2;
      order.push_back(s);
    };
    for (StateIndex s : seen)
      if (mark[s] == 0) dfs(s);
    if (cyclic) {
      for (StateIndex s : seen) here.insert_or_assign(s, Count(std::nullopt));
      return;
    }
    std::reverse(order.begin(), order.end());
    for (StateIndex s : order) {
      Count c = get(here, s);
      for (auto& [t, k] : out[s]) here.insert_or_assign(t, add(get(here, t), mul(c, k)));
    }
  }

  const Et0lGrammar& g_;
  const Word& w_;
  const std::vector<std::size_t>& control_;
  std::map<std::tuple<std::size_t, Symbol, std::size_t, std::size_t>, Count> memo_;
};

}  // namespace

std::optional<BigInt> count_derivations(const Et0lGrammar& g, const Word& w, const std::vector<std::size_t>& control) {
  for (std::size_t t : control)
    if (t >= g.tables.size()) throw Error("control word names a missing table");
  // The control word must itself be allowed.
  StateIndex c = g.control.start();
  for (std::size_t t : control) {
    auto next = step(g.control, c, static_cast<Symbol>(t));
    if (!next) return BigInt(0);
    c = *next;
  }
  if (!g.control.accepting(c)) return BigInt(0);
  if (control.empty()) return BigInt(w.size() == 1 && w[0] == g.start ? 1 : 0);
  DerivationCounter counter(g, w, control);
  return counter.count(0, g.start, 0, w.size());
}

// ---------------------------------------------------------------- limiting generation

namespace detail {

std::vector<Symbol> language_symbols(const Language& lang) {
  std::set<Symbol> out;
  for (StateIndex s : reachable_states(lang))
    for (const Edge& e : lang.edges(s)) out.insert(e.symbol);
  return {out.begin(), out.end()};
}

}  // namespace detail

namespace {

std::vector<Word> sorted_words(const std::set<Word>& words) {
  std::vector<Word> out(words.begin(), words.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

}  // namespace

LimitingWords generate_limiting(const LimitingGrammar& grammar, std::size_t max_len, std::size_t max_rounds) {
  detail::RoundEngine<detail::WordSetSemiring> engine(grammar, detail::WordSetSemiring{max_len}, false);
  std::vector<std::set<Word>> tops{engine.top()};
  while (engine.advance()) {
    if (engine.round() > max_rounds)
      throw NoStabilization("limiting generation did not stabilize within " + std::to_string(max_rounds) + " rounds");
    tops.push_back(engine.top());
  }
  const std::set<Word>& final_words = tops.back();
  LimitingWords out;
  out.rounds = tops.size();
  for (std::size_t j = 0; j < tops.size(); ++j) {
    for (const Word& w : tops[j])
      if (!final_words.count(w))
        throw NonLimitingDetected("word '" + grammar.grammar().symbols.format(w) + "' appears at round " +
                                  std::to_string(j) + " but not in the limit");
    if (tops[j] != final_words) out.stabilization_index = j + 1;
  }
  out.words = sorted_words(final_words);
  out.counts.assign(max_len + 1, 0);
  for (const Word& w : out.words) ++out.counts[w.size()];
  return out;
}

std::vector<std::vector<Word>> limiting_rounds(const LimitingGrammar& grammar, std::size_t max_len,
                                               std::size_t rounds) {
  detail::RoundEngine<detail::WordSetSemiring> engine(grammar, detail::WordSetSemiring{max_len}, false);
  std::vector<std::vector<Word>> out;
  std::vector<Word> current = sorted_words(engine.top());
  bool moving = true;
  for (std::size_t n = 0; n <= rounds; ++n) {
    out.push_back(current);
    if (n == rounds) break;
    if (moving) {
      moving = engine.advance();
      if (moving) current = sorted_words(engine.top());
    }
  }
  return out;
}

ValidationReport validate_limiting(const Et0lGrammar& g, std::size_t max_len, std::size_t max_rounds) {
  ValidationReport report;
  report.violations = check_structure(g);
  if (!report.ok()) return report;
  LimitingGrammar lg = LimitingGrammar::create(g);
  constexpr std::size_t kMaxReported = 20;

  auto rounds = limiting_rounds(lg, max_len, max_rounds);
  std::vector<std::set<Word>> sets;
  for (const auto& r : rounds) sets.emplace_back(r.begin(), r.end());
  for (std::size_t j = 0; j < sets.size() && report.violations.size() < kMaxReported; ++j)
    for (const Word& w : sets[j]) {
      bool lost = false;
      for (std::size_t k = j + 1; k < sets.size() && !lost; ++k)
        if (!sets[k].count(w)) {
          report.violations.push_back({"persistence",
                                       "word present at round " + std::to_string(j) + " is missing at round " +
                                           std::to_string(k),
                                       g.symbols.format(w)});
          lost = true;
        }
      if (lost) break;
    }

  try {
    detail::RoundEngine<detail::FormCountSemiring> engine(lg, detail::FormCountSemiring{max_len}, true);
    for (std::size_t n = 0; n <= max_rounds && report.violations.size() < kMaxReported; ++n) {
      for (const auto& [form, count] : engine.top())
        if (count > 1) {
          std::string how = count == detail::FormCountSemiring::kMany ? "many" : std::to_string(count);
          report.violations.push_back({"ambiguity",
                                       "form has " + how + " derivation trees at round " + std::to_string(n),
                                       g.symbols.format(form)});
          if (report.violations.size() >= kMaxReported) break;
        }
      if (n < max_rounds && !engine.advance()) break;
    }
  } catch (const DivergentSeries&) {
    report.violations.push_back({"ambiguity", "some bounded form has infinitely many derivation trees", ""});
  }
  return report;
}

}  // namespace raystab
