#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "raystab/automaton.hpp"
#include "raystab/numeric.hpp"
#include "raystab/tree.hpp"

namespace raystab {

// Terminals and nonterminals share one id space; ids give the output order.
class SymbolSpace {
 public:
  Symbol add_terminal(std::string name) { return add(std::move(name), true); }
  Symbol add_nonterminal(std::string name) { return add(std::move(name), false); }

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(s); }
  bool is_terminal(Symbol s) const { return terminal_.at(s); }
  std::optional<Symbol> find(std::string_view name) const;
  std::vector<Symbol> terminals() const;
  std::vector<Symbol> nonterminals() const;

  // Space separated names; "e" for the empty word.
  std::string format(const Word& w) const;
  bool all_terminal(const Word& w) const;

 private:
  Symbol add(std::string name, bool terminal);

  std::vector<std::string> names_;
  std::vector<bool> terminal_;
  std::unordered_map<std::string, Symbol> index_;
};

// Nonterminals without an entry map to themselves, as do all terminals.
class Table {
 public:
  explicit Table(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set(Symbol nonterminal, std::shared_ptr<const Language> image);
  // nullptr means the identity image {v}.
  const Language* image(Symbol v) const { return v < images_.size() ? images_[v].get() : nullptr; }
  std::shared_ptr<const Language> shared_image(Symbol v) const {
    return v < images_.size() ? images_[v] : nullptr;
  }
  std::vector<Symbol> entries() const;

 private:
  std::string name_;
  std::vector<std::shared_ptr<const Language>> images_;
};

struct Et0lGrammar {
  SymbolSpace symbols;
  std::vector<std::shared_ptr<const Table>> tables;
  Dfa control;  // over table indices
  Symbol start = 0;

  std::optional<std::size_t> table_index(std::string_view name) const;
};

struct Violation {
  std::string kind;  // "structure", "persistence" or "ambiguity"
  std::string message;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Items 1-4 of the limiting definition: three tables, control alpha beta* gamma,
// beta epsilon-free, gamma images non-empty.
std::vector<Violation> check_structure(const Et0lGrammar& grammar);

class LimitingGrammar {
 public:
  // Throws NotLimiting listing the structural violations.
  static LimitingGrammar create(Et0lGrammar grammar);

  const Et0lGrammar& grammar() const { return grammar_; }
  const Table& alpha() const { return *grammar_.tables[alpha_]; }
  const Table& beta() const { return *grammar_.tables[beta_]; }
  const Table& gamma() const { return *grammar_.tables[gamma_]; }

 private:
  LimitingGrammar(Et0lGrammar grammar, std::size_t a, std::size_t b, std::size_t c)
      : grammar_(std::move(grammar)), alpha_(a), beta_(b), gamma_(c) {}

  Et0lGrammar grammar_;
  std::size_t alpha_, beta_, gamma_;
};

// All w' with w ->table w' and |w'| <= len_cap, in length-then-symbol order.
std::vector<Word> apply_table(const Word& w, const Table& table, const SymbolSpace& symbols, std::size_t len_cap);

struct GenerateResult {
  std::vector<Word> words;
  bool truncated = false;  // some form was pruned by a cap
};

// Bounded breadth-first derivation. Complete only up to the caps.
GenerateResult generate(const Et0lGrammar& grammar, std::size_t len_cap, std::size_t control_cap,
                        std::size_t nonterminal_cap = 0);

// Number of derivation trees of w from the start symbol along the control word
// (table indices); nullopt means infinitely many.
std::optional<BigInt> count_derivations(const Et0lGrammar& grammar, const Word& w,
                                        const std::vector<std::size_t>& control);

struct LimitingWords {
  std::vector<Word> words;          // length, then symbol order
  std::vector<std::size_t> counts;  // by length
  std::size_t stabilization_index = 0;
  std::size_t rounds = 0;           // rounds computed before certification
};

LimitingWords generate_limiting(const LimitingGrammar& grammar, std::size_t max_len, std::size_t max_rounds = 1024);
// words(S alpha beta^n gamma) restricted to length max_len, for n = 0..rounds.
std::vector<std::vector<Word>> limiting_rounds(const LimitingGrammar& grammar, std::size_t max_len,
                                               std::size_t rounds);

ValidationReport validate_limiting(const Et0lGrammar& grammar, std::size_t max_len, std::size_t max_rounds);

bool shortlex_less(const Word& a, const Word& b);

}  // namespace raystab
