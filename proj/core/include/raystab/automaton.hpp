#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raystab/tree.hpp"

namespace raystab {

using Symbol = std::uint32_t;
using StateIndex = std::uint32_t;

struct Edge {
  Symbol symbol;
  StateIndex target;
};

// A regular language presented by a deterministic automaton. Edges of a state
// are sorted by symbol with no symbol repeated; missing edges go to a dead state.
class Language {
 public:
  virtual ~Language() = default;
  virtual StateIndex start() const = 0;
  virtual bool accepting(StateIndex state) const = 0;
  virtual std::span<const Edge> edges(StateIndex state) const = 0;
};

std::optional<StateIndex> step(const Language& lang, StateIndex state, Symbol symbol);
bool accepts(const Language& lang, const Word& w);
bool accepts_empty_word(const Language& lang);
bool is_empty(const Language& lang);
// States reachable from the start, in breadth-first order.
std::vector<StateIndex> reachable_states(const Language& lang);
// Words of length at most max_len, in length-then-symbol order.
std::vector<Word> words_up_to(const Language& lang, std::size_t max_len);
bool equivalent(const Language& lhs, const Language& rhs);

class Dfa final : public Language {
 public:
  Dfa() = default;

  static Dfa empty_language();
  static Dfa epsilon();
  static Dfa single_word(const Word& w);

  StateIndex add_state(bool accepting = false);
  void set_accepting(StateIndex state, bool accepting = true) { accepting_[state] = accepting; }
  void set_start(StateIndex state) { start_ = state; }
  // Throws if the state already has an edge on this symbol to another target.
  void add_edge(StateIndex from, Symbol symbol, StateIndex to);
  std::size_t size() const { return accepting_.size(); }

  StateIndex start() const override { return start_; }
  bool accepting(StateIndex state) const override { return accepting_[state]; }
  std::span<const Edge> edges(StateIndex state) const override { return edges_[state]; }

 private:
  StateIndex start_ = 0;
  std::vector<bool> accepting_;
  std::vector<std::vector<Edge>> edges_;
};

// Edge structure shared by many languages that differ in start and acceptance.
struct SharedGraph {
  std::vector<std::vector<Edge>> edges;
};

class GraphLanguage final : public Language {
 public:
  enum class Accept { All, Only, Except };

  // With self set, the language also contains the one-letter word 'self'.
  GraphLanguage(std::shared_ptr<const SharedGraph> graph, StateIndex start, Accept mode,
                std::optional<StateIndex> marked, std::optional<Symbol> self);

  StateIndex start() const override { return start_; }
  bool accepting(StateIndex state) const override;
  std::span<const Edge> edges(StateIndex state) const override;

  const std::shared_ptr<const SharedGraph>& graph() const { return graph_; }
  StateIndex graph_start() const { return graph_start_; }
  Accept mode() const { return mode_; }
  std::optional<StateIndex> marked() const { return marked_; }
  std::optional<Symbol> self() const { return self_; }

 private:
  std::shared_ptr<const SharedGraph> graph_;
  StateIndex graph_start_;
  StateIndex start_;
  Accept mode_;
  std::optional<StateIndex> marked_;
  std::optional<Symbol> self_;
  std::vector<Edge> start_edges_;
};

}  // namespace raystab
