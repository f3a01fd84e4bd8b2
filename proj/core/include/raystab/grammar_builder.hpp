#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "raystab/automaton.hpp"
#include "raystab/et0l.hpp"
#include "raystab/tree.hpp"

namespace raystab {

// A ray u v^omega with |u| = |v| = ell.
struct IndexPair {
  Vertex u;
  Vertex v;

  Ray ray() const { return Ray(u, v); }
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

struct SpineChoice {
  std::size_t pair;        // spine of the generator
  std::size_t image_pair;  // spine moved by the generator
};

struct IndexSet {
  std::vector<IndexPair> pairs;
  std::size_t ell = 0;
  std::size_t eta = 0;                          // pair of the target ray
  std::map<std::size_t, SpineChoice> spine_choice;  // directed generators only

  // Index of the pair representing the ray, if any.
  std::optional<std::size_t> find(const Ray& ray) const;
};

// Throws NotFinDirGenerator if a generator is neither finitary nor directed.
IndexSet build_index_set(const GeneratingSet& gens, const Vertex& a, const Vertex& b);

// (u v q y).x = u' v' q' y' with 4 ell < depth <= 5 ell, where (u, v) is the
// spine pair of x and (u', v') the pair of its image.
struct StepEntry {
  std::size_t generator;
  Vertex q, y;
  Vertex q_image, y_image;
  std::size_t depth;
};

struct StepRelation {
  std::vector<StepEntry> entries;  // sorted by (generator, q, y)
};

StepRelation build_step_relation(const GeneratingSet& gens, const IndexSet& index);

// Right data of a placeholder: a pair and a path of length 2 ell.
struct PathData {
  std::size_t pair = 0;
  Vertex path;
  friend auto operator<=>(const PathData&, const PathData&) = default;
};

struct Placeholder {
  enum class Kind { Pair, NegEta, Any, StartStab, StartNonStab };
  Kind kind;
  PathData left;   // unused for the two start symbols
  PathData right;  // Pair only
  friend auto operator<=>(const Placeholder&, const Placeholder&) = default;
};

enum class Variant { E, EPrime };

struct BuildStats {
  std::size_t ell = 0;
  std::size_t pairs = 0;
  std::size_t step_entries = 0;
  std::size_t placeholders = 0;
  std::size_t init_states = 0;
  std::size_t up_states = 0;  // summed over all placeholders
  std::size_t finish_vertices = 0;
  std::size_t finish_edges = 0;
};

struct BuiltGrammars {
  Et0lGrammar e;
  Et0lGrammar e_prime;
  BuildStats stats;
};

class GrammarBuilder {
 public:
  // The ray a b^omega; a may be empty.
  GrammarBuilder(const GeneratingSet& gens, const Vertex& a, const Vertex& b);
  ~GrammarBuilder();
  GrammarBuilder(const GrammarBuilder&) = delete;
  GrammarBuilder& operator=(const GrammarBuilder&) = delete;

  const IndexSet& index_set() const;
  const StepRelation& step_relation() const;
  const SymbolSpace& symbols() const;

  // Registers the placeholder if needed.
  Symbol symbol(const Placeholder& p);
  std::optional<Placeholder> placeholder(Symbol s) const;
  std::string name(const Placeholder& p) const;

  Dfa tau_init(Variant variant);
  Dfa tau_up(const Placeholder& p);
  // The finishing language of a placeholder, which also contains the placeholder itself.
  std::shared_ptr<const GraphLanguage> tau_finish(const Placeholder& p);

  // Materializes every placeholder reachable from both start symbols.
  BuiltGrammars build();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

BuiltGrammars build_grammars(const GeneratingSet& gens, const Vertex& a, const Vertex& b);

}  // namespace raystab
