#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "raystab/tree.hpp"

namespace raystab {

// Spine u v^omega of a directed automorphism. The period is the letter sequence of
// the section cycle, so section(g, u v^k v[0..j)) == section(g, u v[0..j)).
struct SpineData {
  Vertex initial;
  Vertex period;
  Automorphism section_at_u;
  // Largest finitary depth among sections hanging off the spine.
  std::size_t off_spine_depth = 0;

  Ray ray() const { return Ray(initial, period); }
};

struct Finitary {
  std::size_t depth;
};
struct Directed {
  SpineData spine;
};
struct BoundedOther {};
struct Unbounded {};

using Classification = std::variant<Finitary, Directed, BoundedOther, Unbounded>;

std::optional<std::size_t> finitary_depth(const Automorphism& g);
bool is_bounded(const Automorphism& g);
// Throws NotDirected unless g has exactly one ray of nontrivial sections.
SpineData spine(const Automorphism& g);
Classification classify(const Automorphism& g);
std::string describe(const Classification& c);

// Number of vertices of length k with nontrivial section, for k = 0..max_level.
std::vector<std::size_t> nontrivial_section_counts(const Automorphism& g, std::size_t max_level);

struct DecoratedLetter {
  std::uint32_t generator;
  std::optional<std::size_t> depth;  // nullopt is infinite depth
};
using DecoratedWord = std::vector<DecoratedLetter>;

DecoratedWord decorate(const Ray& ray, const Word& w, const GeneratingSet& gens);
DecoratedWord decorate(const Vertex& vertex, const Word& w, const GeneratingSet& gens);
std::string format_decorated(const DecoratedWord& w, const GeneratingSet& gens);

}  // namespace raystab
