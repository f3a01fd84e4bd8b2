#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "raystab/numeric.hpp"
#include "raystab/tree.hpp"

namespace raystab {

// Labeled Schreier graph of one tree level, or a fragment of it around the base.
struct LevelGraph {
  static constexpr std::int64_t kOutside = -1;

  std::size_t level = 0;
  std::vector<std::string> labels;
  std::vector<Vertex> vertices;
  std::vector<std::vector<std::int64_t>> edges;  // edges[v][x]: target of v.x, kOutside if not materialized
  std::size_t base = 0;
  bool complete = true;
  bool symmetric = false;
};

LevelGraph level_graph(const GeneratingSet& gens, std::size_t level, const Vertex& base,
                       bool component_only = false);
// Vertices within the given distance of base in the level-|base| graph.
LevelGraph ball_graph(const GeneratingSet& gens, const Vertex& base, std::size_t radius);
LevelGraph rooted_ball(const GeneratingSet& gens, const Ray& ray, std::size_t radius, std::size_t max_level = 256);

std::vector<BigInt> closed_walk_counts(const LevelGraph& graph, std::size_t max_len);
std::vector<Rational> green_coeffs(const LevelGraph& graph, std::size_t max_len);

struct StableWalkCounts {
  std::vector<BigInt> counts;
  std::size_t level;  // first level from which the counts were seen stable
};

// Closed walk counts at the ray's level-n prefix, doubling n until unchanged twice.
StableWalkCounts stable_walk_counts(const GeneratingSet& gens, const Ray& ray, std::size_t max_len,
                                    std::size_t max_level = 4096);

std::string export_dot(const LevelGraph& graph);

}  // namespace raystab
