#include "raystab/schreier.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "raystab/errors.hpp"

namespace raystab {

namespace {

LevelGraph empty_graph(const GeneratingSet& gens, std::size_t level) {
  LevelGraph g;
  g.level = level;
  g.labels = gens.names();
  g.symmetric = gens.is_symmetric();
  return g;
}

// Breadth-first fragment from base, stopping at the given distance.
LevelGraph explore(const GeneratingSet& gens, const Vertex& base, std::size_t radius) {
  LevelGraph g = empty_graph(gens, base.size());
  g.complete = false;
  std::unordered_map<Vertex, std::size_t, VertexHash> index;
  std::vector<std::size_t> dist;
  g.vertices.push_back(base);
  index.emplace(base, 0);
  dist.push_back(0);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    g.edges.emplace_back(gens.size(), LevelGraph::kOutside);
    for (std::size_t x = 0; x < gens.size(); ++x) {
      Vertex target = act_vertex(gens.element(x), g.vertices[i]);
      auto it = index.find(target);
      if (it != index.end()) {
        g.edges[i][x] = static_cast<std::int64_t>(it->second);
      } else if (dist[i] < radius) {
        index.emplace(target, g.vertices.size());
        g.edges[i][x] = static_cast<std::int64_t>(g.vertices.size());
        g.vertices.push_back(std::move(target));
        dist.push_back(dist[i] + 1);
      }
    }
  }
  // Edges discovered later may point back into earlier vertices' missing slots.
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (std::size_t x = 0; x < gens.size(); ++x)
      if (g.edges[i][x] == LevelGraph::kOutside) {
        auto it = index.find(act_vertex(gens.element(x), g.vertices[i]));
        if (it != index.end()) g.edges[i][x] = static_cast<std::int64_t>(it->second);
      }
  g.complete = std::all_of(g.edges.begin(), g.edges.end(), [](const auto& row) {
    return std::none_of(row.begin(), row.end(), [](std::int64_t t) { return t == LevelGraph::kOutside; });
  });
  return g;
}

}  // namespace

LevelGraph level_graph(const GeneratingSet& gens, std::size_t level, const Vertex& base, bool component_only) {
  if (base.size() != level)
    throw Error("base vertex has length " + std::to_string(base.size()) + ", expected " + std::to_string(level));
  for (std::size_t i = 0; i < base.size(); ++i)
    if (base[i] >= gens.degree()) throw AlphabetMismatch("base vertex letter outside alphabet");
  if (component_only) {
    LevelGraph g = explore(gens, base, SIZE_MAX);
    g.complete = true;
    return g;
  }
  const unsigned d = gens.degree();
  std::size_t total = 1;
  for (std::size_t i = 0; i < level; ++i) {
    if (total > (std::size_t{1} << 26) / d) throw CapExceeded("level graph too large; use the component only");
    total *= d;
  }
  auto index_of = [&](const Vertex& v) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < v.size(); ++i) idx = idx * d + v[i];
    return idx;
  };
  LevelGraph g = empty_graph(gens, level);
  g.vertices.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vertex v;
    std::size_t rest = idx;
    std::string bytes(level, '\0');
    for (std::size_t i = level; i-- > 0;) {
      bytes[i] = static_cast<char>(rest % d);
      rest /= d;
    }
    g.vertices.emplace_back(std::move(bytes));
  }
  g.edges.assign(total, std::vector<std::int64_t>(gens.size()));
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t x = 0; x < gens.size(); ++x)
      g.edges[i][x] = static_cast<std::int64_t>(index_of(act_vertex(gens.element(x), g.vertices[i])));
  g.base = index_of(base);
  return g;
}

LevelGraph ball_graph(const GeneratingSet& gens, const Vertex& base, std::size_t radius) {
  return explore(gens, base, radius);
}

namespace {

// Structure of a ball with vertices cut to a common length, for comparing levels.
struct BallShape {
  std::vector<Vertex> vertices;
  std::vector<std::vector<std::int64_t>> edges;
  bool operator==(const BallShape&) const = default;
};

BallShape shape(const LevelGraph& g, std::size_t cut) {
  BallShape s;
  for (const auto& v : g.vertices) s.vertices.push_back(v.prefix(cut));
  s.edges = g.edges;
  return s;
}

}  // namespace

LevelGraph rooted_ball(const GeneratingSet& gens, const Ray& ray, std::size_t radius, std::size_t max_level) {
  std::size_t n = std::max<std::size_t>(1, ray.initial().size() + ray.period().size());
  LevelGraph prev = ball_graph(gens, ray.prefix(n), radius);
  std::size_t agreed = 0;
  while (n < max_level) {
    LevelGraph cur = ball_graph(gens, ray.prefix(n + 1), radius);
    if (shape(cur, n) == shape(prev, n)) {
      if (++agreed == 2) return prev;
    } else {
      agreed = 0;
    }
    prev = std::move(cur);
    ++n;
  }
  throw NoStabilization("rooted ball did not stabilize below level " + std::to_string(max_level));
}

std::vector<BigInt> closed_walk_counts(const LevelGraph& graph, std::size_t max_len) {
  std::vector<BigInt> x(graph.vertices.size(), 0);
  x[graph.base] = 1;
  std::vector<BigInt> out{1};
  for (std::size_t m = 1; m <= max_len; ++m) {
    std::vector<BigInt> y(graph.vertices.size(), 0);
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
      if (x[v] == 0) continue;
      for (std::int64_t t : graph.edges[v])
        if (t != LevelGraph::kOutside) y[static_cast<std::size_t>(t)] += x[v];
    }
    x.swap(y);
    out.push_back(x[graph.base]);
  }
  return out;
}

std::vector<Rational> green_coeffs(const LevelGraph& graph, std::size_t max_len) {
  if (!graph.symmetric) throw NotSymmetric("return probabilities need a symmetric generating set");
  std::vector<BigInt> counts = closed_walk_counts(graph, max_len);
  std::vector<Rational> out;
  BigInt power = 1;
  for (std::size_t m = 0; m <= max_len; ++m) {
    out.emplace_back(counts[m], power);
    power *= graph.labels.size();
  }
  return out;
}

StableWalkCounts stable_walk_counts(const GeneratingSet& gens, const Ray& ray, std::size_t max_len,
                                    std::size_t max_level) {
  const std::size_t radius = (max_len + 1) / 2;
  std::size_t n = std::max<std::size_t>(1, ray.initial().size() + ray.period().size());
  auto counts_at = [&](std::size_t level) {
    return closed_walk_counts(ball_graph(gens, ray.prefix(level), radius), max_len);
  };
  std::vector<BigInt> prev = counts_at(n);
  std::size_t first = n;
  std::size_t agreed = 0;
  while (n * 2 <= max_level) {
    n *= 2;
    std::vector<BigInt> cur = counts_at(n);
    if (cur == prev) {
      if (++agreed == 2) return {prev, first};
    } else {
      agreed = 0;
      first = n;
      prev = std::move(cur);
    }
  }
  throw NoStabilization("walk counts did not stabilize below level " + std::to_string(max_level));
}

std::string export_dot(const LevelGraph& graph) {
  std::ostringstream out;
  out << "digraph schreier {\n";
  for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
    out << "  \"" << graph.vertices[v].to_string() << "\"";
    if (v == graph.base) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (std::size_t v = 0; v < graph.vertices.size(); ++v)
    for (std::size_t x = 0; x < graph.labels.size(); ++x) {
      std::int64_t t = graph.edges[v][x];
      if (t == LevelGraph::kOutside) continue;
      out << "  \"" << graph.vertices[v].to_string() << "\" -> \""
          << graph.vertices[static_cast<std::size_t>(t)].to_string() << "\" [label=\"" << graph.labels[x]
          << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace raystab
