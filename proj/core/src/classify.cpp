#include "raystab/classify.hpp"

#include <algorithm>
#include <functional>

#include "raystab/errors.hpp"

namespace raystab {

namespace {

// Graph on non-identity states; parallel letters give parallel edges.
struct Nontrivial {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<Letter, StateId>>> out;
};

Nontrivial nontrivial_graph(const Automorphism& g) {
  Nontrivial graph;
  graph.n = g.state_count();
  graph.out.resize(graph.n);
  for (StateId s = 0; s < graph.n; ++s) {
    if (g.is_trivial_state(s)) continue;
    for (unsigned c = 0; c < g.degree(); ++c) {
      StateId t = g.next(s, static_cast<Letter>(c));
      if (!g.is_trivial_state(t)) graph.out[s].emplace_back(static_cast<Letter>(c), t);
    }
  }
  return graph;
}

// Tarjan; returns component index per state, components in reverse topological order.
std::vector<std::size_t> strong_components(const Nontrivial& graph, std::size_t& count) {
  std::vector<std::size_t> comp(graph.n, SIZE_MAX), index(graph.n, SIZE_MAX), low(graph.n, 0);
  std::vector<StateId> stack;
  std::vector<bool> on_stack(graph.n, false);
  std::size_t counter = 0;
  count = 0;
  std::function<void(StateId)> visit = [&](StateId s) {
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = true;
    for (auto [c, t] : graph.out[s]) {
      if (index[t] == SIZE_MAX) {
        visit(t);
        low[s] = std::min(low[s], low[t]);
      } else if (on_stack[t]) {
        low[s] = std::min(low[s], index[t]);
      }
    }
    if (low[s] == index[s]) {
      for (;;) {
        StateId t = stack.back();
        stack.pop_back();
        on_stack[t] = false;
        comp[t] = count;
        if (t == s) break;
      }
      ++count;
    }
  };
  for (StateId s = 0; s < graph.n; ++s)
    if (index[s] == SIZE_MAX) visit(s);
  return comp;
}

struct CycleInfo {
  std::vector<std::size_t> comp;
  std::vector<bool> cyclic;  // per component
  bool bounded = true;
};

CycleInfo analyse(const Automorphism& g, const Nontrivial& graph) {
  CycleInfo info;
  std::size_t count = 0;
  info.comp = strong_components(graph, count);
  info.cyclic.assign(count, false);
  std::vector<std::size_t> inner(graph.n, 0);
  for (StateId s = 0; s < graph.n; ++s) {
    if (g.is_trivial_state(s)) continue;
    for (auto [c, t] : graph.out[s])
      if (info.comp[t] == info.comp[s]) {
        ++inner[s];
        info.cyclic[info.comp[s]] = true;
      }
  }
  for (StateId s = 0; s < graph.n; ++s)
    if (!g.is_trivial_state(s) && info.cyclic[info.comp[s]] && inner[s] != 1) info.bounded = false;
  // No path from one cycle into a different one: count cycles reachable from each state.
  std::vector<std::size_t> order(graph.n);
  for (StateId s = 0; s < graph.n; ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](StateId x, StateId y) { return info.comp[x] < info.comp[y]; });
  std::vector<bool> reaches_cycle_below(count, false);
  for (StateId s : order) {
    if (g.is_trivial_state(s)) continue;
    for (auto [c, t] : graph.out[s]) {
      if (info.comp[t] == info.comp[s]) continue;
      bool below = info.cyclic[info.comp[t]] || reaches_cycle_below[info.comp[t]];
      if (below) {
        if (info.cyclic[info.comp[s]]) info.bounded = false;
        reaches_cycle_below[info.comp[s]] = true;
      }
    }
  }
  return info;
}

std::vector<std::size_t> state_depths(const Automorphism& g, const Nontrivial& graph) {
  // Only meaningful on the acyclic part; callers check.
  std::vector<std::size_t> depth(graph.n, SIZE_MAX);
  std::function<std::size_t(StateId)> get = [&](StateId s) -> std::size_t {
    if (g.is_trivial_state(s)) return depth[s] = 0;
    if (depth[s] != SIZE_MAX) return depth[s];
    std::size_t best = 0;
    for (auto [c, t] : graph.out[s]) best = std::max(best, get(t));
    return depth[s] = best + 1;
  };
  for (StateId s = 0; s < graph.n; ++s) get(s);
  return depth;
}

bool acyclic(const Automorphism& g, const Nontrivial& graph) {
  std::vector<int> mark(graph.n, 0);
  std::function<bool(StateId)> dfs = [&](StateId s) {
    mark[s] = 1;
    for (auto [c, t] : graph.out[s]) {
      if (mark[t] == 1) return false;
      if (mark[t] == 0 && !dfs(t)) return false;
    }
    mark[s] = 2;
    return true;
  };
  for (StateId s = 0; s < graph.n; ++s)
    if (!g.is_trivial_state(s) && mark[s] == 0 && !dfs(s)) return false;
  return true;
}

}  // namespace

std::optional<std::size_t> finitary_depth(const Automorphism& g) {
  Nontrivial graph = nontrivial_graph(g);
  if (!acyclic(g, graph)) return std::nullopt;
  return state_depths(g, graph)[0];
}

bool is_bounded(const Automorphism& g) {
  Nontrivial graph = nontrivial_graph(g);
  return analyse(g, graph).bounded;
}

SpineData spine(const Automorphism& g) {
  Nontrivial graph = nontrivial_graph(g);
  CycleInfo info = analyse(g, graph);
  if (!info.bounded) throw NotDirected("automorphism is not bounded");
  if (acyclic(g, graph)) throw NotDirected("automorphism is finitary");

  auto on_cycle = [&](StateId s) { return !g.is_trivial_state(s) && info.cyclic[info.comp[s]]; };
  // Count letter paths from each state to a first cycle state (saturating at 2).
  std::vector<int> paths(graph.n, -1);
  std::function<int(StateId)> count = [&](StateId s) -> int {
    if (on_cycle(s)) return 1;
    if (paths[s] >= 0) return paths[s];
    int total = 0;
    for (auto [c, t] : graph.out[s]) total = std::min(2, total + count(t));
    return paths[s] = total;
  };
  if (count(0) != 1) throw NotDirected("automorphism has more than one nontrivial ray");

  SpineData data;
  std::vector<StateId> spine_states;
  StateId s = 0;
  while (!on_cycle(s)) {
    spine_states.push_back(s);
    for (auto [c, t] : graph.out[s])
      if (count(t) == 1) {
        data.initial.push_back(c);
        s = t;
        break;
      }
  }
  data.section_at_u = g.state(s);
  StateId start = s;
  do {
    spine_states.push_back(s);
    for (auto [c, t] : graph.out[s])
      if (info.comp[t] == info.comp[s]) {
        data.period.push_back(c);
        s = t;
        break;
      }
  } while (s != start);

  // Off-spine sections are finitary since the cycle has no exit to another cycle.
  std::vector<std::size_t> depth(graph.n, SIZE_MAX);
  std::function<std::size_t(StateId)> fin = [&](StateId t) -> std::size_t {
    if (g.is_trivial_state(t)) return 0;
    if (depth[t] != SIZE_MAX) return depth[t];
    std::size_t best = 0;
    for (auto [c, u] : graph.out[t]) best = std::max(best, fin(u));
    return depth[t] = best + 1;
  };
  for (std::size_t i = 0; i < spine_states.size(); ++i) {
    StateId cur = spine_states[i];
    StateId nxt = i + 1 < spine_states.size() ? spine_states[i + 1] : start;
    Letter along = i < data.initial.size() ? data.initial[i] : data.period[i - data.initial.size()];
    for (unsigned c = 0; c < g.degree(); ++c) {
      if (c == along) continue;
      StateId t = g.next(cur, static_cast<Letter>(c));
      if (t == nxt && on_cycle(t)) continue;
      data.off_spine_depth = std::max(data.off_spine_depth, fin(t));
    }
  }
  return data;
}

Classification classify(const Automorphism& g) {
  if (auto depth = finitary_depth(g)) return Finitary{*depth};
  if (!is_bounded(g)) return Unbounded{};
  try {
    return Directed{spine(g)};
  } catch (const NotDirected&) {
    return BoundedOther{};
  }
}

std::string describe(const Classification& c) {
  struct Visitor {
    std::string operator()(const Finitary& f) const { return "finitary depth=" + std::to_string(f.depth); }
    std::string operator()(const Directed& d) const {
      return "directed spine=(" + (d.spine.initial.empty() ? std::string("e") : d.spine.initial.to_string()) +
             "," + d.spine.period.to_string() + ")";
    }
    std::string operator()(const BoundedOther&) const { return "bounded"; }
    std::string operator()(const Unbounded&) const { return "unbounded"; }
  };
  return std::visit(Visitor{}, c);
}

std::vector<std::size_t> nontrivial_section_counts(const Automorphism& g, std::size_t max_level) {
  std::vector<std::size_t> out;
  std::vector<std::size_t> paths(g.state_count(), 0);
  paths[0] = 1;
  for (std::size_t k = 0; k <= max_level; ++k) {
    std::size_t total = 0;
    for (StateId s = 0; s < g.state_count(); ++s)
      if (!g.is_trivial_state(s)) total += paths[s];
    out.push_back(total);
    std::vector<std::size_t> next(g.state_count(), 0);
    for (StateId s = 0; s < g.state_count(); ++s)
      for (unsigned c = 0; c < g.degree(); ++c) next[g.next(s, static_cast<Letter>(c))] += paths[s];
    paths.swap(next);
  }
  return out;
}

DecoratedWord decorate(const Ray& ray, const Word& w, const GeneratingSet& gens) {
  DecoratedWord out;
  Ray cur = ray;
  for (std::uint32_t x : w) {
    if (x >= gens.size()) throw UnknownGenerator("generator index out of range");
    out.push_back({x, directional_depth(cur, gens.element(x))});
    cur = act_ray(gens.element(x), cur);
  }
  return out;
}

DecoratedWord decorate(const Vertex& vertex, const Word& w, const GeneratingSet& gens) {
  DecoratedWord out;
  Vertex cur = vertex;
  for (std::uint32_t x : w) {
    if (x >= gens.size()) throw UnknownGenerator("generator index out of range");
    out.push_back({x, directional_depth(cur, gens.element(x))});
    cur = act_vertex(gens.element(x), cur);
  }
  return out;
}

std::string format_decorated(const DecoratedWord& w, const GeneratingSet& gens) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(' ');
    out += gens.name(w[i].generator) + "(" + (w[i].depth ? std::to_string(*w[i].depth) : std::string("inf")) + ")";
  }
  return out;
}

}  // namespace raystab
