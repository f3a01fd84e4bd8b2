#include "raystab/grammar_builder.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <variant>

#include "raystab/classify.hpp"
#include "raystab/errors.hpp"

namespace raystab {

namespace {

bool trivial_section(const Automorphism& g, const Vertex& v) {
  StateId s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (g.is_trivial_state(s)) return true;
    s = g.next(s, v[i]);
  }
  return g.is_trivial_state(s);
}

std::size_t lcm_with(std::size_t acc, std::size_t n) { return n == 0 ? acc : std::lcm(acc, n); }

IndexPair pair_for(const Ray& ray, std::size_t ell) {
  return IndexPair{ray.prefix(ell), ray.prefix(2 * ell).substr(ell)};
}

std::uint64_t index_of(const Vertex& v, unsigned d) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < v.size(); ++i) idx = idx * d + v[i];
  return idx;
}

Vertex vertex_of(std::uint64_t idx, std::size_t len, unsigned d) {
  std::string bytes(len, '\0');
  for (std::size_t i = len; i-- > 0;) {
    bytes[i] = static_cast<char>(idx % d);
    idx /= d;
  }
  return Vertex(std::move(bytes));
}

std::vector<Vertex> all_vertices(std::size_t len, unsigned d) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < len; ++i) n *= d;
  std::vector<Vertex> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(vertex_of(i, len, d));
  return out;
}

}  // namespace

std::optional<std::size_t> IndexSet::find(const Ray& ray) const {
  if (ell == 0) return std::nullopt;
  IndexPair key = pair_for(ray, ell);
  if (key.ray() != ray) return std::nullopt;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i] == key) return i;
  return std::nullopt;
}

IndexSet build_index_set(const GeneratingSet& gens, const Vertex& a, const Vertex& b) {
  const Ray eta(a, b);
  std::map<std::size_t, SpineData> spines;
  std::vector<std::size_t> finitary_depths;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Classification c = classify(gens.element(i));
    if (auto* f = std::get_if<Finitary>(&c))
      finitary_depths.push_back(f->depth);
    else if (auto* dir = std::get_if<Directed>(&c))
      spines.emplace(i, dir->spine);
    else
      throw NotFinDirGenerator("generator '" + gens.name(i) + "' is " + describe(c));
  }

  std::vector<Ray> seeds{eta};
  auto add_seed = [&](const Ray& r) {
    if (std::find(seeds.begin(), seeds.end(), r) == seeds.end()) seeds.push_back(r);
  };
  for (const auto& [i, sp] : spines) add_seed(sp.ray());
  for (const auto& [i, sp] : spines)
    for (const auto& [j, unused] : spines) add_seed(act_ray(gens.element(j), sp.ray()));

  // Property 1: one length for all initial segments and periods.
  std::size_t longest = 0;
  std::size_t ell = 1;
  for (const Ray& r : seeds) {
    longest = std::max(longest, r.initial().size());
    ell = std::lcm(ell, r.period().size());
  }
  ell = lcm_with(ell, longest);
  std::vector<IndexPair> pairs;
  for (const Ray& r : seeds) pairs.push_back(pair_for(r, ell));

  // Property 2: distinct pairs get distinct initial segments.
  for (IndexPair& p : pairs) p = IndexPair{p.u + p.v, p.v + p.v};
  ell *= 2;

  // Properties 3 and 4.
  std::size_t target = ell;
  for (const auto& [i, sp] : spines) {
    target = lcm_with(target, sp.initial.size());
    target = lcm_with(target, sp.period.size());
    target = lcm_with(target, sp.off_spine_depth);
  }
  for (std::size_t depth : finitary_depths) target = lcm_with(target, depth);
  const std::size_t r = target / ell;
  for (IndexPair& p : pairs) p = IndexPair{p.u + p.v.repeat(r - 1), p.v.repeat(r)};
  ell = target;

  IndexSet out;
  out.pairs = std::move(pairs);
  out.ell = ell;
  out.eta = *out.find(eta);
  for (const auto& [i, sp] : spines) {
    auto pair = out.find(sp.ray());
    auto image = out.find(act_ray(gens.element(i), sp.ray()));
    if (!pair || !image) throw Error("index set does not cover the spine of '" + gens.name(i) + "'");
    out.spine_choice.emplace(i, SpineChoice{*pair, *image});
  }
  return out;
}

StepRelation build_step_relation(const GeneratingSet& gens, const IndexSet& index) {
  const std::size_t ell = index.ell;
  const unsigned d = gens.degree();
  const std::vector<Vertex> tails = all_vertices(ell, d);
  StepRelation out;
  for (const auto& [x, choice] : index.spine_choice) {
    const Automorphism& g = gens.element(x);
    const IndexPair& from = index.pairs[choice.pair];
    const IndexPair& to = index.pairs[choice.image_pair];
    const Vertex uv = from.u + from.v;
    const Vertex image_uv = to.u + to.v;
    // Paths q along which the section stays nontrivial for 2 ell letters.
    std::vector<Vertex> qs;
    std::vector<Vertex> stack{Vertex()};
    while (!stack.empty()) {
      Vertex q = std::move(stack.back());
      stack.pop_back();
      if (q.size() == 2 * ell) {
        qs.push_back(std::move(q));
        continue;
      }
      for (unsigned c = d; c-- > 0;) {
        Vertex next = q;
        next.push_back(static_cast<Letter>(c));
        if (!trivial_section(g, uv + next)) stack.push_back(std::move(next));
      }
    }
    for (const Vertex& q : qs)
      for (const Vertex& y : tails) {
        const Vertex full = uv + q + y;
        auto depth = directional_depth(full, g);
        if (!depth || *depth <= 4 * ell || *depth > 5 * ell) continue;
        const Vertex image = act_vertex(g, full);
        if (image.prefix(2 * ell) != image_uv) throw Error("spine image does not match its index pair");
        out.entries.push_back(StepEntry{x, q, y, image.substr(2 * ell, 2 * ell), image.substr(4 * ell), *depth});
      }
  }
  return out;
}

// ---------------------------------------------------------------- builder

struct GrammarBuilder::Impl {
  struct Move {
    std::size_t generator;
    PathData next;
    Vertex y;
  };
  // A letter of a production: a generator index or a placeholder.
  using Letter = std::variant<std::size_t, Placeholder>;
  struct Expansion {
    bool accepting = false;
    std::vector<std::pair<Letter, std::size_t>> edges;  // letter, target key index
  };

  GeneratingSet gens;
  unsigned d;
  IndexSet index;
  StepRelation steps;
  std::size_t ell;
  Vertex eta_tail;  // b normalized to length ell
  SymbolSpace symbols;
  Symbol start_stab, start_nonstab;
  std::map<Placeholder, Symbol> ids;
  std::vector<std::optional<Placeholder>> by_symbol;
  std::deque<Symbol> pending;
  std::map<Vertex, std::vector<PathData>> domain;                                   // by y
  std::map<std::tuple<std::size_t, Vertex, Vertex>, std::vector<Move>> moves;         // (pair, q, y)
  std::shared_ptr<SharedGraph> finish_graph;
  BuildStats stats;

  Impl(const GeneratingSet& g, const Vertex& a, const Vertex& b)
      : gens(g), d(g.degree()), index(build_index_set(g, a, b)), steps(build_step_relation(g, index)),
        ell(index.ell), eta_tail(index.pairs[index.eta].v) {
    for (std::size_t i = 0; i < gens.size(); ++i) symbols.add_terminal(gens.name(i));
    start_stab = symbols.add_nonterminal("<eta;eta>");
    start_nonstab = symbols.add_nonterminal("<eta;~eta>");
    by_symbol.resize(symbols.size());
    by_symbol[start_stab] = Placeholder{Placeholder::Kind::StartStab, {}, {}};
    by_symbol[start_nonstab] = Placeholder{Placeholder::Kind::StartNonStab, {}, {}};
    for (const StepEntry& e : steps.entries) {
      const SpineChoice& c = index.spine_choice.at(e.generator);
      PathData from{c.pair, e.q};
      auto& dom = domain[e.y];
      if (std::find(dom.begin(), dom.end(), from) == dom.end()) dom.push_back(from);
      moves[{c.pair, e.q, e.y}].push_back(Move{e.generator, PathData{c.image_pair, e.q_image}, e.y_image});
    }
    for (auto& [y, dom] : domain) std::sort(dom.begin(), dom.end());
  }

  std::string pair_name(std::size_t i) const {
    return index.pairs[i].u.to_string() + "." + index.pairs[i].v.to_string();
  }
  std::string data_name(const PathData& p) const { return pair_name(p.pair) + "/" + p.path.to_string(); }

  std::string name(const Placeholder& p) const {
    switch (p.kind) {
      case Placeholder::Kind::StartStab:
        return "<eta;eta>";
      case Placeholder::Kind::StartNonStab:
        return "<eta;~eta>";
      case Placeholder::Kind::Pair:
        return "<" + data_name(p.left) + ";" + data_name(p.right) + ">";
      case Placeholder::Kind::NegEta:
        return "<" + data_name(p.left) + ";~eta>";
      case Placeholder::Kind::Any:
        return "<" + data_name(p.left) + ";any>";
    }
    return "";
  }

  Symbol symbol(Placeholder p) {
    if (p.kind == Placeholder::Kind::StartStab) return start_stab;
    if (p.kind == Placeholder::Kind::StartNonStab) return start_nonstab;
    if (p.kind != Placeholder::Kind::Pair) p.right = {};
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    Symbol s = symbols.add_nonterminal(name(p));
    ids.emplace(p, s);
    by_symbol.resize(symbols.size());
    by_symbol[s] = p;
    pending.push_back(s);
    return s;
  }

  // Breadth-first construction over hashable keys, trimmed to states that can
  // reach acceptance. Placeholders are registered only for surviving edges.
  template <class Key, class Expand>
  Dfa explore(const Key& start, Expand&& expand, std::size_t* state_count) {
    std::map<Key, std::size_t> seen{{start, 0}};
    std::vector<Key> keys{start};
    std::vector<Expansion> exp;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::vector<std::pair<Letter, Key>> edges;
      bool accepting = expand(keys[i], edges);
      Expansion e{accepting, {}};
      for (auto& [letter, key] : edges) {
        auto [it, fresh] = seen.emplace(key, keys.size());
        if (fresh) keys.push_back(key);
        e.edges.emplace_back(std::move(letter), it->second);
      }
      exp.push_back(std::move(e));
    }
    std::vector<std::vector<std::size_t>> reverse(keys.size());
    std::vector<bool> live(keys.size(), false);
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      for (const auto& [letter, t] : exp[i].edges) reverse[t].push_back(i);
      if (exp[i].accepting) {
        live[i] = true;
        todo.push_back(i);
      }
    }
    while (!todo.empty()) {
      std::size_t t = todo.back();
      todo.pop_back();
      for (std::size_t s : reverse[t])
        if (!live[s]) {
          live[s] = true;
          todo.push_back(s);
        }
    }
    if (!live[0]) {
      if (state_count) *state_count = 1;
      return Dfa::empty_language();
    }
    Dfa dfa;
    std::vector<StateIndex> id(keys.size(), 0);
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (live[i]) id[i] = dfa.add_state(exp[i].accepting);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (!live[i]) continue;
      for (const auto& [letter, t] : exp[i].edges) {
        if (!live[t]) continue;
        Symbol sym = std::holds_alternative<std::size_t>(letter) ? static_cast<Symbol>(std::get<std::size_t>(letter))
                                                                 : symbol(std::get<Placeholder>(letter));
        dfa.add_edge(id[i], sym, id[t]);
      }
    }
    dfa.set_start(id[0]);
    if (state_count) *state_count = dfa.size();
    return dfa;
  }

  Dfa tau_init(Variant variant) {
    // States: (0, pair) before a placeholder, (1, pair) after one, (2, 0) the end.
    using Key = std::pair<int, std::size_t>;
    std::set<std::size_t> targets;
    for (const auto& [x, c] : index.spine_choice) targets.insert(c.pair);
    if (variant == Variant::E) targets.insert(index.eta);
    auto squared = [&](std::size_t pair) { return PathData{pair, index.pairs[pair].v + index.pairs[pair].v}; };
    auto expand = [&](const Key& key, std::vector<std::pair<Letter, Key>>& edges) {
      const auto [tag, pair] = key;
      if (tag == 0) {
        for (std::size_t r : targets)
          if (index.pairs[r].v == index.pairs[pair].v)
            edges.emplace_back(Placeholder{Placeholder::Kind::Pair, squared(pair), squared(r)}, Key{1, r});
        if (variant == Variant::EPrime) {
          auto kind = index.pairs[pair].v == eta_tail ? Placeholder::Kind::NegEta : Placeholder::Kind::Any;
          edges.emplace_back(Placeholder{kind, squared(pair), {}}, Key{2, 0});
        }
        return false;
      }
      if (tag == 1) {
        for (const auto& [x, c] : index.spine_choice)
          if (c.pair == pair) edges.emplace_back(x, Key{0, c.image_pair});
        return variant == Variant::E && pair == index.eta;
      }
      return true;
    };
    std::size_t n = 0;
    Dfa out = explore(Key{0, index.eta}, expand, &n);
    stats.init_states += n;
    return out;
  }

  Dfa tau_up(const Placeholder& p) {
    using Kind = Placeholder::Kind;
    if (p.kind == Kind::StartStab || p.kind == Kind::StartNonStab) return Dfa::single_word({symbol(p)});
    // States: (0, L, y) before a placeholder, (1, R, y) after one, (2, -, -) the end.
    using Key = std::tuple<int, PathData, Vertex>;
    const IndexPair& left = index.pairs[p.left.pair];
    const PathData first{p.left.pair, (left.v + p.left.path).prefix(2 * ell)};
    const Vertex y0 = p.left.path.substr(ell);
    PathData final_data{};
    Vertex y_final;
    if (p.kind == Kind::Pair) {
      const IndexPair& right = index.pairs[p.right.pair];
      final_data = PathData{p.right.pair, (right.v + p.right.path).prefix(2 * ell)};
      y_final = p.right.path.substr(ell);
    }
    static const std::vector<PathData> kNone;
    static const std::vector<Move> kNoMoves;
    auto expand = [&](const Key& key, std::vector<std::pair<Letter, Key>>& edges) {
      const auto& [tag, data, y] = key;
      if (tag == 0) {
        auto dit = domain.find(y);
        const auto& dom = dit == domain.end() ? kNone : dit->second;
        for (const PathData& r : dom) edges.emplace_back(Placeholder{Kind::Pair, data, r}, Key{1, r, y});
        if (p.kind == Kind::Pair && y == y_final && !std::binary_search(dom.begin(), dom.end(), final_data))
          edges.emplace_back(Placeholder{Kind::Pair, data, final_data}, Key{1, final_data, y});
        if (p.kind == Kind::NegEta)
          edges.emplace_back(Placeholder{y == eta_tail ? Kind::NegEta : Kind::Any, data, {}}, Key{2, {}, {}});
        if (p.kind == Kind::Any) edges.emplace_back(Placeholder{Kind::Any, data, {}}, Key{2, {}, {}});
        return false;
      }
      if (tag == 1) {
        auto mit = moves.find({data.pair, data.path, y});
        for (const Move& m : mit == moves.end() ? kNoMoves : mit->second)
          edges.emplace_back(m.generator, Key{0, m.next, m.y});
        return p.kind == Kind::Pair && data == final_data && y == y_final;
      }
      return true;
    };
    std::size_t n = 0;
    Dfa out = explore(Key{0, first, y0}, expand, &n);
    stats.up_states += n;
    return out;
  }

  const std::shared_ptr<SharedGraph>& finish() {
    if (finish_graph) return finish_graph;
    constexpr std::uint64_t kMaxVertices = std::uint64_t{1} << 24;
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < 3 * ell; ++i) {
      n *= d;
      if (n > kMaxVertices)
        throw CapExceeded("finishing automaton would need more than " + std::to_string(kMaxVertices) + " states");
    }
    auto graph = std::make_shared<SharedGraph>();
    graph->edges.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const Vertex v = vertex_of(i, 3 * ell, d);
      for (std::size_t s = 0; s < gens.size(); ++s)
        if (trivial_section(gens.element(s), v))
          graph->edges[i].push_back(
              Edge{static_cast<Symbol>(s), static_cast<StateIndex>(index_of(act_vertex(gens.element(s), v), d))});
      stats.finish_edges += graph->edges[i].size();
    }
    stats.finish_vertices = n;
    finish_graph = graph;
    return finish_graph;
  }

  std::shared_ptr<const GraphLanguage> tau_finish(const Placeholder& p) {
    using Kind = Placeholder::Kind;
    if (p.kind == Kind::StartStab || p.kind == Kind::StartNonStab) return nullptr;
    const auto& graph = finish();
    auto at = [&](const PathData& data) {
      return static_cast<StateIndex>(index_of(index.pairs[data.pair].u + data.path, d));
    };
    const IndexPair& eta = index.pairs[index.eta];
    const StateIndex start = at(p.left);
    const Symbol self = symbol(p);
    switch (p.kind) {
      case Kind::Pair:
        return std::make_shared<GraphLanguage>(graph, start, GraphLanguage::Accept::Only, at(p.right), self);
      case Kind::NegEta:
        return std::make_shared<GraphLanguage>(graph, start, GraphLanguage::Accept::Except,
                                               static_cast<StateIndex>(index_of(eta.u + eta.v + eta.v, d)), self);
      default:
        return std::make_shared<GraphLanguage>(graph, start, GraphLanguage::Accept::All, std::nullopt, self);
    }
  }

  BuiltGrammars build() {
    auto init = std::make_shared<Table>("init");
    auto up = std::make_shared<Table>("up");
    auto fin = std::make_shared<Table>("finish");
    init->set(start_stab, std::make_shared<Dfa>(tau_init(Variant::E)));
    init->set(start_nonstab, std::make_shared<Dfa>(tau_init(Variant::EPrime)));
    while (!pending.empty()) {
      Symbol s = pending.front();
      pending.pop_front();
      const Placeholder p = *by_symbol[s];
      up->set(s, std::make_shared<Dfa>(tau_up(p)));
      fin->set(s, tau_finish(p));
    }
    Dfa control;
    StateIndex c0 = control.add_state(false);
    StateIndex c1 = control.add_state(false);
    StateIndex c2 = control.add_state(true);
    control.add_edge(c0, 0, c1);
    control.add_edge(c1, 1, c1);
    control.add_edge(c1, 2, c2);

    BuiltGrammars out;
    out.e.symbols = symbols;
    out.e.tables = {init, up, fin};
    out.e.control = control;
    out.e.start = start_stab;
    out.e_prime = out.e;
    out.e_prime.start = start_nonstab;
    stats.ell = ell;
    stats.pairs = index.pairs.size();
    stats.step_entries = steps.entries.size();
    stats.placeholders = ids.size();
    out.stats = stats;
    return out;
  }
};

GrammarBuilder::GrammarBuilder(const GeneratingSet& gens, const Vertex& a, const Vertex& b)
    : impl_(std::make_unique<Impl>(gens, a, b)) {}
GrammarBuilder::~GrammarBuilder() = default;

const IndexSet& GrammarBuilder::index_set() const { return impl_->index; }
const StepRelation& GrammarBuilder::step_relation() const { return impl_->steps; }
const SymbolSpace& GrammarBuilder::symbols() const { return impl_->symbols; }
Symbol GrammarBuilder::symbol(const Placeholder& p) { return impl_->symbol(p); }
std::optional<Placeholder> GrammarBuilder::placeholder(Symbol s) const {
  return s < impl_->by_symbol.size() ? impl_->by_symbol[s] : std::nullopt;
}
std::string GrammarBuilder::name(const Placeholder& p) const { return impl_->name(p); }
Dfa GrammarBuilder::tau_init(Variant variant) { return impl_->tau_init(variant); }
Dfa GrammarBuilder::tau_up(const Placeholder& p) { return impl_->tau_up(p); }
std::shared_ptr<const GraphLanguage> GrammarBuilder::tau_finish(const Placeholder& p) { return impl_->tau_finish(p); }
BuiltGrammars GrammarBuilder::build() { return impl_->build(); }

BuiltGrammars build_grammars(const GeneratingSet& gens, const Vertex& a, const Vertex& b) {
  return GrammarBuilder(gens, a, b).build();
}

}  // namespace raystab
