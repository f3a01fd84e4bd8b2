#include "raystab/transducer.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "nfa.hpp"
#include "raystab/errors.hpp"

namespace raystab {

// ---------------------------------------------------------------- Gsm

Gsm::Gsm(std::vector<std::string> inputs, std::vector<std::string> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {}

Gsm::State Gsm::add_state(std::string name, bool accepting) {
  if (find_state(name)) throw Error("duplicate gsm state '" + name + "'");
  names_.push_back(std::move(name));
  accepting_.push_back(accepting);
  delta_.emplace_back(inputs_.size());
  return names_.size() - 1;
}

void Gsm::set_transition(State from, std::size_t input, Word output, State to) {
  if (from >= state_count() || to >= state_count()) throw Error("gsm transition references a missing state");
  if (input >= inputs_.size()) throw Error("gsm transition reads an unknown letter");
  for (auto letter : output)
    if (letter >= outputs_.size()) throw Error("gsm transition writes an unknown letter");
  delta_[from][input] = Transition{std::move(output), to};
}

std::optional<Gsm::State> Gsm::find_state(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<State>(it - names_.begin());
}

std::optional<Word> apply_gsm(const Gsm& m, const Word& w) {
  if (m.state_count() == 0) return std::nullopt;
  Word out;
  Gsm::State q = m.initial();
  for (auto letter : w) {
    if (letter >= m.inputs().size()) return std::nullopt;
    const auto& t = m.transition(q, letter);
    if (!t) return std::nullopt;
    out.insert(out.end(), t->output.begin(), t->output.end());
    q = t->next;
  }
  if (!m.accepting(q)) return std::nullopt;
  return out;
}

void check_injective(const Gsm& m, std::size_t max_len) {
  if (m.state_count() == 0) return;
  auto format = [&](const Word& w) {
    if (w.empty()) return std::string("e");
    std::string s;
    for (auto letter : w) s += (s.empty() ? "" : " ") + m.inputs()[letter];
    return s;
  };
  std::map<Word, Word> seen;
  struct Frame {
    Word input, output;
    Gsm::State q;
  };
  std::vector<Frame> stack{{{}, {}, m.initial()}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (m.accepting(f.q)) {
      auto [it, fresh] = seen.emplace(f.output, f.input);
      if (!fresh)
        throw InjectivityViolation("gsm maps '" + format(it->second) + "' and '" + format(f.input) +
                                   "' to the same word");
    }
    if (f.input.size() == max_len) continue;
    for (std::size_t a = 0; a < m.inputs().size(); ++a) {
      const auto& t = m.transition(f.q, a);
      if (!t) continue;
      Frame next{f.input, f.output, t->next};
      next.input.push_back(static_cast<std::uint32_t>(a));
      next.output.insert(next.output.end(), t->output.begin(), t->output.end());
      stack.push_back(std::move(next));
    }
  }
}

// ---------------------------------------------------------------- codes

bool is_prefix_antichain(const std::vector<Word>& words) {
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i == j) continue;
      const Word& a = words[i];
      const Word& b = words[j];
      if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin())) return false;
    }
  return true;
}

Gsm decoding_automaton(const PrefixCode& code, std::vector<std::string> inputs, std::vector<std::string> outputs) {
  if (code.words.size() != code.outputs.size()) throw Error("prefix code needs one output per word");
  for (const Word& w : code.words) {
    if (w.empty()) throw Error("prefix code contains the empty word");
    for (auto letter : w)
      if (letter >= inputs.size()) throw Error("prefix code uses an unknown input letter");
  }
  if (!is_prefix_antichain(code.words)) throw Error("code is not an antichain in prefix order");

  Gsm m(inputs, outputs);
  auto name_of = [&](const Word& u) {
    std::string s = "q[";
    for (std::size_t i = 0; i < u.size(); ++i) s += (i ? "." : "") + inputs[u[i]];
    return s + "]";
  };
  std::map<Word, Gsm::State> prefix_state;
  prefix_state[Word{}] = m.add_state(name_of({}), !code.words.empty());
  for (const Word& w : code.words)
    for (std::size_t n = 1; n < w.size(); ++n) {
      Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
      if (!prefix_state.count(u)) prefix_state[u] = m.add_state(name_of(u));
    }
  const Gsm::State fail = m.add_state("fail");
  m.set_initial(prefix_state.at(Word{}));

  std::map<Word, std::size_t> codeword;
  for (std::size_t i = 0; i < code.words.size(); ++i) codeword[code.words[i]] = i;
  for (const auto& [u, q] : prefix_state)
    for (std::size_t g = 0; g < inputs.size(); ++g) {
      Word ug = u;
      ug.push_back(static_cast<std::uint32_t>(g));
      if (auto it = codeword.find(ug); it != codeword.end())
        m.set_transition(q, g, code.outputs[it->second], prefix_state.at(Word{}));
      else if (auto p = prefix_state.find(ug); p != prefix_state.end())
        m.set_transition(q, g, {}, p->second);
      else
        m.set_transition(q, g, {}, fail);
    }
  for (std::size_t g = 0; g < inputs.size(); ++g) m.set_transition(fail, g, {}, fail);
  return m;
}

// ---------------------------------------------------------------- antichains

namespace {

// Breadth-first enumeration of group elements, one sphere at a time.
class SphereSearch {
 public:
  SphereSearch(const GeneratingSet& gens, std::size_t cap) : gens_(gens), cap_(cap) {
    Automorphism id = Automorphism::identity(gens.degree());
    seen_.insert(id);
    layer_.push_back({Word{}, id});
  }

  // The first element of the given radius in breadth-first order, with its
  // shortlex least geodesic.
  Word first_at(std::size_t radius) {
    while (radius_ < radius) {
      std::vector<std::pair<Word, Automorphism>> next;
      for (const auto& [w, g] : layer_)
        for (std::size_t i = 0; i < gens_.size(); ++i) {
          Automorphism h = compose(g, gens_.element(i));
          if (!seen_.insert(h).second) continue;
          if (seen_.size() > cap_)
            throw GeodesicSearchExhausted("no geodesic of length " + std::to_string(radius) + " among the first " +
                                          std::to_string(cap_) + " group elements");
          Word v = w;
          v.push_back(static_cast<std::uint32_t>(i));
          next.emplace_back(std::move(v), std::move(h));
        }
      if (next.empty())
        throw GeodesicSearchExhausted("the group has no element of length " + std::to_string(radius));
      layer_ = std::move(next);
      ++radius_;
    }
    return layer_.front().first;
  }

 private:
  const GeneratingSet& gens_;
  std::size_t cap_;
  std::unordered_set<Automorphism, AutomorphismHash> seen_;
  std::vector<std::pair<Word, Automorphism>> layer_;
  std::size_t radius_ = 0;
};

}  // namespace

std::vector<Word> build_antichain(const GeneratingSet& gens, const std::vector<Word>& suffixes,
                                  std::size_t search_cap) {
  if (suffixes.empty()) return {};
  if (!gens.is_symmetric()) throw NotSymmetric("antichain construction needs a symmetric generating set");
  SphereSearch search(gens, search_cap);
  std::vector<Word> out;
  std::size_t length = 1;
  for (const Word& u : suffixes) {
    Word alpha = search.first_at(length);
    Word w = alpha;
    Word beta = gens.inverse_word(alpha);
    w.insert(w.end(), beta.begin(), beta.end());
    length = w.size() + 1;
    w.insert(w.end(), u.begin(), u.end());
    out.push_back(std::move(w));
  }
  if (!is_prefix_antichain(out)) throw Error("antichain construction produced comparable words");
  return out;
}

// ---------------------------------------------------------------- grammar transformation

namespace {

Dfa limiting_control() {
  Dfa c;
  StateIndex s0 = c.add_state(), s1 = c.add_state(), s2 = c.add_state(true);
  c.add_edge(s0, 0, s1);
  c.add_edge(s1, 1, s1);
  c.add_edge(s1, 2, s2);
  return c;
}

class Transformer {
 public:
  Transformer(const LimitingGrammar& e, const Gsm& m) : e_(e), g_(e.grammar()), m_(m) {
    const SymbolSpace& in = g_.symbols;
    input_of_.resize(in.size());
    for (Symbol t : in.terminals()) {
      auto it = std::find(m.inputs().begin(), m.inputs().end(), in.name(t));
      if (it == m.inputs().end())
        throw AlphabetMismatch("grammar terminal '" + in.name(t) + "' is not an input letter of the gsm");
      input_of_[t] = static_cast<std::size_t>(it - m.inputs().begin());
    }
    compute_useful_states();
    for (const std::string& name : m.outputs()) out_.symbols.add_terminal(name);
  }

  LimitingGrammar run() {
    const std::string start_name = "[" + g_.symbols.name(g_.start) + "]";
    out_.start = out_.symbols.add_nonterminal(start_name);
    auto alpha = std::make_shared<Table>(e_.alpha().name());
    auto beta = std::make_shared<Table>(e_.beta().name());
    auto gamma = std::make_shared<Table>(e_.gamma().name());

    const std::size_t q0 = m_.state_count() == 0 ? 0 : m_.initial();
    if (m_.state_count() > 0 && useful_[q0]) {
      auto accept = [&](std::size_t q) { return m_.accepting(q); };
      alpha->set(out_.start, std::make_shared<Dfa>(annotate(e_.alpha().image(g_.start), g_.start, q0, accept)));
    } else {
      alpha->set(out_.start, std::make_shared<Dfa>(Dfa::empty_language()));
    }

    for (std::size_t i = 0; i < pending_.size(); ++i) {
      const Key key = pending_[i];
      const auto [v, q, q1] = key;
      const Symbol s = symbol_of_.at(key);
      if (g_.symbols.is_terminal(v)) {
        gamma->set(s, std::make_shared<Dfa>(Dfa::single_word(m_.transition(q, input_of_[v].value())->output)));
        continue;
      }
      auto ends_at = [q1 = q1](std::size_t r) { return r == q1; };
      if (const Language* b = e_.beta().image(v)) beta->set(s, std::make_shared<Dfa>(annotate(b, v, q, ends_at)));
      if (const Language* c = e_.gamma().image(v)) gamma->set(s, std::make_shared<Dfa>(finish(*c, s, q, q1)));
    }

    out_.tables = {alpha, beta, gamma};
    out_.control = limiting_control();
    return LimitingGrammar::create(std::move(out_));
  }

 private:
  using Key = std::tuple<Symbol, std::size_t, std::size_t>;

  void compute_useful_states() {
    const std::size_t n = m_.state_count();
    reach_.assign(n, std::vector<bool>(n, false));
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::size_t> todo{q};
      reach_[q][q] = true;
      while (!todo.empty()) {
        std::size_t r = todo.back();
        todo.pop_back();
        for (std::size_t a = 0; a < m_.inputs().size(); ++a)
          if (const auto& t = m_.transition(r, a); t && !reach_[q][t->next]) {
            reach_[q][t->next] = true;
            todo.push_back(t->next);
          }
      }
    }
    useful_.assign(n, false);
    if (n == 0) return;
    for (std::size_t q = 0; q < n; ++q) {
      if (!reach_[m_.initial()][q]) continue;
      for (std::size_t f = 0; f < n; ++f)
        if (m_.accepting(f) && reach_[q][f]) useful_[q] = true;
    }
  }

  Symbol annotated(Symbol v, std::size_t q, std::size_t q1) {
    Key key{v, q, q1};
    if (auto it = symbol_of_.find(key); it != symbol_of_.end()) return it->second;
    Symbol s = out_.symbols.add_nonterminal("[" + g_.symbols.name(v) + "," + m_.state_name(q) + "," +
                                            m_.state_name(q1) + "]");
    symbol_of_.emplace(key, s);
    pending_.push_back(key);
    return s;
  }

  // Next states for a symbol read at gsm state q, restricted to useful states.
  template <class F>
  void for_each_next(Symbol s, std::size_t q, F&& f) {
    if (g_.symbols.is_terminal(s)) {
      const auto& t = m_.transition(q, input_of_[s].value());
      if (t && useful_[t->next]) f(t->next, &t->output);
      return;
    }
    for (std::size_t r = 0; r < m_.state_count(); ++r)
      if (useful_[r] && reach_[q][r]) f(r, nullptr);
  }

  struct Product {
    struct Arc {
      std::size_t to;
      Symbol symbol;     // annotated once the product is trimmed
      const Word* word;  // output of a terminal when finishing
    };
    std::vector<std::vector<Arc>> arcs;
    std::vector<bool> accepting;
    std::vector<bool> alive;
  };

  // The image of v with every symbol annotated by a chain of gsm states from q.
  template <class Accept>
  Dfa annotate(const Language* image, Symbol v, std::size_t q, Accept&& accept) {
    if (image == nullptr) {
      Dfa single = Dfa::single_word({v});
      return annotate(&single, v, q, accept);
    }
    // Annotated symbols are only created along arcs that survive trimming.
    Product p = explore_trimmed(*image, q, accept);
    Dfa out;
    if (!p.alive[0]) return Dfa::empty_language();
    std::vector<StateIndex> state(p.arcs.size());
    for (std::size_t i = 0; i < p.arcs.size(); ++i)
      if (p.alive[i]) state[i] = out.add_state(p.accepting[i]);
    out.set_start(state[0]);
    for (std::size_t i = 0; i < p.arcs.size(); ++i) {
      if (!p.alive[i]) continue;
      for (const auto& a : p.arcs[i])
        if (p.alive[a.to]) out.add_edge(state[i], a.symbol, state[a.to]);
    }
    return out;
  }

  // Explores without annotating, trims, then annotates the surviving arcs.
  template <class Accept>
  Product explore_trimmed(const Language& lang, std::size_t q, Accept&& accept) {
    Product p = explore_plain(lang, q, accept);
    for (std::size_t i = 0; i < p.arcs.size(); ++i) {
      if (!p.alive[i]) continue;
      for (auto& a : p.arcs[i])
        if (p.alive[a.to]) a.symbol = annotated(a.symbol, plain_state_[i], plain_state_[a.to]);
    }
    return p;
  }

  template <class Accept>
  Product explore_plain(const Language& lang, std::size_t q, Accept&& accept) {
    Product p;
    std::map<std::pair<StateIndex, std::size_t>, std::size_t> id;
    std::vector<std::pair<StateIndex, std::size_t>> nodes;
    plain_state_.clear();
    auto intern = [&](StateIndex d, std::size_t r) {
      auto [it, fresh] = id.try_emplace({d, r}, nodes.size());
      if (fresh) {
        nodes.emplace_back(d, r);
        plain_state_.push_back(r);
        p.arcs.emplace_back();
        p.accepting.push_back(lang.accepting(d) && accept(r));
      }
      return it->second;
    };
    intern(lang.start(), q);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto [d, r] = nodes[i];
      for (const Edge& e : lang.edges(d))
        for_each_next(e.symbol, r, [&](std::size_t r1, const Word*) {
          std::size_t to = intern(e.target, r1);
          p.arcs[i].push_back({to, e.symbol, nullptr});
        });
    }
    trim(p);
    return p;
  }

  static void trim(Product& p) {
    std::vector<std::vector<std::size_t>> back(p.arcs.size());
    for (std::size_t i = 0; i < p.arcs.size(); ++i)
      for (const auto& a : p.arcs[i]) back[a.to].push_back(i);
    p.alive.assign(p.arcs.size(), false);
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < p.arcs.size(); ++i)
      if (p.accepting[i]) {
        p.alive[i] = true;
        todo.push_back(i);
      }
    while (!todo.empty()) {
      std::size_t i = todo.back();
      todo.pop_back();
      for (std::size_t j : back[i])
        if (!p.alive[j]) {
          p.alive[j] = true;
          todo.push_back(j);
        }
    }
  }

  // Terminal words of the image with every terminal replaced by its output
  // along a run from q to q1, together with the symbol itself.
  Dfa finish(const Language& image, Symbol self, std::size_t q, std::size_t q1) {
    Product p;
    std::map<std::pair<StateIndex, std::size_t>, std::size_t> id;
    std::vector<std::pair<StateIndex, std::size_t>> nodes;
    auto intern = [&](StateIndex d, std::size_t r) {
      auto [it, fresh] = id.try_emplace({d, r}, nodes.size());
      if (fresh) {
        nodes.emplace_back(d, r);
        p.arcs.emplace_back();
        p.accepting.push_back(image.accepting(d) && r == q1);
      }
      return it->second;
    };
    intern(image.start(), q);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto [d, r] = nodes[i];
      for (const Edge& e : image.edges(d)) {
        if (!g_.symbols.is_terminal(e.symbol)) continue;
        for_each_next(e.symbol, r, [&](std::size_t r1, const Word* out) {
          std::size_t to = intern(e.target, r1);
          p.arcs[i].push_back({to, 0, out});
        });
      }
    }
    trim(p);

    detail::Nfa nfa;
    const std::size_t entry = nfa.add();
    const std::size_t self_end = nfa.add(true);
    nfa.add_edge(entry, self, self_end);
    std::vector<std::size_t> node(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (p.alive[i]) node[i] = nfa.add(p.accepting[i]);
    if (p.alive[0]) nfa.link(entry, node[0]);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!p.alive[i]) continue;
      for (const auto& a : p.arcs[i]) {
        if (!p.alive[a.to]) continue;
        const Word& w = *a.word;
        std::size_t at = node[i];
        for (std::size_t k = 0; k + 1 < w.size(); ++k) {
          std::size_t mid = nfa.add();
          nfa.add_edge(at, w[k], mid);
          at = mid;
        }
        if (w.empty())
          nfa.link(at, node[a.to]);
        else
          nfa.add_edge(at, w.back(), node[a.to]);
      }
    }
    return detail::determinize(nfa, entry, 1u << 20, "finishing image");
  }

  const LimitingGrammar& e_;
  const Et0lGrammar& g_;
  const Gsm& m_;
  std::vector<std::optional<std::size_t>> input_of_;
  std::vector<std::vector<bool>> reach_;
  std::vector<bool> useful_;
  std::vector<std::size_t> plain_state_;
  Et0lGrammar out_;
  std::map<Key, Symbol> symbol_of_;
  std::vector<Key> pending_;
};

}  // namespace

LimitingGrammar transform_grammar(const LimitingGrammar& e, const Gsm& m, std::size_t injectivity_check_len) {
  check_injective(m, injectivity_check_len);
  return Transformer(e, m).run();
}

LimitingGrammar restrict_to_subgroup(const LimitingGrammar& e, const GeneratingSet& gens,
                                     const std::vector<SubgroupGenerator>& ys, std::size_t injectivity_check_len) {
  std::vector<std::string> outputs;
  PrefixCode code;
  std::vector<Word> suffixes;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    outputs.push_back(ys[i].name);
    suffixes.push_back(ys[i].word);
    code.outputs.push_back(Word{static_cast<std::uint32_t>(i)});
  }
  if (ys.empty()) {
    // Over an empty alphabet only the empty word remains, and it survives
    // exactly when the original language contains it.
    Et0lGrammar g;
    g.start = g.symbols.add_nonterminal("S");
    auto alpha = std::make_shared<Table>(e.alpha().name());
    const bool has_empty = !generate_limiting(e, 0).words.empty();
    alpha->set(g.start, std::make_shared<Dfa>(has_empty ? Dfa::epsilon() : Dfa::empty_language()));
    g.tables = {alpha, std::make_shared<Table>(e.beta().name()), std::make_shared<Table>(e.gamma().name())};
    g.control = limiting_control();
    return LimitingGrammar::create(std::move(g));
  }
  code.words = build_antichain(gens, suffixes);
  Gsm m = decoding_automaton(code, gens.names(), outputs);
  return transform_grammar(e, m, injectivity_check_len);
}

// ---------------------------------------------------------------- text format

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::size_t index_in(const std::vector<std::string>& names, const std::string& name, std::size_t line,
                     const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ParseError(line, std::string("unknown ") + what + " '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

Gsm parse_gsm(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t n = 0;
  std::optional<std::vector<std::string>> inputs, outputs;
  std::optional<Gsm> m;
  std::optional<std::string> initial;
  std::size_t initial_line = 0;
  auto machine = [&](std::size_t line) -> Gsm& {
    if (!m) {
      if (!inputs || !outputs) throw ParseError(line, "input and output alphabets must come first");
      m.emplace(*inputs, *outputs);
    }
    return *m;
  };
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tokens = split(raw);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];
    if (head == "input" || head == "output") {
      if (m) throw ParseError(n, "alphabets must come before states");
      auto& target = head == "input" ? inputs : outputs;
      if (target) throw ParseError(n, "duplicate " + head + " line");
      target.emplace(tokens.begin() + 1, tokens.end());
    } else if (head == "state") {
      Gsm& g = machine(n);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (g.find_state(tokens[i])) throw ParseError(n, "duplicate state '" + tokens[i] + "'");
        g.add_state(tokens[i]);
      }
    } else if (head == "initial") {
      if (tokens.size() != 2) throw ParseError(n, "initial needs one state");
      initial = tokens[1];
      initial_line = n;
    } else if (head == "accept") {
      Gsm& g = machine(n);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto q = g.find_state(tokens[i]);
        if (!q) throw ParseError(n, "unknown state '" + tokens[i] + "'");
        g.set_accepting(*q);
      }
    } else if (head == "edge") {
      Gsm& g = machine(n);
      if (tokens.size() < 4) throw ParseError(n, "expected 'edge FROM IN/OUT... TO'");
      auto from = g.find_state(tokens[1]);
      auto to = g.find_state(tokens.back());
      if (!from) throw ParseError(n, "unknown state '" + tokens[1] + "'");
      if (!to) throw ParseError(n, "unknown state '" + tokens.back() + "'");
      const std::string& label = tokens[2];
      auto slash = label.find('/');
      if (slash == std::string::npos) throw ParseError(n, "edge label needs the form IN/OUT");
      std::size_t input = index_in(g.inputs(), label.substr(0, slash), n, "input letter");
      std::vector<std::string> out_names;
      if (slash + 1 < label.size()) out_names.push_back(label.substr(slash + 1));
      out_names.insert(out_names.end(), tokens.begin() + 3, tokens.end() - 1);
      Word out;
      for (const std::string& name : out_names)
        if (name != "eps") out.push_back(static_cast<std::uint32_t>(index_in(g.outputs(), name, n, "output letter")));
      if (g.transition(*from, input)) throw ParseError(n, "second transition on the same letter");
      g.set_transition(*from, input, std::move(out), *to);
    } else {
      throw ParseError(n, "unknown directive '" + head + "'");
    }
  }
  Gsm& g = machine(n);
  if (g.state_count() == 0) throw ParseError(0, "gsm has no states");
  if (initial) {
    auto q = g.find_state(*initial);
    if (!q) throw ParseError(initial_line, "unknown state '" + *initial + "'");
    g.set_initial(*q);
  }
  return std::move(*m);
}

Gsm load_gsm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_gsm(buf.str());
}

std::string format_gsm(const Gsm& m) {
  std::ostringstream out;
  auto list = [&](const char* head, const std::vector<std::string>& names) {
    out << head;
    for (const auto& s : names) out << ' ' << s;
    out << '\n';
  };
  list("input", m.inputs());
  list("output", m.outputs());
  std::vector<std::string> states, accepting;
  for (std::size_t q = 0; q < m.state_count(); ++q) {
    states.push_back(m.state_name(q));
    if (m.accepting(q)) accepting.push_back(m.state_name(q));
  }
  list("state", states);
  if (m.state_count() > 0) out << "initial " << m.state_name(m.initial()) << '\n';
  if (!accepting.empty()) list("accept", accepting);
  for (std::size_t q = 0; q < m.state_count(); ++q)
    for (std::size_t a = 0; a < m.inputs().size(); ++a) {
      const auto& t = m.transition(q, a);
      if (!t) continue;
      out << "edge " << m.state_name(q) << ' ' << m.inputs()[a] << '/';
      if (t->output.empty()) out << "eps";
      for (std::size_t i = 0; i < t->output.size(); ++i) out << (i ? " " : "") << m.outputs()[t->output[i]];
      out << ' ' << m.state_name(t->next) << '\n';
    }
  return out.str();
}

}  // namespace raystab
