#include "raystab/grammar_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "raystab/errors.hpp"
#include "raystab/regex.hpp"

namespace raystab {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
  std::string rest_after(std::size_t token_count) const;
  std::string text;
};

std::string Line::rest_after(std::size_t token_count) const {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < token_count; ++i) {
    pos = text.find_first_not_of(" \t", pos);
    pos = text.find_first_of(" \t", pos);
    if (pos == std::string::npos) return "";
  }
  return text.substr(pos);
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    Line line{n, {}, raw};
    std::string t;
    while (tokens >> t) line.tokens.push_back(t);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

class GrammarParser {
 public:
  explicit GrammarParser(std::string_view text) : lines_(split_lines(text)) {}

  Et0lGrammar parse() {
    std::string start_name;
    std::size_t start_line = 0;
    std::vector<std::pair<std::string, std::shared_ptr<Table>>> tables;
    std::optional<std::size_t> control_at;
    while (pos_ < lines_.size()) {
      const Line& line = lines_[pos_];
      const std::string& head = line.tokens[0];
      if (head == "terminals:" || head == "nonterminals:") {
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
          if (g_.symbols.find(line.tokens[i])) throw ParseError(line.number, "duplicate symbol '" + line.tokens[i] + "'");
          if (head == "terminals:")
            g_.symbols.add_terminal(line.tokens[i]);
          else
            g_.symbols.add_nonterminal(line.tokens[i]);
        }
        ++pos_;
      } else if (head == "start:") {
        if (line.tokens.size() != 2) throw ParseError(line.number, "start: needs one symbol");
        start_name = line.tokens[1];
        start_line = line.number;
        ++pos_;
      } else if (head == "graph") {
        parse_graph();
      } else if (head == "table") {
        if (line.tokens.size() != 3 || line.tokens[2] != "{") throw ParseError(line.number, "expected 'table NAME {'");
        for (const auto& [name, t] : tables)
          if (name == line.tokens[1]) throw ParseError(line.number, "duplicate table '" + name + "'");
        auto table = std::make_shared<Table>(line.tokens[1]);
        ++pos_;
        parse_table(*table, line.number);
        tables.emplace_back(table->name(), table);
      } else if (head == "control:") {
        if (control_at) throw ParseError(line.number, "control declared twice");
        control_at = pos_;
        if (line.tokens.size() == 3 && line.tokens[1] == "automaton" && line.tokens[2] == "{") {
          ++pos_;
          skip_block();
        } else {
          ++pos_;
        }
      } else {
        throw ParseError(line.number, "unexpected '" + head + "'");
      }
    }
    if (start_name.empty()) throw ParseError(0, "missing start: line");
    auto start = g_.symbols.find(start_name);
    if (!start || g_.symbols.is_terminal(*start)) throw ParseError(start_line, "start must be a declared nonterminal");
    g_.start = *start;
    for (auto& [name, t] : tables) g_.tables.push_back(t);
    if (!control_at) throw ParseError(0, "missing control: line");
    SymbolResolver by_table = [&](std::string_view name) -> std::optional<Symbol> {
      if (auto i = g_.table_index(name)) return static_cast<Symbol>(*i);
      return std::nullopt;
    };
    pos_ = *control_at;
    const Line& line = lines_[pos_];
    if (line.tokens.size() == 3 && line.tokens[1] == "automaton" && line.tokens[2] == "{") {
      ++pos_;
      g_.control = parse_automaton(by_table, line.number);
    } else {
      g_.control = regex_at(line, line.rest_after(1), by_table);
    }
    return std::move(g_);
  }

 private:
  SymbolResolver symbol_resolver() const {
    return [this](std::string_view name) { return g_.symbols.find(name); };
  }

  Dfa regex_at(const Line& line, const std::string& text, const SymbolResolver& resolve) {
    try {
      return compile_regex(text, resolve);
    } catch (const ParseError& e) {
      throw ParseError(line.number, e.what());
    }
  }

  void skip_block() {
    while (pos_ < lines_.size() && lines_[pos_].tokens[0] != "}") ++pos_;
    if (pos_ == lines_.size()) throw ParseError(0, "unterminated block");
    ++pos_;
  }

  Symbol resolve_symbol(const Line& line, const std::string& name, const SymbolResolver& resolve) {
    auto s = resolve(name);
    if (!s) throw ParseError(line.number, "unknown symbol '" + name + "'");
    return *s;
  }

  std::size_t parse_index(const Line& line, const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(line.number, "expected a state number, got '" + text + "'");
    return std::stoul(text);
  }

  void parse_graph() {
    const Line& head = lines_[pos_];
    if (head.tokens.size() != 3 || head.tokens[2] != "{") throw ParseError(head.number, "expected 'graph NAME {'");
    if (graphs_.count(head.tokens[1])) throw ParseError(head.number, "duplicate graph '" + head.tokens[1] + "'");
    auto graph = std::make_shared<SharedGraph>();
    ++pos_;
    bool sized = false;
    SymbolResolver resolve = symbol_resolver();
    for (;; ++pos_) {
      if (pos_ == lines_.size()) throw ParseError(head.number, "unterminated graph block");
      const Line& line = lines_[pos_];
      if (line.tokens[0] == "}") break;
      if (line.tokens[0] == "states" && line.tokens.size() == 2 && !sized) {
        graph->edges.resize(parse_index(line, line.tokens[1]));
        sized = true;
      } else if (line.tokens[0] == "edge" && line.tokens.size() == 4 && sized) {
        std::size_t from = parse_index(line, line.tokens[1]), to = parse_index(line, line.tokens[3]);
        if (from >= graph->edges.size() || to >= graph->edges.size()) throw ParseError(line.number, "state out of range");
        Symbol s = resolve_symbol(line, line.tokens[2], resolve);
        auto& list = graph->edges[from];
        auto it = std::lower_bound(list.begin(), list.end(), s, [](const Edge& e, Symbol x) { return e.symbol < x; });
        if (it != list.end() && it->symbol == s) throw ParseError(line.number, "graph is not deterministic");
        list.insert(it, Edge{s, static_cast<StateIndex>(to)});
      } else {
        throw ParseError(line.number, "expected 'states N' then 'edge FROM SYMBOL TO'");
      }
    }
    ++pos_;
    graphs_.emplace(head.tokens[1], std::move(graph));
  }

  Dfa parse_automaton(const SymbolResolver& resolve, std::size_t opened_at) {
    Dfa dfa;
    std::map<std::string, StateIndex> names;
    std::optional<std::string> start;
    auto state = [&](const std::string& name) {
      auto it = names.find(name);
      if (it != names.end()) return it->second;
      StateIndex id = dfa.add_state();
      names.emplace(name, id);
      if (!start) start = name;
      return id;
    };
    for (;; ++pos_) {
      if (pos_ == lines_.size()) throw ParseError(opened_at, "unterminated automaton block");
      const Line& line = lines_[pos_];
      const std::string& head = line.tokens[0];
      if (head == "}") break;
      if (head == "states" && line.tokens.size() == 2) {
        std::size_t n = parse_index(line, line.tokens[1]);
        for (std::size_t i = 0; i < n; ++i) state(std::to_string(i));
      } else if (head == "state") {
        for (std::size_t i = 1; i < line.tokens.size(); ++i) state(line.tokens[i]);
      } else if (head == "start" && line.tokens.size() == 2) {
        state(line.tokens[1]);
        start = line.tokens[1];
      } else if (head == "accept") {
        for (std::size_t i = 1; i < line.tokens.size(); ++i) dfa.set_accepting(state(line.tokens[i]));
      } else if (head == "edge" && line.tokens.size() == 4) {
        StateIndex from = state(line.tokens[1]);
        Symbol s = resolve_symbol(line, line.tokens[2], resolve);
        StateIndex to = state(line.tokens[3]);
        try {
          dfa.add_edge(from, s, to);
        } catch (const Error& e) {
          throw ParseError(line.number, e.what());
        }
      } else {
        throw ParseError(line.number, "unexpected '" + head + "' in automaton block");
      }
    }
    ++pos_;
    if (!start) return Dfa::empty_language();
    dfa.set_start(names.at(*start));
    return dfa;
  }

  void parse_table(Table& table, std::size_t opened_at) {
    SymbolResolver resolve = symbol_resolver();
    for (;;) {
      if (pos_ == lines_.size()) throw ParseError(opened_at, "unterminated table block");
      const Line& line = lines_[pos_];
      if (line.tokens[0] == "}") {
        ++pos_;
        return;
      }
      if (line.tokens.size() < 2 || line.tokens[1] != "->") throw ParseError(line.number, "expected 'V -> ...'");
      auto v = g_.symbols.find(line.tokens[0]);
      if (!v || g_.symbols.is_terminal(*v))
        throw ParseError(line.number, "'" + line.tokens[0] + "' is not a nonterminal");
      if (table.image(*v)) throw ParseError(line.number, "nonterminal listed twice in table");
      if (line.tokens.size() == 4 && line.tokens[2] == "automaton" && line.tokens[3] == "{") {
        ++pos_;
        table.set(*v, std::make_shared<Dfa>(parse_automaton(resolve, line.number)));
      } else if (line.tokens.size() >= 3 && line.tokens[2] == "graph") {
        table.set(*v, parse_graph_ref(line, *v));
        ++pos_;
      } else {
        table.set(*v, std::make_shared<Dfa>(regex_at(line, line.rest_after(2), resolve)));
        ++pos_;
      }
    }
  }

  std::shared_ptr<const Language> parse_graph_ref(const Line& line, Symbol v) {
    // V -> graph NAME start N accept (all | only N | except N) [self]
    const auto& t = line.tokens;
    auto bad = [&]() { return ParseError(line.number, "expected 'V -> graph NAME start N accept all|only N|except N [self]'"); };
    if (t.size() < 7 || t[4] != "start" || t[6] != "accept") throw bad();
    auto it = graphs_.find(t[3]);
    if (it == graphs_.end()) throw ParseError(line.number, "unknown graph '" + t[3] + "'");
    StateIndex start = static_cast<StateIndex>(parse_index(line, t[5]));
    if (start >= it->second->edges.size()) throw ParseError(line.number, "start out of range");
    std::size_t i = 7;
    if (i >= t.size()) throw bad();
    GraphLanguage::Accept mode;
    std::optional<StateIndex> marked;
    if (t[i] == "all") {
      mode = GraphLanguage::Accept::All;
      ++i;
    } else if ((t[i] == "only" || t[i] == "except") && i + 1 < t.size()) {
      mode = t[i] == "only" ? GraphLanguage::Accept::Only : GraphLanguage::Accept::Except;
      marked = static_cast<StateIndex>(parse_index(line, t[i + 1]));
      i += 2;
    } else {
      throw bad();
    }
    std::optional<Symbol> self;
    if (i < t.size() && t[i] == "self") {
      self = v;
      ++i;
    }
    if (i != t.size()) throw bad();
    return std::make_shared<GraphLanguage>(it->second, start, mode, marked, self);
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  Et0lGrammar g_;
  std::map<std::string, std::shared_ptr<const SharedGraph>> graphs_;
};

void write_automaton(std::ostream& out, const Language& lang, const SymbolSpace* symbols,
                     const Et0lGrammar* tables_for_names, const std::string& indent) {
  std::vector<StateIndex> order = reachable_states(lang);
  std::unordered_map<StateIndex, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index.emplace(order[i], i);
  auto symbol_name = [&](Symbol s) -> std::string {
    if (symbols) return symbols->name(s);
    return tables_for_names->tables.at(s)->name();
  };
  out << indent << "  states " << order.size() << "\n";
  std::string accept;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (lang.accepting(order[i])) accept += " " + std::to_string(i);
  if (!accept.empty()) out << indent << "  accept" << accept << "\n";
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const Edge& e : lang.edges(order[i]))
      out << indent << "  edge " << i << " " << symbol_name(e.symbol) << " " << index.at(e.target) << "\n";
  out << indent << "}\n";
}

}  // namespace

Et0lGrammar parse_grammar(std::string_view text) { return GrammarParser(text).parse(); }

Et0lGrammar load_grammar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read grammar file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grammar(buf.str());
}

std::string format_grammar(const Et0lGrammar& g) {
  std::ostringstream out;
  out << "terminals:";
  for (Symbol s : g.symbols.terminals()) out << " " << g.symbols.name(s);
  out << "\nnonterminals:";
  for (Symbol s : g.symbols.nonterminals()) out << " " << g.symbols.name(s);
  out << "\nstart: " << g.symbols.name(g.start) << "\n";

  std::map<const SharedGraph*, std::string> graph_names;
  std::vector<const SharedGraph*> graph_order;
  for (const auto& t : g.tables)
    for (Symbol v : t->entries())
      if (auto* gl = dynamic_cast<const GraphLanguage*>(t->image(v))) {
        if (gl->self() && *gl->self() != v)
          throw Error("cannot write a graph language whose extra word is not its own nonterminal");
        if (graph_names.emplace(gl->graph().get(), "G" + std::to_string(graph_names.size())).second)
          graph_order.push_back(gl->graph().get());
      }
  for (const SharedGraph* graph : graph_order) {
    out << "graph " << graph_names[graph] << " {\n  states " << graph->edges.size() << "\n";
    for (std::size_t i = 0; i < graph->edges.size(); ++i)
      for (const Edge& e : graph->edges[i])
        out << "  edge " << i << " " << g.symbols.name(e.symbol) << " " << e.target << "\n";
    out << "}\n";
  }

  for (const auto& t : g.tables) {
    out << "table " << t->name() << " {\n";
    for (Symbol v : t->entries()) {
      const Language* lang = t->image(v);
      if (auto* gl = dynamic_cast<const GraphLanguage*>(lang)) {
        out << "  " << g.symbols.name(v) << " -> graph " << graph_names[gl->graph().get()] << " start "
            << gl->graph_start() << " accept ";
        switch (gl->mode()) {
          case GraphLanguage::Accept::All:
            out << "all";
            break;
          case GraphLanguage::Accept::Only:
            out << "only " << *gl->marked();
            break;
          case GraphLanguage::Accept::Except:
            out << "except " << *gl->marked();
            break;
        }
        if (gl->self()) out << " self";
        out << "\n";
      } else {
        out << "  " << g.symbols.name(v) << " -> automaton {\n";
        write_automaton(out, *lang, &g.symbols, nullptr, "  ");
      }
    }
    out << "}\n";
  }

  // Prefer the compact regular expression for the usual control shape.
  bool written = false;
  if (g.tables.size() == 3) {
    std::array<std::size_t, 3> p{0, 1, 2};
    do {
      Dfa shape;
      StateIndex s0 = shape.add_state(), s1 = shape.add_state(), s2 = shape.add_state(true);
      shape.add_edge(s0, static_cast<Symbol>(p[0]), s1);
      shape.add_edge(s1, static_cast<Symbol>(p[1]), s1);
      shape.add_edge(s1, static_cast<Symbol>(p[2]), s2);
      if (equivalent(g.control, shape)) {
        out << "control: " << g.tables[p[0]]->name() << " " << g.tables[p[1]]->name() << "* "
            << g.tables[p[2]]->name() << "\n";
        written = true;
        break;
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }
  if (!written) {
    out << "control: automaton {\n";
    write_automaton(out, g.control, nullptr, &g, "");
  }
  return out.str();
}

void save_grammar(const Et0lGrammar& grammar, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write grammar file " + path.string());
  out << format_grammar(grammar);
}

}  // namespace raystab
