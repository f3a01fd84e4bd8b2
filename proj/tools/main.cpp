#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

#include "raystab/classify.hpp"
#include "raystab/errors.hpp"
#include "raystab/grammar_builder.hpp"
#include "raystab/grammar_io.hpp"
#include "raystab/group_file.hpp"
#include "raystab/schreier.hpp"
#include "raystab/series.hpp"
#include "raystab/stab_decide.hpp"
#include "raystab/transducer.hpp"
#include "raystab/xval.hpp"

using namespace raystab;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kCap = 3 };

struct Global {
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 1;
  bool symmetrize = false;
  bool csv() const { return format == "csv"; }
};

struct RayArgs {
  std::string group, initial = "e", period;

  void add(CLI::App* cmd, bool need_ray = true) {
    cmd->add_option("--group,-g", group, "group file")->required()->check(CLI::ExistingFile);
    if (!need_ray) return;
    cmd->add_option("--initial,-a", initial, "initial part of the ray (e for none)");
    cmd->add_option("--period,-b", period, "period of the ray")->required();
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw Error("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

GeneratingSet load(const Global& g, const std::string& path) {
  GeneratingSet gens = load_group(path);
  return g.symmetrize ? gens.symmetrized() : gens;
}

Word parse_word(const GeneratingSet& gens, const std::string& text) {
  if ((text.empty() || text == "e") && !gens.index_of("e")) return {};
  return gens.parse_word(text);
}

std::string word_text(const GeneratingSet& gens, const Word& w) { return w.empty() ? "e" : gens.format_word(w); }

template <class T>
void print_series(std::ostream& out, const std::vector<T>& values, bool csv, const char* header) {
  if (csv) out << "m," << header << '\n';
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (csv)
      out << m << ',' << values[m] << '\n';
    else
      out << (m ? " " : "") << values[m];
  }
  if (!csv) out << '\n';
}

std::string class_name(const Classification& c) {
  if (std::holds_alternative<Finitary>(c)) return "finitary";
  if (std::holds_alternative<Directed>(c)) return "directed";
  if (std::holds_alternative<BoundedOther>(c)) return "bounded";
  return "unbounded";
}

int cmd_classify(const Global& g, const RayArgs& r) {
  GeneratingSet gens = load(g, r.group);
  Output out(g.out);
  if (g.csv()) out.stream() << "generator,class,depth,spine\n";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Classification c = classify(gens.element(i));
    if (g.csv()) {
      std::string depth, spine_text;
      if (auto* f = std::get_if<Finitary>(&c)) depth = std::to_string(f->depth);
      if (auto* d = std::get_if<Directed>(&c)) spine_text = d->spine.ray().to_string();
      out.stream() << gens.name(i) << ',' << class_name(c) << ',' << depth << ',' << spine_text << '\n';
    } else {
      out.stream() << gens.name(i) << ": " << describe(c) << '\n';
    }
  }
  return kOk;
}

int cmd_member(const Global& g, const RayArgs& r, const std::string& word, std::size_t random, std::size_t length) {
  GeneratingSet gens = load(g, r.group);
  const Vertex a = Vertex::parse(r.initial, gens.degree());
  const Vertex b = Vertex::parse(r.period, gens.degree());
  Output out(g.out);
  if (random == 0) {
    bool member = member_periodic(gens, parse_word(gens, word), a, b);
    out.stream() << (member ? "member" : "non-member") << '\n';
    return member ? kOk : kNegative;
  }
  // Random words, decided twice: by the periodic procedure and by prefix checks.
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<std::size_t> len_dist(0, length), gen_dist(0, gens.size() - 1);
  const RayOracle oracle = RayOracle::periodic(Ray(a, b));
  std::size_t disagreements = 0;
  if (g.csv()) out.stream() << "word,periodic,prefix\n";
  for (std::size_t i = 0; i < random; ++i) {
    Word w(len_dist(rng));
    for (auto& x : w) x = static_cast<std::uint32_t>(gen_dist(rng));
    bool periodic = member_periodic(gens, w, a, b);
    MembershipVerdict v = member_promise(gens, w, oracle, 4096);
    std::string prefix = std::holds_alternative<Member>(v)      ? "member"
                         : std::holds_alternative<NonMember>(v) ? "non-member"
                                                                : "undecided";
    // Undecided only means no prefix within the cap settled it.
    if ((periodic && prefix == "non-member") || (!periodic && prefix != "non-member")) ++disagreements;
    const std::string verdict = periodic ? "member" : "non-member";
    if (g.csv())
      out.stream() << word_text(gens, w) << ',' << verdict << ',' << prefix << '\n';
    else
      out.stream() << word_text(gens, w) << ": " << verdict << " / " << prefix << '\n';
  }
  return disagreements == 0 ? kOk : kNegative;
}

int cmd_enum_wp(const Global& g, const RayArgs& r, std::size_t length, bool counts_only) {
  GeneratingSet gens = load(g, r.group);
  WordProblemSet wp =
      enumerate_wp(gens, Vertex::parse(r.initial, gens.degree()), Vertex::parse(r.period, gens.degree()), length);
  Output out(g.out);
  if (!counts_only)
    for (const Word& w : wp.words) out.stream() << word_text(gens, w) << '\n';
  print_series(out.stream(), wp.counts, true, "count");
  return kOk;
}

int cmd_schreier(const Global& g, const RayArgs& r, std::size_t length, std::optional<std::size_t> level,
                 std::size_t max_level, const std::string& dot) {
  GeneratingSet gens = load(g, r.group);
  Ray ray(Vertex::parse(r.initial, gens.degree()), Vertex::parse(r.period, gens.degree()));
  std::size_t n = 0;
  std::vector<BigInt> counts;
  if (level) {
    n = *level;
    counts = closed_walk_counts(level_graph(gens, n, ray.prefix(n), true), length);
  } else {
    StableWalkCounts walks = stable_walk_counts(gens, ray, length, max_level);
    n = walks.level;
    counts = std::move(walks.counts);
  }
  if (!dot.empty()) {
    Output file(dot);
    file.stream() << export_dot(level_graph(gens, n, ray.prefix(n), true));
  }
  Output out(g.out);
  if (!g.csv()) out.stream() << "level " << n << '\n';
  print_series(out.stream(), counts, g.csv(), "closed_walks");
  return kOk;
}

int cmd_green(const Global& g, const RayArgs& r, std::size_t length, std::size_t max_level) {
  GeneratingSet gens = load(g, r.group);
  Ray ray(Vertex::parse(r.initial, gens.degree()), Vertex::parse(r.period, gens.degree()));
  StableWalkCounts walks = stable_walk_counts(gens, ray, length, max_level);
  LevelGraph graph = level_graph(gens, walks.level, ray.prefix(walks.level), true);
  Output out(g.out);
  std::vector<Rational> p = green_coeffs(graph, length);
  if (!g.csv()) {
    print_series(out.stream(), p, false, "");
    return kOk;
  }
  out.stream() << "m,p_numerator,p_denominator\n";
  for (std::size_t m = 0; m < p.size(); ++m)
    out.stream() << m << ',' << numerator(p[m]) << ',' << denominator(p[m]) << '\n';
  return kOk;
}

int cmd_grammar(const Global& g, const RayArgs& r, const std::string& variant, bool stats) {
  GeneratingSet gens = load(g, r.group);
  BuiltGrammars built =
      build_grammars(gens, Vertex::parse(r.initial, gens.degree()), Vertex::parse(r.period, gens.degree()));
  if (stats) {
    const BuildStats& s = built.stats;
    std::cerr << "ell " << s.ell << "\npairs " << s.pairs << "\nstep_entries " << s.step_entries
              << "\nplaceholders " << s.placeholders << "\ninit_states " << s.init_states << "\nup_states "
              << s.up_states << "\nfinish_vertices " << s.finish_vertices << "\nfinish_edges " << s.finish_edges
              << '\n';
  }
  Output out(g.out);
  out.stream() << format_grammar(variant == "e" ? built.e : built.e_prime);
  return kOk;
}

int cmd_lang(const Global& g, const std::string& path, std::size_t length, std::size_t rounds) {
  Et0lGrammar grammar = load_grammar(path);
  Output out(g.out);
  if (check_structure(grammar).empty()) {
    LimitingWords lw = generate_limiting(LimitingGrammar::create(grammar), length, rounds);
    for (const Word& w : lw.words) out.stream() << grammar.symbols.format(w) << '\n';
    return kOk;
  }
  GenerateResult res = generate(grammar, length, rounds);
  for (const Word& w : res.words) out.stream() << grammar.symbols.format(w) << '\n';
  if (res.truncated) std::cerr << "warning: derivations were cut at " << rounds << " table applications\n";
  return kOk;
}

int cmd_check_grammar(const Global& g, const std::string& path, std::size_t length, std::size_t rounds) {
  Et0lGrammar grammar = load_grammar(path);
  ValidationReport report = validate_limiting(grammar, length, rounds);
  Output out(g.out);
  if (g.csv()) out.stream() << "kind,message,witness\n";
  for (const Violation& v : report.violations) {
    if (g.csv())
      out.stream() << v.kind << ',' << v.message << ',' << v.witness << '\n';
    else
      out.stream() << v.kind << ": " << v.message << (v.witness.empty() ? "" : " [" + v.witness + "]") << '\n';
  }
  if (report.ok() && !g.csv()) out.stream() << "ok\n";
  return report.ok() ? kOk : kNegative;
}

int cmd_gfun(const Global& g, const std::string& path, std::size_t length, std::size_t rounds) {
  LimitingGrammar lg = LimitingGrammar::create(load_grammar(path));
  GfunResult f = gfun_recurrence(lg, length, rounds);
  Output out(g.out);
  print_series(out.stream(), f.coefficients, g.csv(), "coefficient");
  if (!g.csv()) out.stream() << "stabilization " << f.stabilization_index << '\n';
  return kOk;
}

int cmd_transduce(const Global& g, const std::string& grammar_path, const std::string& gsm_path,
                  std::size_t check_len) {
  LimitingGrammar lg = LimitingGrammar::create(load_grammar(grammar_path));
  Gsm m = load_gsm(gsm_path);
  LimitingGrammar result = transform_grammar(lg, m, check_len);
  Output out(g.out);
  out.stream() << format_grammar(result.grammar());
  return kOk;
}

int cmd_export_dot(const Global& g, const RayArgs& r, std::size_t level, const std::string& base, bool component) {
  GeneratingSet gens = load(g, r.group);
  Vertex v = base.empty() ? Vertex(std::string(level, '\0')) : Vertex::parse(base, gens.degree());
  if (v.size() != level) throw Error("base vertex must lie on the requested level");
  Output out(g.out);
  out.stream() << export_dot(level_graph(gens, level, v, component));
  return kOk;
}

int cmd_xval(const Global& g, const RayArgs& r, std::size_t length, const std::string& e_path,
             const std::string& e_prime_path) {
  GeneratingSet gens = load(g, r.group);
  XvalOptions options;
  options.max_len = length;
  if (!e_path.empty()) options.e = load_grammar(e_path);
  if (!e_prime_path.empty()) options.e_prime = load_grammar(e_prime_path);
  XvalReport report =
      run_xval(gens, Vertex::parse(r.initial, gens.degree()), Vertex::parse(r.period, gens.degree()), options);
  Output out(g.out);
  out.stream() << format_xval(report, g.csv());
  return report.ok() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word problems of ray stabilisers in automaton groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "csv"}));
  app.add_option("--out,-o", g.out, "write output to a file");
  app.add_option("--seed", g.seed, "seed for random sampling");
  app.add_flag("--symmetrize", g.symmetrize, "add missing inverses to the generating set");

  std::function<int()> run;
  RayArgs r;
  std::size_t length = 8, rounds = 256, max_level = 4096;

  auto* classify_cmd = app.add_subcommand("classify", "classify each generator");
  r.add(classify_cmd, false);
  classify_cmd->add_flag_callback("--csv", [&] { g.format = "csv"; }, "same as --format csv");
  classify_cmd->callback([&] { run = [&] { return cmd_classify(g, r); }; });

  auto* member_cmd = app.add_subcommand("member", "decide whether a word fixes the ray");
  std::string word;
  std::size_t random = 0;
  r.add(member_cmd);
  member_cmd->add_option("--word,-w", word, "word over the generators");
  member_cmd->add_option("--random", random, "check this many random words instead");
  member_cmd->add_option("--max-len,--length,-L", length, "maximal random word length");
  member_cmd->callback([&] {
    if (random == 0 && member_cmd->count("--word") == 0) throw CLI::RequiredError("--word or --random");
    run = [&] { return cmd_member(g, r, word, random, length); };
  });

  auto* enum_cmd = app.add_subcommand("enum-wp", "enumerate the word problem by brute force");
  bool counts_only = false;
  r.add(enum_cmd);
  enum_cmd->add_option("--max-len,--length,-L", length, "maximal word length");
  enum_cmd->add_flag("--counts-only", counts_only, "omit the word list");
  enum_cmd->callback([&] { run = [&] { return cmd_enum_wp(g, r, length, counts_only); }; });

  auto* schreier_cmd = app.add_subcommand("schreier", "closed walk counts in the Schreier graph");
  std::optional<std::size_t> schreier_level;
  std::string dot_path;
  r.add(schreier_cmd);
  schreier_cmd->add_option("--counts,--length,-L", length, "maximal walk length");
  schreier_cmd->add_option("--level,-n", schreier_level, "fixed level (default: until the counts settle)");
  schreier_cmd->add_option("--max-level", max_level, "largest level to try");
  schreier_cmd->add_option("--dot", dot_path, "also write the orbit graph in DOT");
  schreier_cmd->callback([&] {
    run = [&] { return cmd_schreier(g, r, length, schreier_level, max_level, dot_path); };
  });

  auto* green_cmd = app.add_subcommand("green", "return probabilities of the simple random walk");
  r.add(green_cmd);
  green_cmd->add_option("--max-len,--length,-L", length, "largest walk length");
  green_cmd->add_option("--max-level", max_level, "largest level to try");
  green_cmd->callback([&] { run = [&] { return cmd_green(g, r, length, max_level); }; });

  auto* grammar_cmd = app.add_subcommand("grammar", "build the grammar for the stabiliser or its complement");
  std::string variant = "e";
  bool stats = false;
  r.add(grammar_cmd);
  grammar_cmd->add_option("--variant", variant, "e or eprime")->check(CLI::IsMember({"e", "eprime"}));
  grammar_cmd->add_flag("--stats", stats, "print construction sizes to stderr");
  grammar_cmd->callback([&] { run = [&] { return cmd_grammar(g, r, variant, stats); }; });

  std::string grammar_path;
  auto* lang_cmd = app.add_subcommand("lang", "list the words of a grammar");
  lang_cmd->add_option("grammar,--grammar", grammar_path, "grammar file")->required()->check(CLI::ExistingFile);
  lang_cmd->add_option("--max-len,--length,-L", length, "maximal word length");
  lang_cmd->add_option("--rounds", rounds, "round bound");
  lang_cmd->callback([&] { run = [&] { return cmd_lang(g, grammar_path, length, rounds); }; });

  auto* check_cmd = app.add_subcommand("check-grammar", "validate the limiting conditions");
  check_cmd->add_option("grammar,--grammar", grammar_path, "grammar file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--max-len,--length,-L", length, "maximal word length");
  check_cmd->add_option("--rounds", rounds, "round bound");
  check_cmd->callback([&] { run = [&] { return cmd_check_grammar(g, grammar_path, length, rounds); }; });

  auto* gfun_cmd = app.add_subcommand("gfun", "coefficients of the generating function");
  gfun_cmd->add_option("grammar,--grammar", grammar_path, "grammar file")->required()->check(CLI::ExistingFile);
  gfun_cmd->add_option("--max-deg,--length,-L", length, "maximal degree");
  gfun_cmd->add_option("--rounds", rounds, "round bound");
  gfun_cmd->callback([&] { run = [&] { return cmd_gfun(g, grammar_path, length, rounds); }; });

  auto* transduce_cmd = app.add_subcommand("transduce", "apply a gsm to a limiting grammar");
  std::string gsm_path;
  std::size_t check_len = 8;
  transduce_cmd->add_option("--grammar", grammar_path, "grammar file")->required()->check(CLI::ExistingFile);
  transduce_cmd->add_option("--gsm", gsm_path, "gsm file")->required()->check(CLI::ExistingFile);
  transduce_cmd->add_option("--check-length", check_len, "input length for the injectivity check");
  transduce_cmd->callback([&] { run = [&] { return cmd_transduce(g, grammar_path, gsm_path, check_len); }; });

  auto* dot_cmd = app.add_subcommand("export-dot", "Schreier graph of a level in DOT");
  std::size_t level = 3;
  std::string base;
  bool component = false;
  r.add(dot_cmd, false);
  dot_cmd->add_option("--level,-n", level, "tree level");
  dot_cmd->add_option("--base", base, "base vertex (default 0...0)");
  dot_cmd->add_flag("--component", component, "only the orbit of the base vertex");
  dot_cmd->callback([&] { run = [&] { return cmd_export_dot(g, r, level, base, component); }; });

  auto* xval_cmd = app.add_subcommand("xval", "cross-validate all pipelines");
  std::string e_path, e_prime_path;
  r.add(xval_cmd);
  xval_cmd->add_option("--max-len,--length,-L", length, "maximal word length");
  xval_cmd->add_option("--grammar-e", e_path, "use this grammar for the stabiliser")->check(CLI::ExistingFile);
  xval_cmd->add_option("--grammar-eprime", e_prime_path, "use this grammar for the complement")
      ->check(CLI::ExistingFile);
  xval_cmd->callback([&] { run = [&] { return cmd_xval(g, r, length, e_path, e_prime_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return run();
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
