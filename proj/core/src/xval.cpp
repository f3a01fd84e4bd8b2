#include "raystab/xval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "raystab/errors.hpp"
#include "raystab/schreier.hpp"
#include "raystab/stab_decide.hpp"

namespace raystab {

namespace {

// Grammar words are rewritten over generator indices by terminal name.
std::set<Word> words_as_generators(const LimitingGrammar& lg, const GeneratingSet& gens, const LimitingWords& lw) {
  const SymbolSpace& symbols = lg.grammar().symbols;
  std::vector<std::optional<std::uint32_t>> generator_of(symbols.size());
  for (Symbol t : symbols.terminals())
    if (auto i = gens.index_of(symbols.name(t))) generator_of[t] = static_cast<std::uint32_t>(*i);
  std::set<Word> out;
  for (const Word& w : lw.words) {
    Word x;
    for (Symbol s : w) {
      if (!generator_of[s]) throw AlphabetMismatch("grammar terminal '" + symbols.name(s) + "' is not a generator");
      x.push_back(*generator_of[s]);
    }
    out.insert(std::move(x));
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& values, char sep = ' ') {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? std::string(1, sep) : "") << values[i];
  return out.str();
}

std::string word_text(const GeneratingSet& gens, const Word& w) { return w.empty() ? "e" : gens.format_word(w); }

XvalCheck compare_sets(std::string name, const std::set<Word>& expected, const std::set<Word>& actual,
                       const GeneratingSet& gens) {
  XvalCheck c{std::move(name), expected == actual, ""};
  if (c.passed) return c;
  for (const Word& w : expected)
    if (!actual.count(w)) {
      c.detail = "missing " + word_text(gens, w);
      return c;
    }
  for (const Word& w : actual)
    if (!expected.count(w)) {
      c.detail = "extra " + word_text(gens, w);
      return c;
    }
  return c;
}

}  // namespace

bool XvalReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const XvalCheck& c) { return c.passed; });
}

XvalReport run_xval(const GeneratingSet& gens, const Vertex& a, const Vertex& b, const XvalOptions& options) {
  const std::size_t L = options.max_len;
  const Ray ray(a, b);
  XvalReport r;
  r.ray = ray.to_string();
  r.generators = gens.size();

  WordProblemSet wp = enumerate_wp(gens, a, b, L);
  r.wp_counts = wp.counts;
  std::set<Word> wp_words(wp.words.begin(), wp.words.end());

  Et0lGrammar e_grammar, e_prime_grammar;
  if (options.e && options.e_prime) {
    e_grammar = *options.e;
    e_prime_grammar = *options.e_prime;
  } else {
    BuiltGrammars built = build_grammars(gens, a, b);
    r.stats = built.stats;
    e_grammar = options.e ? *options.e : std::move(built.e);
    e_prime_grammar = options.e_prime ? *options.e_prime : std::move(built.e_prime);
  }
  const LimitingGrammar e = LimitingGrammar::create(std::move(e_grammar));
  const LimitingGrammar e_prime = LimitingGrammar::create(std::move(e_prime_grammar));

  LimitingWords e_words = generate_limiting(e, L, options.max_rounds);
  LimitingWords e_prime_words = generate_limiting(e_prime, L, options.max_rounds);
  r.e_counts = e_words.counts;
  r.e_prime_counts = e_prime_words.counts;
  r.e_stabilization = e_words.stabilization_index;
  const std::set<Word> in_e = words_as_generators(e, gens, e_words);
  const std::set<Word> in_e_prime = words_as_generators(e_prime, gens, e_prime_words);

  StableWalkCounts walks = stable_walk_counts(gens, ray, L, options.max_level);
  r.walk_counts = walks.counts;
  r.walk_level = walks.level;

  GfunResult f = gfun_recurrence(e, L, options.max_rounds);
  r.gfun = f.coefficients;
  r.gfun_stabilization = f.stabilization_index;

  r.green_from_gfun = green_from_f(f.coefficients, gens.size());
  LevelGraph graph = level_graph(gens, walks.level, ray.prefix(walks.level), true);
  r.green_from_graph = green_coeffs(graph, L);

  r.checks.push_back(compare_sets("grammar_vs_enumeration", wp_words, in_e, gens));

  XvalCheck walks_check{"walks_vs_enumeration", true, ""};
  for (std::size_t m = 0; m <= L; ++m)
    if (r.walk_counts.at(m) != BigInt(r.wp_counts.at(m))) {
      walks_check.passed = false;
      walks_check.detail = "length " + std::to_string(m);
      break;
    }
  r.checks.push_back(walks_check);

  XvalCheck partition{"partition", true, ""};
  for (const Word& w : in_e)
    if (in_e_prime.count(w)) {
      partition.passed = false;
      partition.detail = "in both grammars: " + word_text(gens, w);
      break;
    }
  if (partition.passed) {
    // Every word up to length L must lie in one of the two languages.
    std::vector<Word> layer{Word{}};
    for (std::size_t m = 0; m <= L && partition.passed; ++m) {
      std::vector<Word> next;
      for (const Word& w : layer) {
        if (!in_e.count(w) && !in_e_prime.count(w)) {
          partition.passed = false;
          partition.detail = "in neither grammar: " + word_text(gens, w);
          break;
        }
        if (m == L) continue;
        for (std::uint32_t x = 0; x < gens.size(); ++x) {
          next.push_back(w);
          next.back().push_back(x);
        }
      }
      layer = std::move(next);
    }
  }
  r.checks.push_back(partition);

  XvalCheck gfun_check{"gfun_vs_grammar", true, ""};
  for (std::size_t m = 0; m <= L; ++m)
    if (r.gfun.at(m) != BigInt(r.e_counts.at(m))) {
      gfun_check.passed = false;
      gfun_check.detail = "length " + std::to_string(m);
      break;
    }
  if (gfun_check.passed && r.gfun_stabilization != r.e_stabilization) {
    gfun_check.passed = false;
    gfun_check.detail = "stabilization " + std::to_string(r.gfun_stabilization) + " vs " +
                        std::to_string(r.e_stabilization);
  }
  r.checks.push_back(gfun_check);

  XvalCheck green{"green_vs_walks", r.green_from_gfun == r.green_from_graph, ""};
  if (!green.passed) green.detail = "coefficients differ";
  r.checks.push_back(green);
  return r;
}

std::string format_xval(const XvalReport& r, bool csv) {
  std::ostringstream out;
  if (csv) {
    out << "m,enumeration,grammar,complement,walks,gfun,green\n";
    for (std::size_t m = 0; m < r.wp_counts.size(); ++m)
      out << m << ',' << r.wp_counts[m] << ',' << r.e_counts.at(m) << ',' << r.e_prime_counts.at(m) << ','
          << r.walk_counts.at(m) << ',' << r.gfun.at(m) << ',' << r.green_from_gfun.at(m) << '\n';
    out << "check,result,detail\n";
    for (const XvalCheck& c : r.checks) out << c.name << ',' << (c.passed ? "pass" : "fail") << ',' << c.detail << '\n';
    return out.str();
  }
  out << "ray " << r.ray << '\n';
  if (r.stats)
    out << "grammar ell=" << r.stats->ell << " pairs=" << r.stats->pairs << " placeholders=" << r.stats->placeholders
        << '\n';
  out << "enumeration " << join(r.wp_counts) << '\n';
  out << "grammar     " << join(r.e_counts) << "  (stabilization " << r.e_stabilization << ")\n";
  out << "complement  " << join(r.e_prime_counts) << '\n';
  out << "walks       " << join(r.walk_counts) << "  (level " << r.walk_level << ")\n";
  out << "gfun        " << join(r.gfun) << "  (stabilization " << r.gfun_stabilization << ")\n";
  out << "green       " << join(r.green_from_gfun) << '\n';
  for (const XvalCheck& c : r.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  return out.str();
}

}  // namespace raystab
