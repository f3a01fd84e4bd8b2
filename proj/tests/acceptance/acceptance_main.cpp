// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "raystab/classify.hpp"
#include "raystab/errors.hpp"
#include "raystab/grammar_builder.hpp"
#include "raystab/grammar_io.hpp"
#include "raystab/group_file.hpp"
#include "raystab/schreier.hpp"
#include "raystab/series.hpp"
#include "raystab/stab_decide.hpp"
#include "raystab/transducer.hpp"
#include "test_paths.hpp"

using namespace raystab;

namespace {

// Collects the first few failures of a criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream out;
    if (ok()) {
      out << checks_ << " checks";
    } else {
      out << failed_ << " of " << checks_ << " checks failed";
      for (const auto& f : failures_) out << "; " << f;
    }
    return out.str();
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

oracle::Letters letters(const Vertex& v) {
  oracle::Letters out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::vector<BigInt> as_big(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

// Shared dihedral data at the ray 1^omega.
struct Dihedral {
  GeneratingSet gens = load_group(data_path("groups/dihedral.grp"));
  oracle::RawGroup raw = oracle::RawGroup::load(data_path("groups/dihedral.grp"));
  BuiltGrammars built = build_grammars(gens, {}, Vertex{1});
  LimitingGrammar e = LimitingGrammar::create(built.e);
  LimitingGrammar e_prime = LimitingGrammar::create(built.e_prime);
  LimitingWords e_words = generate_limiting(e, 8);
  LimitingWords e_prime_words = generate_limiting(e_prime, 8);
  StableWalkCounts walks = stable_walk_counts(gens, Ray({}, Vertex{1}), 8);
};

const Dihedral& dihedral() {
  static const Dihedral d;
  return d;
}

void criterion1(Checker& c) {
  const Dihedral& d = dihedral();
  WordProblemSet wp = enumerate_wp(d.gens, {}, Vertex{1}, 8);
  oracle::WpOracle brute = oracle::word_problem(d.raw, {}, {1}, 8);
  c.expect(wp.counts == brute.counts, "enumeration " + join(wp.counts) + " vs brute force " + join(brute.counts));
  c.expect(d.e_words.counts == wp.counts, "grammar " + join(d.e_words.counts) + " vs enumeration " + join(wp.counts));
  c.expect(as_big(wp.counts) == d.walks.counts, "walks " + join(d.walks.counts) + " vs enumeration");
  c.expect(std::set<Word>(d.e_words.words.begin(), d.e_words.words.end()) == brute.words, "grammar word set");
  c.expect(wp.counts.size() == 9 && std::vector<std::size_t>(wp.counts.begin(), wp.counts.begin() + 4) ==
                                         std::vector<std::size_t>{1, 1, 2, 3},
           "prefix " + join(wp.counts));
  for (std::size_t m = 0; m <= 8; ++m)
    c.expect(d.e_prime_words.counts[m] == (std::size_t{1} << m) - d.e_words.counts[m],
             "complement at m=" + std::to_string(m));
  std::set<Word> in_e(d.e_words.words.begin(), d.e_words.words.end());
  for (const Word& w : d.e_prime_words.words) c.expect(!in_e.count(w), "word in both: " + d.gens.format_word(w));
}

void criterion2(Checker& c) {
  const Dihedral& d = dihedral();
  GfunResult g = gfun_recurrence(d.e, 8);
  c.expect(g.coefficients == as_big(d.e_words.counts), "gfun " + join(g.coefficients));
  c.expect(g.stabilization_index == d.e_words.stabilization_index,
           "stabilization " + std::to_string(g.stabilization_index) + " vs " +
               std::to_string(d.e_words.stabilization_index));
}

void criterion3(Checker& c) {
  const Dihedral& d = dihedral();
  GfunResult g = gfun_recurrence(d.e, 8);
  RationalSeries from_f = green_from_f(g.coefficients, 2);
  LevelGraph graph = level_graph(d.gens, d.walks.level, Vertex{1}.repeat(d.walks.level), true);
  RationalSeries from_graph = green_coeffs(graph, 8);
  c.expect(from_f == from_graph, "green " + join(from_f) + " vs graph " + join(from_graph));
  c.expect(RationalSeries(from_f.begin(), from_f.begin() + 4) ==
               RationalSeries{1, Rational(1, 2), Rational(1, 2), Rational(3, 8)},
           "prefix " + join(from_f));
}

void criterion4(Checker& c) {
  const Dihedral& d = dihedral();
  c.expect(member_periodic(d.gens, d.gens.parse_word("b"), {}, Vertex{1}), "b fixes 1^w");
  c.expect(!member_periodic(d.gens, d.gens.parse_word("a"), {}, Vertex{1}), "a moves 1^w");
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    Word w(rng() % 11);
    for (auto& x : w) x = rng() % 2;
    bool got = member_periodic(d.gens, w, {}, Vertex{1});
    bool want = oracle::fixes_ray(d.raw, w, {}, {1});
    c.expect(got == want, "word " + d.gens.format_word(w));
  }
}

void criterion5(Checker& c) {
  GeneratingSet gens = load_group(data_path("groups/img_z2_i.grp"));
  Classification b = classify(gens.element(1));
  c.expect(std::holds_alternative<Finitary>(b) && std::get<Finitary>(b).depth == 1, "b: " + describe(b));
  for (std::size_t i : {0u, 2u}) {
    Classification x = classify(gens.element(i));
    c.expect(std::holds_alternative<Directed>(x) && std::get<Directed>(x).spine.period.size() == 2,
             gens.name(i) + ": " + describe(x));
  }
  BuiltGrammars built = build_grammars(gens, {}, Vertex{1, 0});
  LimitingWords e = generate_limiting(LimitingGrammar::create(built.e), 6);
  oracle::WpOracle brute = oracle::word_problem(oracle::RawGroup::load(data_path("groups/img_z2_i.grp")), {}, {1, 0}, 6);
  c.expect(e.counts == brute.counts, "grammar " + join(e.counts) + " vs brute force " + join(brute.counts));
  c.expect(std::set<Word>(e.words.begin(), e.words.end()) == brute.words, "word sets differ");
}

void criterion6(Checker& c) {
  Et0lGrammar anbn = load_grammar(data_path("grammars/anbn_power.etol"));
  std::set<std::string> got;
  for (const Word& w : generate(anbn, 6, 12).words) {
    std::string s;
    for (Symbol x : w) s += anbn.symbols.name(x);
    got.insert(s);
  }
  c.expect(got == std::set<std::string>{"", "ab", "aabb", "abab", "aaabbb", "ababab"}, "(a^n b^n)^m words");
  Et0lGrammar part = load_grammar(data_path("grammars/partitions.etol"));
  Word w;
  for (char ch : std::string("aababab")) w.push_back(*part.symbols.find(std::string(1, ch)));
  std::vector<std::size_t> r;
  for (const char* t : {"alpha", "beta", "alpha", "alpha", "gamma"}) r.push_back(*part.table_index(t));
  auto count = count_derivations(part, w, r);
  c.expect(count && *count == 1, "derivations of a^2babab");
}

void criterion7(Checker& c) {
  const Dihedral& d = dihedral();
  auto fixture = [](const char* f) { return load_grammar(data_path(std::string("grammars/") + f)); };
  c.expect(validate_limiting(d.built.e, 6, 4).ok(), "E");
  c.expect(validate_limiting(d.built.e_prime, 6, 4).ok(), "E'");
  c.expect(validate_limiting(fixture("toy_astar.etol"), 8, 10).ok(), "toy");
  for (const char* bad : {"eps_in_beta.etol", "empty_gamma.etol"}) {
    ValidationReport r = validate_limiting(fixture(bad), 4, 4);
    c.expect(!r.ok() && r.violations.front().kind == "structure", bad);
    bool thrown = false;
    try {
      LimitingGrammar::create(fixture(bad));
    } catch (const NotLimiting&) {
      thrown = true;
    }
    c.expect(thrown, std::string(bad) + " accepted");
  }
  ValidationReport amb = validate_limiting(fixture("ambiguous.etol"), 4, 4);
  bool witnessed = false;
  for (const Violation& v : amb.violations) witnessed |= v.kind == "ambiguity" && !v.witness.empty();
  c.expect(witnessed, "ambiguous toy not flagged");
}

void criterion8(Checker& c) {
  const Dihedral& d = dihedral();
  LimitingGrammar t = transform_grammar(d.e, load_gsm(data_path("gsm/identity_ab.gsm")), 8);
  LimitingWords tw = generate_limiting(t, 8);
  std::set<std::string> before, after;
  for (const Word& w : d.e_words.words) before.insert(d.e.grammar().symbols.format(w));
  for (const Word& w : tw.words) after.insert(t.grammar().symbols.format(w));
  c.expect(before == after, "identity transform changed the language");
  LimitingGrammar r = restrict_to_subgroup(d.e, d.gens, {{"b", d.gens.parse_word("b")}}, 8);
  std::set<std::string> got, want{"e"};
  for (const Word& w : generate_limiting(r, 8).words) got.insert(r.grammar().symbols.format(w));
  std::string bs;
  for (int k = 1; k <= 8; ++k) want.insert(bs += (k == 1 ? "b" : " b"));
  c.expect(got == want, "restriction to <b> is not b*");
}

void criterion9(Checker& c) {
  std::mt19937 rng(99);
  auto random_word = [&](std::size_t gens, std::size_t max_len) {
    Word w(rng() % (max_len + 1));
    for (auto& x : w) x = rng() % gens;
    return w;
  };
  auto random_vertex = [&](unsigned degree, std::size_t len) {
    Vertex v;
    for (std::size_t i = 0; i < len; ++i) v.push_back(static_cast<Letter>(rng() % degree));
    return v;
  };
  for (const char* file : {"groups/dihedral.grp", "groups/img_z2_i.grp", "groups/grigorchuk.grp", "groups/basilica.grp"}) {
    GeneratingSet gens = load_group(data_path(file));
    const std::string tag = std::string(file) + ": ";
    for (int trial = 0; trial < 50; ++trial) {
      Automorphism f = evaluate(gens, random_word(gens.size(), 6));
      Automorphism g = evaluate(gens, random_word(gens.size(), 6));
      Automorphism h = evaluate(gens, random_word(gens.size(), 6));
      c.expect(compose(compose(f, g), h) == compose(f, compose(g, h)), tag + "associativity");
      c.expect(compose(f, inverse(f)).is_identity(), tag + "inverse");
      Vertex v = random_vertex(gens.degree(), rng() % 8);
      c.expect(section(compose(g, h), v) == compose(section(g, v), section(h, act_vertex(g, v))), tag + "cocycle");
      c.expect(act_vertex(compose(g, h), v) == act_vertex(h, act_vertex(g, v)), tag + "action");
      Ray ray({}, Vertex{1, 0});
      Word w = random_word(gens.size(), 8);
      DecoratedWord dec = decorate(ray, w, gens);
      Ray at = ray;
      for (std::size_t i = 0; i < w.size(); ++i) {
        c.expect(dec[i].depth == directional_depth(at, gens.element(w[i])), tag + "decoration");
        at = act_ray(gens.element(w[i]), at);
      }
    }
    IndexSet index = build_index_set(gens, {}, Vertex{1, 0});
    for (const StepEntry& e : build_step_relation(gens, index).entries) {
      const IndexPair& from = index.pairs[index.spine_choice.at(e.generator).pair];
      const IndexPair& to = index.pairs[index.spine_choice.at(e.generator).image_pair];
      for (std::size_t m = 1; m <= 3; ++m) {
        Vertex v = from.u + from.v.repeat(m) + e.q + e.y;
        c.expect(act_vertex(gens.element(e.generator), v) == to.u + to.v.repeat(m) + e.q_image + e.y_image,
                 tag + "step relation image");
        c.expect(directional_depth(v, gens.element(e.generator)) == e.depth + (m - 1) * index.ell,
                 tag + "step relation depth");
      }
    }
  }
  const Dihedral& d = dihedral();
  std::set<Word> in_e(d.e_words.words.begin(), d.e_words.words.end());
  int found = 0;
  while (found < 100) {
    Word half = random_word(2, 4);
    Word w = half;
    Word back = d.gens.inverse_word(half);
    w.insert(w.end(), back.begin(), back.end());
    if (!is_identity(d.gens, w)) continue;
    ++found;
    c.expect(member_periodic(d.gens, w, {}, Vertex{1}), "identity word outside the stabilizer");
    c.expect(in_e.count(w) > 0, "identity word missing from E: " + d.gens.format_word(w));
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Checker&)>> criteria[] = {
      {"dihedral counts: enumeration, grammar, walks, complement", criterion1},
      {"generating function matches counts and stabilization", criterion2},
      {"green function from counts matches the graph", criterion3},
      {"periodic membership against the prefix definition", criterion4},
      {"IMG(z^2+i) classification and grammar counts", criterion5},
      {"(a^n b^n)^m language and partitions derivation", criterion6},
      {"validators", criterion7},
      {"closure under gsm and subgroup restriction", criterion8},
      {"property suites", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    Checker c;
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && c.ok();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << (error.empty() ? c.summary() : "exception: " + error) << ", " << std::fixed;
    std::cout.precision(2);
    std::cout << secs << "s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
