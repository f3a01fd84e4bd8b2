#include <gtest/gtest.h>

#include <set>

#include "raystab/errors.hpp"
#include "raystab/et0l.hpp"
#include "raystab/grammar_io.hpp"
#include "test_paths.hpp"

using namespace raystab;

namespace {

Et0lGrammar grammar(const char* file) { return load_grammar(data_path(std::string("grammars/") + file)); }

Word symbols(const Et0lGrammar& g, std::string_view text) {
  Word w;
  for (char c : text) w.push_back(*g.symbols.find(std::string(1, c)));
  return w;
}

std::vector<std::size_t> control(const Et0lGrammar& g, std::initializer_list<const char*> names) {
  std::vector<std::size_t> out;
  for (const char* n : names) out.push_back(*g.table_index(n));
  return out;
}

std::set<std::string> spelled(const Et0lGrammar& g, const std::vector<Word>& words) {
  std::set<std::string> out;
  for (const Word& w : words) {
    std::string s;
    for (Symbol x : w) s += g.symbols.name(x);
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST(ApplyTable, AlternativeTablesExample) {
  Et0lGrammar g = grammar("anbn_power.etol");
  const Table& alpha = *g.tables[*g.table_index("alpha")];
  std::vector<Word> out = apply_table(symbols(g, "SSSS"), alpha, g.symbols, 8);
  EXPECT_TRUE(spelled(g, out).count("SABSSAB"));
  for (const Word& w : out) EXPECT_LE(w.size(), 8u);
  // Nine choices for SS, two of which spell SSS.
  EXPECT_EQ(apply_table(symbols(g, "SS"), alpha, g.symbols, 4).size(), 8u);  // S.SS = SS.S
  EXPECT_EQ(apply_table({}, alpha, g.symbols, 4), (std::vector<Word>{{}}));
  EXPECT_EQ(apply_table(symbols(g, "ab"), alpha, g.symbols, 4), (std::vector<Word>{symbols(g, "ab")}));
}

TEST(ApplyTable, DistributesOverConcatenation) {
  Et0lGrammar g = grammar("anbn_power.etol");
  const Table& alpha = *g.tables[*g.table_index("alpha")];
  for (const char* u : {"S", "SA", "aSb"})
    for (const char* v : {"S", "BS", ""}) {
      std::string uv = std::string(u) + v;
      std::set<Word> joint;
      for (const Word& w : apply_table(symbols(g, uv), alpha, g.symbols, 7)) joint.insert(w);
      std::set<Word> product;
      for (const Word& x : apply_table(symbols(g, u), alpha, g.symbols, 7))
        for (const Word& y : apply_table(symbols(g, v), alpha, g.symbols, 7)) {
          Word xy = x;
          xy.insert(xy.end(), y.begin(), y.end());
          if (xy.size() <= 7) product.insert(xy);
        }
      EXPECT_EQ(joint, product) << uv;
    }
}

TEST(Generate, PowersOfAnBn) {
  Et0lGrammar g = grammar("anbn_power.etol");
  GenerateResult r = generate(g, 6, 12);
  EXPECT_EQ(spelled(g, r.words), (std::set<std::string>{"", "ab", "aabb", "abab", "aaabbb", "ababab"}));
}

TEST(Generate, PartitionsAndEmptyControl) {
  Et0lGrammar g = grammar("partitions.etol");
  EXPECT_TRUE(spelled(g, generate(g, 7, 8).words).count("aababab"));
  g.control = Dfa::empty_language();
  EXPECT_TRUE(generate(g, 7, 8).words.empty());
}

TEST(CountDerivations, Examples) {
  Et0lGrammar p = grammar("partitions.etol");
  EXPECT_EQ(count_derivations(p, symbols(p, "aababab"), control(p, {"alpha", "beta", "alpha", "alpha", "gamma"})),
            BigInt(1));
  EXPECT_EQ(count_derivations(p, symbols(p, "ab"), control(p, {"alpha", "beta", "alpha", "alpha", "gamma"})),
            BigInt(0));
  Et0lGrammar amb = grammar("ambiguous.etol");
  EXPECT_EQ(count_derivations(amb, symbols(amb, "a"), control(amb, {"alpha", "beta", "beta", "gamma"})), BigInt(2));
  EXPECT_EQ(count_derivations(amb, symbols(amb, "aa"), control(amb, {"alpha", "beta", "beta", "gamma"})), BigInt(1));
}

TEST(CountDerivations, PositiveExactlyOnDerivableWords) {
  Et0lGrammar g = grammar("anbn_power.etol");
  std::vector<std::size_t> r = control(g, {"alpha", "alpha", "beta", "beta", "gamma"});
  std::set<Word> reachable{{g.start}};
  for (std::size_t t : r) {
    std::set<Word> next;
    for (const Word& w : reachable)
      for (const Word& x : apply_table(w, *g.tables[t], g.symbols, 12)) next.insert(x);
    reachable = std::move(next);
  }
  for (const char* w : {"", "ab", "aabb", "aabbaabb", "aaabbb", "abab", "aabbab"}) {
    Word word = symbols(g, w);
    EXPECT_EQ(count_derivations(g, word, r).value_or(0) > 0, reachable.count(word) > 0) << w;
  }
}

TEST(GenerateLimiting, ToyGrammar) {
  LimitingGrammar toy = LimitingGrammar::create(grammar("toy_astar.etol"));
  LimitingWords w = generate_limiting(toy, 6);
  EXPECT_EQ(w.counts, (std::vector<std::size_t>(7, 1)));
  EXPECT_EQ(spelled(toy.grammar(), w.words), (std::set<std::string>{"", "a", "aa", "aaa", "aaaa", "aaaaa", "aaaaaa"}));
  EXPECT_EQ(generate_limiting(toy, 0).words, (std::vector<Word>{{}}));
}

TEST(GenerateLimiting, UnionOfRounds) {
  LimitingGrammar toy = LimitingGrammar::create(grammar("toy_astar.etol"));
  LimitingWords w = generate_limiting(toy, 5);
  std::set<Word> uni;
  for (const auto& round : limiting_rounds(toy, 5, w.stabilization_index))
    uni.insert(round.begin(), round.end());
  EXPECT_EQ(uni, std::set<Word>(w.words.begin(), w.words.end()));
}

TEST(Limiting, StructuralRejections) {
  EXPECT_THROW(LimitingGrammar::create(grammar("eps_in_beta.etol")), NotLimiting);
  EXPECT_THROW(LimitingGrammar::create(grammar("empty_gamma.etol")), NotLimiting);
  EXPECT_THROW(LimitingGrammar::create(grammar("anbn_power.etol")), NotLimiting);
  EXPECT_FALSE(check_structure(grammar("eps_in_beta.etol")).empty());
  EXPECT_TRUE(check_structure(grammar("toy_astar.etol")).empty());
}

TEST(Validate, Fixtures) {
  EXPECT_TRUE(validate_limiting(grammar("toy_astar.etol"), 6, 8).ok());
  ValidationReport bad = validate_limiting(grammar("eps_in_beta.etol"), 4, 4);
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(bad.violations[0].kind, "structure");
  ValidationReport amb = validate_limiting(grammar("ambiguous.etol"), 4, 4);
  ASSERT_FALSE(amb.ok());
  bool flagged = false;
  for (const Violation& v : amb.violations)
    if (v.kind == "ambiguity") flagged = !v.witness.empty();
  EXPECT_TRUE(flagged);
}

TEST(Shortlex, Order) {
  EXPECT_TRUE(shortlex_less({1}, {0, 0}));
  EXPECT_TRUE(shortlex_less({0, 1}, {1, 0}));
  EXPECT_FALSE(shortlex_less({0}, {0}));
}
