#include <gtest/gtest.h>

#include <regex>

#include "raystab/errors.hpp"
#include "raystab/grammar_builder.hpp"
#include "raystab/grammar_io.hpp"
#include "raystab/group_file.hpp"
#include "raystab/regex.hpp"
#include "raystab/series.hpp"
#include "test_paths.hpp"

using namespace raystab;

namespace {

std::optional<Symbol> abc(std::string_view name) {
  if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'c') return static_cast<Symbol>(name[0] - 'a');
  return std::nullopt;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Counts by length of the words over {a, b} matching a std::regex.
CountSeries brute_counts(const char* pattern, std::size_t max_len) {
  std::regex re(pattern);
  CountSeries out(max_len + 1, 0);
  for (std::size_t n = 0; n <= max_len; ++n)
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
      std::string s;
      for (std::size_t i = 0; i < n; ++i) s.push_back((bits >> i) & 1 ? 'b' : 'a');
      if (std::regex_match(s, re)) ++out[n];
    }
  return out;
}

CountSeries by_length(const Language& lang, std::size_t symbols, std::size_t max_len) {
  MultiSeries g = regular_gf(lang, [](Symbol s) { return std::optional<std::size_t>(s); }, Grading::uniform(symbols, max_len));
  std::vector<std::optional<std::uint32_t>> weights(symbols, 1u);
  return specialize(g, weights, max_len);
}

}  // namespace

TEST(RegularGf, CountsMatchBruteForce) {
  EXPECT_EQ(by_length(compile_regex("( a b | b )*", abc), 2, 3), (CountSeries{1, 1, 2, 3}));
  for (const auto& [ours, theirs] : {std::pair{"( a b | b )*", "(ab|b)*"}, std::pair{"a* ( b a )* b?", "a*(ba)*b?"},
                                     std::pair{"( a | b )* a b b", "(a|b)*abb"}})
    EXPECT_EQ(by_length(compile_regex(ours, abc), 2, 10), brute_counts(theirs, 10)) << ours;
}

TEST(RegularGf, AlphaImageOfS) {
  // Variables x_S, x_A, x_B are 0, 1, 2.
  auto sab = [](std::string_view n) -> std::optional<Symbol> {
    if (n == "S") return 0;
    if (n == "A") return 1;
    if (n == "B") return 2;
    return std::nullopt;
  };
  MultiSeries g = regular_gf(compile_regex("S S | S | A B", sab), [](Symbol s) { return std::optional<std::size_t>(s); },
                             Grading::uniform(3, 4));
  EXPECT_EQ(g.terms().size(), 3u);
  EXPECT_EQ(g.coefficient({2, 0, 0}), 1);
  EXPECT_EQ(g.coefficient({1, 0, 0}), 1);
  EXPECT_EQ(g.coefficient({0, 1, 1}), 1);
}

TEST(Substitute, Binomial) {
  Grading grading = Grading::uniform(3, 8);
  MultiSeries x0 = MultiSeries::variable(grading, 0);
  MultiSeries cube = x0 * x0 * x0 * x0 * x0;
  MultiSeries sum = MultiSeries::variable(grading, 1);
  sum += MultiSeries::variable(grading, 2);
  std::vector<MultiSeries> repl{sum};
  MultiSeries out = substitute(cube, repl);
  for (unsigned k = 0; k <= 5; ++k) EXPECT_EQ(out.coefficient({0, k, 5 - k}), binomial(5, k));
}

TEST(Substitute, TruncationCommutes) {
  auto build = [](std::size_t cap) {
    Grading grading = Grading::uniform(2, cap);
    MultiSeries one = MultiSeries::constant(grading, 1);
    MultiSeries g = one;
    g += MultiSeries::variable(grading, 0);
    MultiSeries g2 = g * g * g;
    MultiSeries r = one;
    r += MultiSeries::variable(grading, 1) * MultiSeries::variable(grading, 1);
    std::vector<MultiSeries> repl{r};
    return substitute(g2 * g2, repl);
  };
  MultiSeries small = build(6), big = build(12);
  for (const auto& [e, c] : big.terms())
    if (small.within_caps(e)) EXPECT_EQ(small.coefficient(e), c);
  for (const auto& [e, c] : small.terms()) EXPECT_EQ(big.coefficient(e), c);
  EXPECT_NE(small.truncated_groups(), 0u);
  EXPECT_EQ(big.truncated_groups(), 0u);
}

TEST(Gfun, ToyGrammar) {
  LimitingGrammar toy = LimitingGrammar::create(load_grammar(data_path("grammars/toy_astar.etol")));
  EXPECT_EQ(gfun_recurrence(toy, 6).coefficients, CountSeries(7, 1));
  ForwardGfun fwd = gfun_forward(toy, 6, 8);
  EXPECT_EQ(fwd.coefficients, CountSeries(7, 1));
}

TEST(Gfun, DihedralMatchesGrammarWords) {
  GeneratingSet d = load_group(data_path("groups/dihedral.grp"));
  BuiltGrammars built = build_grammars(d, {}, Vertex{1});
  LimitingGrammar e = LimitingGrammar::create(built.e);
  GfunResult g = gfun_recurrence(e, 8);
  EXPECT_EQ(g.coefficients, (CountSeries{1, 1, 2, 3, 6, 10, 20, 35, 70}));
  LimitingWords w = generate_limiting(e, 8);
  EXPECT_EQ(g.stabilization_index, w.stabilization_index);
  ForwardGfun f = gfun_forward(e, 6, 24);
  EXPECT_TRUE(f.exact);
  EXPECT_EQ(f.coefficients, (CountSeries{1, 1, 2, 3, 6, 10, 20}));
}

TEST(Green, FromCounts) {
  EXPECT_EQ(green_from_f({1, 1, 2, 3}, 2), (RationalSeries{1, Rational(1, 2), Rational(1, 2), Rational(3, 8)}));
  EXPECT_EQ(green_from_f({}, 2), RationalSeries{});
}
