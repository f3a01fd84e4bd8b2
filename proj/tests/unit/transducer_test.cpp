#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "raystab/errors.hpp"
#include "raystab/grammar_builder.hpp"
#include "raystab/grammar_io.hpp"
#include "raystab/group_file.hpp"
#include "raystab/transducer.hpp"
#include "test_paths.hpp"

using namespace raystab;

namespace {

LimitingGrammar fixture(const char* file) {
  return LimitingGrammar::create(load_grammar(data_path(std::string("grammars/") + file)));
}

std::set<std::string> spelled(const LimitingGrammar& g, std::size_t max_len) {
  std::set<std::string> out;
  for (const Word& w : generate_limiting(g, max_len).words) out.insert(g.grammar().symbols.format(w));
  return out;
}

class DihedralE : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    gens_ = new GeneratingSet(load_group(data_path("groups/dihedral.grp")));
    e_ = new LimitingGrammar(LimitingGrammar::create(build_grammars(*gens_, {}, Vertex{1}).e));
  }
  static void TearDownTestSuite() {
    delete e_;
    delete gens_;
  }
  static GeneratingSet* gens_;
  static LimitingGrammar* e_;
};

GeneratingSet* DihedralE::gens_ = nullptr;
LimitingGrammar* DihedralE::e_ = nullptr;

}  // namespace

TEST(Gsm, ParseFormatApply) {
  Gsm m = load_gsm(data_path("gsm/a_to_bc.gsm"));
  EXPECT_EQ(m.state_count(), 1u);
  EXPECT_EQ(apply_gsm(m, {0, 0}), (Word{0, 1, 0, 1}));
  EXPECT_EQ(apply_gsm(m, {}), Word{});
  Gsm again = parse_gsm(format_gsm(m));
  EXPECT_EQ(format_gsm(again), format_gsm(m));
  EXPECT_THROW(parse_gsm("input a\noutput b\nstate q\nedge q c/b q\n"), ParseError);
  EXPECT_THROW(parse_gsm("input a\noutput b\nstate q\nedge q a/b q\nedge q a/b q\n"), ParseError);
}

TEST(Gsm, MissingTransitionsFail) {
  Gsm m = parse_gsm("input a b\noutput x\nstate p q\naccept q\nedge p a/x q\nedge q b/eps p\n");
  EXPECT_EQ(apply_gsm(m, {0}), (Word{0}));
  EXPECT_EQ(apply_gsm(m, {0, 1}), std::nullopt);
  EXPECT_EQ(apply_gsm(m, {0, 1, 0}), (Word{0, 0}));
  EXPECT_EQ(apply_gsm(m, {1}), std::nullopt);
}

TEST(Gsm, Injectivity) {
  EXPECT_NO_THROW(check_injective(load_gsm(data_path("gsm/identity_ab.gsm")), 6));
  Gsm collapse = parse_gsm("input a b\noutput x\nstate q\naccept q\nedge q a/x q\nedge q b/x q\n");
  EXPECT_THROW(check_injective(collapse, 3), InjectivityViolation);
  Gsm eraser = parse_gsm("input a\noutput x\nstate q\naccept q\nedge q a/eps q\n");
  EXPECT_THROW(check_injective(eraser, 2), InjectivityViolation);
}

TEST(DecodingAutomaton, Codewords) {
  PrefixCode code{{{0, 0}, {0, 1, 1}}, {{0}, {1}}};
  Gsm d = decoding_automaton(code, {"a", "b"}, {"x", "y"});
  EXPECT_EQ(apply_gsm(d, {0, 1, 1, 0, 0}), (Word{1, 0}));
  EXPECT_EQ(apply_gsm(d, {}), Word{});
  EXPECT_EQ(apply_gsm(d, {0}), std::nullopt);
  EXPECT_EQ(apply_gsm(d, {1}), std::nullopt);
  EXPECT_THROW(decoding_automaton({{{0}, {0, 1}}, {{0}, {1}}}, {"a", "b"}, {"x", "y"}), Error);
  Gsm none = decoding_automaton({}, {"a"}, {"x"});
  EXPECT_EQ(apply_gsm(none, {}), std::nullopt);
}

TEST(PrefixAntichain, Check) {
  EXPECT_TRUE(is_prefix_antichain({{0, 0}, {0, 1}, {1}}));
  EXPECT_FALSE(is_prefix_antichain({{0}, {0, 1}}));
  EXPECT_TRUE(is_prefix_antichain({}));
}

TEST(TransformGrammar, IdentityAndRelabel) {
  LimitingGrammar toy = fixture("toy_astar.etol");
  Gsm id = parse_gsm("input a\noutput a\nstate q\naccept q\nedge q a/a q\n");
  EXPECT_EQ(spelled(transform_grammar(toy, id, 6), 6), spelled(toy, 6));
  LimitingGrammar bc = transform_grammar(toy, load_gsm(data_path("gsm/a_to_bc.gsm")), 6);
  EXPECT_EQ(spelled(bc, 6), (std::set<std::string>{"e", "b c", "b c b c", "b c b c b c"}));
  EXPECT_TRUE(validate_limiting(bc.grammar(), 6, 8).ok());
}

TEST(TransformGrammar, RejectsNonInjective) {
  Gsm eraser = parse_gsm("input a\noutput x\nstate q\naccept q\nedge q a/eps q\n");
  EXPECT_THROW(transform_grammar(fixture("toy_astar.etol"), eraser, 3), InjectivityViolation);
}

TEST_F(DihedralE, IdentityTransformPreservesLanguage) {
  LimitingGrammar t = transform_grammar(*e_, load_gsm(data_path("gsm/identity_ab.gsm")), 8);
  EXPECT_EQ(generate_limiting(t, 8).counts, (std::vector<std::size_t>{1, 1, 2, 3, 6, 10, 20, 35, 70}));
  EXPECT_EQ(spelled(t, 7), spelled(*e_, 7));
}

TEST_F(DihedralE, OnlyEvenLengthsThroughAFilter) {
  // Accepts inputs of even length and swaps the letters.
  Gsm m = parse_gsm("input a b\noutput a b\nstate p q\naccept p\nedge p a/b q\nedge p b/a q\nedge q a/b p\nedge q b/a p\n");
  LimitingGrammar t = transform_grammar(*e_, m, 6);
  std::set<std::string> expected;
  for (const Word& w : generate_limiting(*e_, 6).words)
    if (auto out = apply_gsm(m, w)) expected.insert(t.grammar().symbols.format(*out));
  EXPECT_EQ(spelled(t, 6), expected);
}

TEST_F(DihedralE, Antichain) {
  std::vector<Word> w = build_antichain(*gens_, {{0}, {1}});
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(gens_->format_word(w[0]), "aaa");
  EXPECT_EQ(gens_->format_word(w[1]), "abaabab");
  EXPECT_TRUE(is_prefix_antichain(w));
  GeneratingSet adding = parse_group("alphabet 2\ngen t perm=1,0 sections=1,t\n");
  EXPECT_THROW(build_antichain(adding, {{0}}), NotSymmetric);
}

TEST_F(DihedralE, RestrictToB) {
  LimitingGrammar r = restrict_to_subgroup(*e_, *gens_, {{"y", gens_->parse_word("b")}}, 8);
  std::set<std::string> expected{"e"};
  std::string w;
  for (int k = 1; k <= 8; ++k) expected.insert(w += (k == 1 ? "y" : " y"));
  EXPECT_EQ(spelled(r, 8), expected);
}

TEST_F(DihedralE, RestrictToEverything) {
  LimitingGrammar r = restrict_to_subgroup(*e_, *gens_, {{"A", gens_->parse_word("a")}, {"B", gens_->parse_word("b")}}, 8);
  EXPECT_EQ(generate_limiting(r, 6).counts, (std::vector<std::size_t>{1, 1, 2, 3, 6, 10, 20}));
  EXPECT_TRUE(validate_limiting(r.grammar(), 4, 6).ok());
}

TEST_F(DihedralE, RestrictMatchesSubstitution) {
  std::vector<SubgroupGenerator> ys{{"x", gens_->parse_word("ab")}, {"y", gens_->parse_word("b")}};
  LimitingGrammar r = restrict_to_subgroup(*e_, *gens_, ys, 8);
  oracle::RawGroup raw = oracle::RawGroup::load(data_path("groups/dihedral.grp"));
  std::set<std::string> expected;
  for (const oracle::GenWord& yw : oracle::all_words(2, 5)) {
    oracle::GenWord xw;
    for (std::uint32_t y : yw) xw.insert(xw.end(), ys[y].word.begin(), ys[y].word.end());
    if (!oracle::fixes_ray(raw, xw, {}, {1})) continue;
    std::string s;
    for (std::uint32_t y : yw) s += (s.empty() ? "" : " ") + ys[y].name;
    expected.insert(s.empty() ? "e" : s);
  }
  EXPECT_EQ(spelled(r, 5), expected);
}

TEST_F(DihedralE, RestrictToNothing) {
  LimitingGrammar r = restrict_to_subgroup(*e_, *gens_, {}, 4);
  EXPECT_EQ(spelled(r, 4), (std::set<std::string>{"e"}));
}
