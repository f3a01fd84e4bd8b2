#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "raystab/classify.hpp"
#include "raystab/errors.hpp"
#include "raystab/grammar_builder.hpp"
#include "raystab/group_file.hpp"
#include "raystab/stab_decide.hpp"
#include "test_paths.hpp"

using namespace raystab;

namespace {

struct Fixture {
  const char* file;
  Vertex a, b;
  std::size_t max_len;
};

const Fixture kFixtures[] = {
    {"groups/dihedral.grp", {}, Vertex{1}, 8},
    {"groups/dihedral.grp", Vertex{0}, Vertex{1}, 8},
    {"groups/img_z2_i.grp", {}, Vertex{1, 0}, 6},
    {"groups/basilica.grp", {}, Vertex{1, 0}, 5},
    {"groups/grigorchuk.grp", {}, Vertex{1}, 4},
};

oracle::Letters letters(const Vertex& v) {
  oracle::Letters out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

TEST(IndexSet, Dihedral) {
  IndexSet index = build_index_set(load_group(data_path("groups/dihedral.grp")), {}, Vertex{1});
  EXPECT_EQ(index.ell, 2u);
  ASSERT_EQ(index.pairs.size(), 1u);
  EXPECT_EQ(index.pairs[0].u, (Vertex{1, 1}));
  EXPECT_EQ(index.pairs[0].v, (Vertex{1, 1}));
  EXPECT_EQ(index.eta, 0u);
  EXPECT_EQ(index.find(Ray({}, Vertex{1})), 0u);
}

TEST(IndexSet, PairsAreSpinesOrTheirImages) {
  for (const Fixture& f : kFixtures) {
    GeneratingSet gens = load_group(data_path(f.file));
    IndexSet index = build_index_set(gens, f.a, f.b);
    for (const IndexPair& p : index.pairs) {
      EXPECT_EQ(p.u.size(), index.ell);
      EXPECT_EQ(p.v.size(), index.ell);
    }
    EXPECT_EQ(index.pairs[index.eta].ray(), Ray(f.a, f.b));
    for (const auto& [x, choice] : index.spine_choice) {
      SpineData s = spine(gens.element(x));
      EXPECT_EQ(index.pairs[choice.pair].ray(), s.ray()) << f.file;
      EXPECT_EQ(index.pairs[choice.image_pair].ray(), act_ray(gens.element(x), s.ray())) << f.file;
    }
  }
}

TEST(IndexSet, RejectsUnboundedGenerators) {
  GeneratingSet odd = parse_group("alphabet 2\ngen t perm=1,0 sections=t,t\n");
  EXPECT_THROW(build_index_set(odd, {}, Vertex{1}), NotFinDirGenerator);
}

TEST(StepRelation, DihedralEntries) {
  GeneratingSet d = load_group(data_path("groups/dihedral.grp"));
  StepRelation r = build_step_relation(d, build_index_set(d, {}, Vertex{1}));
  ASSERT_EQ(r.entries.size(), 6u);
  std::set<std::pair<std::string, std::string>> q1111;
  for (const StepEntry& e : r.entries) {
    EXPECT_EQ(e.generator, 1u);
    if (e.q == Vertex{1, 1, 1, 1}) q1111.insert({e.y.to_string(), e.y_image.to_string()});
    else EXPECT_EQ(e.q, (Vertex{1, 1, 1, 0}));
  }
  EXPECT_EQ(q1111, (std::set<std::pair<std::string, std::string>>{{"00", "01"}, {"01", "00"}}));
}

TEST(StepRelation, EntriesFollowTheAction) {
  for (const Fixture& f : kFixtures) {
    GeneratingSet gens = load_group(data_path(f.file));
    oracle::RawGroup raw = oracle::RawGroup::load(data_path(f.file));
    IndexSet index = build_index_set(gens, f.a, f.b);
    const std::size_t ell = index.ell;
    for (const StepEntry& e : build_step_relation(gens, index).entries) {
      const SpineChoice& c = index.spine_choice.at(e.generator);
      const IndexPair& from = index.pairs[c.pair];
      const IndexPair& to = index.pairs[c.image_pair];
      Vertex v = from.u + from.v + e.q + e.y;
      EXPECT_EQ(letters(to.u + to.v + e.q_image + e.y_image), raw.act({static_cast<std::uint32_t>(e.generator)}, letters(v)));
      EXPECT_GT(e.depth, 4 * ell);
      EXPECT_LE(e.depth, 5 * ell);
      EXPECT_EQ(directional_depth(v, gens.element(e.generator)), e.depth);
    }
  }
}

TEST(TauFinish, DihedralAnyPlaceholder) {
  GeneratingSet d = load_group(data_path("groups/dihedral.grp"));
  GrammarBuilder builder(d, {}, Vertex{1});
  Placeholder p{Placeholder::Kind::Any, {0, Vertex{1, 1, 1, 1}}, {}};
  auto finish = builder.tau_finish(p);
  Symbol a = *builder.symbols().find("a"), b = *builder.symbols().find("b");
  EXPECT_TRUE(accepts(*finish, {a, a}));
  EXPECT_FALSE(accepts(*finish, {b}));
  EXPECT_TRUE(accepts(*finish, {builder.symbol(p)}));
}

TEST(BuildGrammars, DihedralStats) {
  BuiltGrammars built = build_grammars(load_group(data_path("groups/dihedral.grp")), {}, Vertex{1});
  EXPECT_EQ(built.stats.ell, 2u);
  EXPECT_EQ(built.stats.pairs, 1u);
  EXPECT_EQ(built.stats.step_entries, 6u);
  EXPECT_NO_THROW(LimitingGrammar::create(built.e));
  EXPECT_NO_THROW(LimitingGrammar::create(built.e_prime));
}

// The grammar's language is the word problem of the stabilizer, its twin the complement.
TEST(BuildGrammars, LanguagesMatchBruteForce) {
  for (const Fixture& f : kFixtures) {
    GeneratingSet gens = load_group(data_path(f.file));
    oracle::RawGroup raw = oracle::RawGroup::load(data_path(f.file));
    BuiltGrammars built = build_grammars(gens, f.a, f.b);
    LimitingWords e = generate_limiting(LimitingGrammar::create(built.e), f.max_len);
    LimitingWords ep = generate_limiting(LimitingGrammar::create(built.e_prime), f.max_len);
    oracle::WpOracle wp = oracle::word_problem(raw, letters(f.a), letters(f.b), f.max_len);
    EXPECT_EQ(std::set<Word>(e.words.begin(), e.words.end()), wp.words) << f.file;
    std::set<Word> in_e(e.words.begin(), e.words.end());
    for (const Word& w : ep.words) EXPECT_FALSE(in_e.count(w)) << f.file;
    for (std::size_t m = 0; m <= f.max_len; ++m) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < m; ++i) total *= gens.size();
      EXPECT_EQ(e.counts[m] + ep.counts[m], total) << f.file << " m=" << m;
    }
  }
}

TEST(BuildGrammars, DisjointAtShortLengths) {
  BuiltGrammars built = build_grammars(load_group(data_path("groups/dihedral.grp")), {}, Vertex{1});
  LimitingWords e = generate_limiting(LimitingGrammar::create(built.e), 4);
  LimitingWords ep = generate_limiting(LimitingGrammar::create(built.e_prime), 4);
  EXPECT_EQ(e.words.size() + ep.words.size(), 31u);
}

TEST(BuildGrammars, Validate) {
  BuiltGrammars built = build_grammars(load_group(data_path("groups/dihedral.grp")), {}, Vertex{1});
  EXPECT_TRUE(validate_limiting(built.e, 6, 4).ok());
  EXPECT_TRUE(validate_limiting(built.e_prime, 6, 4).ok());
}
