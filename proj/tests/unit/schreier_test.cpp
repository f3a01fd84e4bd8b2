#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "raystab/errors.hpp"
#include "raystab/group_file.hpp"
#include "raystab/schreier.hpp"
#include "test_paths.hpp"

using namespace raystab;

namespace {

GeneratingSet dihedral() { return load_group(data_path("groups/dihedral.grp")); }

std::string read_golden(const std::string& name) {
  std::ifstream in(golden_path(name));
  EXPECT_TRUE(in.good()) << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

oracle::Letters letters(const Vertex& v) {
  oracle::Letters out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

TEST(LevelGraph, DihedralLevelOne) {
  LevelGraph g = level_graph(dihedral(), 1, Vertex{1});
  ASSERT_EQ(g.vertices.size(), 2u);
  EXPECT_TRUE(g.complete);
  EXPECT_TRUE(g.symmetric);
  EXPECT_EQ(g.vertices[g.base], Vertex{1});
  for (std::size_t v = 0; v < 2; ++v) {
    EXPECT_EQ(g.edges[v][0], static_cast<std::int64_t>(1 - v));
    EXPECT_EQ(g.edges[v][1], static_cast<std::int64_t>(v));
  }
}

TEST(LevelGraph, LevelZeroIsOneVertex) {
  LevelGraph g = level_graph(dihedral(), 0, {});
  ASSERT_EQ(g.vertices.size(), 1u);
  EXPECT_EQ(g.edges[0], (std::vector<std::int64_t>{0, 0}));
}

TEST(LevelGraph, EdgesFollowTheAction) {
  for (const char* file : {"groups/img_z2_i.grp", "groups/grigorchuk.grp"}) {
    GeneratingSet gens = load_group(data_path(file));
    oracle::RawGroup raw = oracle::RawGroup::load(data_path(file));
    LevelGraph g = level_graph(gens, 5, Vertex{1, 0, 1, 0, 1});
    EXPECT_EQ(g.vertices.size(), 32u);
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      for (std::uint32_t x = 0; x < gens.size(); ++x)
        EXPECT_EQ(letters(g.vertices[static_cast<std::size_t>(g.edges[v][x])]), raw.act({x}, letters(g.vertices[v])));
  }
}

TEST(WalkCounts, DihedralExamples) {
  GeneratingSet d = dihedral();
  EXPECT_EQ(closed_walk_counts(level_graph(d, 12, Vertex{1}.repeat(12)), 3), (std::vector<BigInt>{1, 1, 2, 3}));
  EXPECT_EQ(closed_walk_counts(level_graph(d, 12, Vertex{0} + Vertex{1}.repeat(11)), 3),
            (std::vector<BigInt>{1, 0, 2, 1}));  // aba returns
}

TEST(WalkCounts, MatchRawOracle) {
  for (const char* file : {"groups/dihedral.grp", "groups/img_z2_i.grp", "groups/basilica.grp"}) {
    GeneratingSet gens = load_group(data_path(file));
    oracle::RawGroup raw = oracle::RawGroup::load(data_path(file));
    Vertex base = Vertex{1, 0}.repeat(5);
    EXPECT_EQ(closed_walk_counts(level_graph(gens, base.size(), base, true), 9), oracle::closed_walks(raw, letters(base), 9))
        << file;
    EXPECT_EQ(closed_walk_counts(ball_graph(gens, base, 5), 10), oracle::closed_walks(raw, letters(base), 10)) << file;
  }
}

TEST(WalkCounts, StableAlongTheRay) {
  GeneratingSet d = dihedral();
  StableWalkCounts s = stable_walk_counts(d, Ray({}, Vertex{1}), 8);
  EXPECT_EQ(s.counts, (std::vector<BigInt>{1, 1, 2, 3, 6, 10, 20, 35, 70}));
}

TEST(Green, DihedralPrefix) {
  std::vector<Rational> p = green_coeffs(level_graph(dihedral(), 10, Vertex{1}.repeat(10), true), 3);
  EXPECT_EQ(p, (std::vector<Rational>{1, Rational(1, 2), Rational(1, 2), Rational(3, 8)}));
}

TEST(Green, NeedsSymmetricGenerators) {
  GeneratingSet adding = parse_group("alphabet 2\ngen t perm=1,0 sections=1,t\n");
  EXPECT_THROW(green_coeffs(level_graph(adding, 3, Vertex{0, 0, 0}), 2), NotSymmetric);
}

TEST(RootedBall, DihedralAtOnes) {
  LevelGraph ball = rooted_ball(dihedral(), Ray({}, Vertex{1}), 2);
  // Radius 2 around 1^n: the base, its a-neighbour and that one's b-neighbour.
  EXPECT_EQ(ball.vertices.size(), 3u);
  EXPECT_EQ(ball.edges[ball.base][1], static_cast<std::int64_t>(ball.base));
}

TEST(ExportDot, Golden) {
  GeneratingSet d = dihedral();
  EXPECT_EQ(export_dot(level_graph(d, 1, Vertex{1})), read_golden("dihedral_n1.dot"));
  EXPECT_EQ(export_dot(level_graph(d, 3, Vertex{1, 1, 1})), read_golden("dihedral_n3.dot"));
  EXPECT_EQ(export_dot(level_graph(load_group(data_path("groups/img_z2_i.grp")), 2, Vertex{1, 0})),
            read_golden("img_n2.dot"));
}
