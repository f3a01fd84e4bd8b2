#include <gtest/gtest.h>

#include "raystab/errors.hpp"
#include "raystab/group_file.hpp"
#include "test_paths.hpp"

using namespace raystab;

namespace {

std::size_t error_line(std::string_view text) {
  try {
    parse_group(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return 0;
}

}  // namespace

TEST(GroupFile, LoadsShippedGroups) {
  for (const char* file : {"groups/dihedral.grp", "groups/img_z2_i.grp", "groups/grigorchuk.grp", "groups/basilica.grp"}) {
    GeneratingSet gens = load_group(data_path(file));
    EXPECT_EQ(gens.degree(), 2u) << file;
    EXPECT_GE(gens.size(), 2u) << file;
  }
  EXPECT_EQ(load_group(data_path("groups/grigorchuk.grp")).names(), (std::vector<std::string>{"a", "b", "c", "d"}));
}

TEST(GroupFile, CommentsAndBlankLines) {
  GeneratingSet gens = parse_group("# x\n\nalphabet 3  # ternary\ngen r perm=1,2,0 sections=1,1,r\n");
  EXPECT_EQ(gens.degree(), 3u);
  EXPECT_EQ(act_vertex(gens.element(0), Vertex{2, 2}), (Vertex{0, 0}));
}

TEST(GroupFile, StatesAreNotGenerators) {
  GeneratingSet gens = parse_group("alphabet 2\ngen g perm=0,1 sections=s,g\nstate s perm=1,0 sections=1,1\n");
  EXPECT_EQ(gens.size(), 1u);
  EXPECT_EQ(section(gens.element(0), Vertex{0}).state_count(), 2u);
}

TEST(GroupFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("gen a perm=1,0 sections=1,1\n"), 1u);
  EXPECT_EQ(error_line("alphabet 2\nalphabet 2\n"), 2u);
  EXPECT_EQ(error_line("alphabet 1\n"), 1u);
  EXPECT_EQ(error_line("alphabet 2\ngen a perm=1,1 sections=1,1\n"), 2u);
  EXPECT_EQ(error_line("alphabet 2\ngen a perm=1,0 sections=1\n"), 2u);
  EXPECT_EQ(error_line("alphabet 2\ngen a perm=1,0\n"), 2u);
  EXPECT_EQ(error_line("alphabet 2\n\ngen a perm=1,0 sections=1,x\n"), 3u);
  EXPECT_EQ(error_line("alphabet 2\ngen a perm=1,0 sections=1,1\ngen a perm=1,0 sections=1,1\n"), 3u);
  EXPECT_EQ(error_line("alphabet 2\nfoo a\n"), 2u);
  EXPECT_EQ(error_line("alphabet 2\ngen a perm=1,0 sections=1,1 colour=red\n"), 2u);
}

TEST(GroupFile, MissingFile) {
  EXPECT_THROW(load_group(data_path("groups/no_such.grp")), Error);
  EXPECT_THROW(parse_group(""), ParseError);
  EXPECT_THROW(parse_group("alphabet 2\nstate s perm=1,0 sections=1,1\n"), ParseError);
}
