#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "raystab/et0l.hpp"
#include "raystab/grammar_builder.hpp"
#include "raystab/numeric.hpp"
#include "raystab/series.hpp"
#include "raystab/tree.hpp"

namespace raystab {

struct XvalOptions {
  std::size_t max_len = 8;
  std::size_t max_rounds = 256;
  std::size_t max_level = 4096;
  // Replace the constructed grammars, e.g. with files loaded from disk.
  std::optional<Et0lGrammar> e;
  std::optional<Et0lGrammar> e_prime;
};

struct XvalCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct XvalReport {
  std::string ray;
  std::size_t generators = 0;
  std::vector<std::size_t> wp_counts;
  std::vector<std::size_t> e_counts;
  std::vector<std::size_t> e_prime_counts;
  std::vector<BigInt> walk_counts;
  std::size_t walk_level = 0;
  CountSeries gfun;
  std::size_t e_stabilization = 0;
  std::size_t gfun_stabilization = 0;
  RationalSeries green_from_gfun;
  RationalSeries green_from_graph;
  std::optional<BuildStats> stats;  // unset when both grammars were supplied
  std::vector<XvalCheck> checks;

  bool ok() const;
};

// Computes the word problem of Stab(a b^omega) in four independent ways and
// compares them: enumeration, the grammar E, closed walks in the Schreier
// graph and the generating function of E. Also checks that E and E' split X*
// and that the Green function agrees with the walk counts.
XvalReport run_xval(const GeneratingSet& gens, const Vertex& a, const Vertex& b, const XvalOptions& options);

std::string format_xval(const XvalReport& report, bool csv);

}  // namespace raystab
