#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "raystab/automaton.hpp"
#include "raystab/et0l.hpp"
#include "raystab/numeric.hpp"

namespace raystab {

// Coefficients c_0..c_L of a truncated univariate series.
using CountSeries = std::vector<BigInt>;
using RationalSeries = std::vector<Rational>;

// Variables are split into groups; each group has its own total-degree cap.
// The default is a single group.
struct Grading {
  std::vector<std::uint32_t> group_of;  // per variable
  std::vector<std::size_t> caps;        // per group

  static Grading uniform(std::size_t variables, std::size_t cap);
  std::size_t variables() const { return group_of.size(); }
};

class MultiSeries {
 public:
  using Exponents = std::vector<std::uint32_t>;

  explicit MultiSeries(Grading grading);
  MultiSeries(std::size_t variables, std::size_t cap) : MultiSeries(Grading::uniform(variables, cap)) {}

  static MultiSeries constant(const Grading& grading, const BigInt& c);
  static MultiSeries variable(const Grading& grading, std::size_t i);

  const Grading& grading() const { return grading_; }
  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  BigInt coefficient(const Exponents& e) const;
  bool is_zero() const { return terms_.empty(); }
  // Groups in which some nonzero term was cut by the cap, as a bit mask.
  std::uint32_t truncated_groups() const { return truncated_; }
  void mark_truncated(std::uint32_t groups) { truncated_ |= groups; }

  // Adds c * monomial; terms beyond the caps are dropped and recorded.
  void add_term(const Exponents& e, const BigInt& c);
  MultiSeries& operator+=(const MultiSeries& other);
  friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
  friend bool operator==(const MultiSeries& a, const MultiSeries& b) { return a.terms_ == b.terms_; }

  bool within_caps(const Exponents& e) const;

 private:
  Grading grading_;
  std::map<Exponents, BigInt> terms_;
  std::uint32_t truncated_ = 0;
};

// Replaces variable i by replacements[i]; variables past the end of the list
// stay themselves. The result uses the grading of g.
MultiSeries substitute(const MultiSeries& g, std::span<const MultiSeries> replacements);

// Multivariate generating function of a deterministic automaton: each accepted
// word contributes the product of its symbols' variables. Symbols mapped to
// nullopt are weighted zero.
MultiSeries regular_gf(const Language& lang, const std::function<std::optional<std::size_t>(Symbol)>& variable_of,
                       const Grading& grading);

// Coefficients of the one-variable specialization x_i -> z^{weights[i]}, where
// a weight of nullopt sends the variable to zero.
CountSeries specialize(const MultiSeries& g, std::span<const std::optional<std::uint32_t>> weights,
                       std::size_t max_deg);

struct GfunResult {
  CountSeries coefficients;
  std::size_t stabilization_index = 0;
  std::size_t rounds = 0;
};

// Word counts by length of a limiting language, from the fixpoint of the
// per-nonterminal series. Throws NoStabilization past max_rounds.
GfunResult gfun_recurrence(const LimitingGrammar& grammar, std::size_t max_deg, std::size_t max_rounds = 1024);

struct ForwardGfun {
  CountSeries coefficients;
  std::size_t stabilization_index = 0;
  std::size_t rounds = 0;
  // False when a sentential form was cut by the nonterminal cap and some
  // gamma image contains the empty word.
  bool exact = true;
};

// The same counts by iterating g_{n+1} = g_n(h_beta,1, ..., h_beta,k, y) from
// g_0 = h_alpha, evaluating through H_gamma,i. Terminal variables are merged
// into one when collapse_terminals is set.
ForwardGfun gfun_forward(const LimitingGrammar& grammar, std::size_t max_deg, std::size_t nonterminal_cap,
                         bool collapse_terminals = true, std::size_t max_rounds = 256);

// Coefficient m divided by x_count^m.
RationalSeries green_from_f(const CountSeries& f, std::size_t x_count);

}  // namespace raystab
