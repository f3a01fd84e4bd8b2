#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "raystab/et0l.hpp"
#include "raystab/tree.hpp"

namespace raystab {

// Deterministic generalized sequential machine. Input and output words are
// letter indices into the respective alphabets. A missing transition leads to
// an implicit non-accepting fail state.
class Gsm {
 public:
  using State = std::size_t;

  struct Transition {
    Word output;
    State next;
  };

  Gsm(std::vector<std::string> inputs, std::vector<std::string> outputs);

  State add_state(std::string name, bool accepting = false);
  void set_initial(State q) { initial_ = q; }
  void set_accepting(State q, bool accepting = true) { accepting_.at(q) = accepting; }
  void set_transition(State from, std::size_t input, Word output, State to);

  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  std::size_t state_count() const { return names_.size(); }
  const std::string& state_name(State q) const { return names_.at(q); }
  std::optional<State> find_state(std::string_view name) const;
  State initial() const { return initial_; }
  bool accepting(State q) const { return accepting_.at(q); }
  const std::optional<Transition>& transition(State q, std::size_t input) const {
    return delta_.at(q).at(input);
  }

 private:
  std::vector<std::string> inputs_, outputs_;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  std::vector<std::vector<std::optional<Transition>>> delta_;
  State initial_ = 0;
};

// The output of the unique run, if it ends in an accepting state.
std::optional<Word> apply_gsm(const Gsm& m, const Word& w);

// Checks that no two inputs of length at most max_len have the same defined
// output. Throws InjectivityViolation naming both inputs.
void check_injective(const Gsm& m, std::size_t max_len);

// A finite prefix antichain W over the input alphabet with an output word per member.
struct PrefixCode {
  std::vector<Word> words;
  std::vector<Word> outputs;
};

bool is_prefix_antichain(const std::vector<Word>& words);

// Reads a concatenation of codewords and writes their outputs. States are the
// proper prefixes of codewords plus a fail state; only the empty prefix
// accepts, and nothing accepts when W is empty. Throws Error when W is not an
// antichain or contains the empty word.
Gsm decoding_automaton(const PrefixCode& code, std::vector<std::string> inputs, std::vector<std::string> outputs);

// Words w_1 u_1, ..., w_k u_k with every w_i trivial in the group, forming a
// prefix antichain. w_i = alpha_i alpha_i^-1 for geodesics alpha_i of strictly
// increasing lengths. The generating set must be symmetric. Throws
// GeodesicSearchExhausted when no geodesic of a needed length is found among
// the first search_cap group elements.
std::vector<Word> build_antichain(const GeneratingSet& gens, const std::vector<Word>& suffixes,
                                  std::size_t search_cap = 1u << 16);

// A limiting grammar for M(L(E)) over the output alphabet of M. Terminal names
// of E must belong to the input alphabet of M. M is checked for injectivity on
// inputs up to injectivity_check_len first.
LimitingGrammar transform_grammar(const LimitingGrammar& e, const Gsm& m, std::size_t injectivity_check_len);

struct SubgroupGenerator {
  std::string name;
  Word word;  // over the generators of the grammar's group
};

// From a grammar for the words over X whose value lies in a subgroup, a
// grammar for the words over Y = {y_i} whose value lies in it, where y_i
// stands for the given X-word. Grammar terminals must be named like the
// generators.
LimitingGrammar restrict_to_subgroup(const LimitingGrammar& e, const GeneratingSet& gens,
                                     const std::vector<SubgroupGenerator>& ys, std::size_t injectivity_check_len);

// Text format:
//   input a b
//   output x y
//   state q0 q1
//   initial q0            (default: the first state)
//   accept q0
//   edge q0 a/x y q1      (writes x y; "a/eps" writes nothing)
Gsm parse_gsm(std::string_view text);
Gsm load_gsm(const std::string& path);
std::string format_gsm(const Gsm& m);

}  // namespace raystab
