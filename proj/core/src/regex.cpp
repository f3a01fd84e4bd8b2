#include "raystab/regex.hpp"

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "raystab/errors.hpp"
#include "nfa.hpp"

namespace raystab {

namespace {

constexpr std::string_view kOperators = "()|*+?";

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (kOperators.find(c) != std::string_view::npos) {
      out.emplace_back(1, c);
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             kOperators.find(text[j]) == std::string_view::npos)
        ++j;
      out.emplace_back(text.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

using detail::Nfa;

struct Fragment {
  std::size_t in, out;
};

class Parser {
 public:
  Parser(std::vector<std::string> tokens, const SymbolResolver& resolve, Nfa& nfa)
      : tokens_(std::move(tokens)), resolve_(resolve), nfa_(nfa) {}

  Fragment parse() {
    Fragment f = alternation();
    if (pos_ != tokens_.size()) throw ParseError(0, "unexpected '" + tokens_[pos_] + "' in expression");
    return f;
  }

 private:
  bool peek(std::string_view t) const { return pos_ < tokens_.size() && tokens_[pos_] == t; }

  Fragment alternation() {
    Fragment first = concatenation();
    if (!peek("|")) return first;
    Fragment f{nfa_.add(), nfa_.add()};
    link(f.in, first.in);
    link(first.out, f.out);
    while (peek("|")) {
      ++pos_;
      Fragment next = concatenation();
      link(f.in, next.in);
      link(next.out, f.out);
    }
    return f;
  }

  Fragment concatenation() {
    std::size_t s = nfa_.add();
    Fragment f{s, s};
    while (pos_ < tokens_.size() && !peek("|") && !peek(")")) {
      Fragment next = postfix();
      link(f.out, next.in);
      f.out = next.out;
    }
    return f;
  }

  Fragment postfix() {
    Fragment f = atom();
    while (peek("*") || peek("+") || peek("?")) {
      char op = tokens_[pos_++][0];
      Fragment g{nfa_.add(), nfa_.add()};
      link(g.in, f.in);
      link(f.out, g.out);
      if (op != '+') link(g.in, g.out);
      if (op != '?') link(f.out, f.in);
      f = g;
    }
    return f;
  }

  Fragment atom() {
    if (pos_ == tokens_.size()) throw ParseError(0, "expression ended unexpectedly");
    const std::string& t = tokens_[pos_++];
    if (t == "(") {
      Fragment f = alternation();
      if (!peek(")")) throw ParseError(0, "missing ')'");
      ++pos_;
      return f;
    }
    if (kOperators.find(t[0]) != std::string_view::npos) throw ParseError(0, "unexpected '" + t + "'");
    Fragment f{nfa_.add(), nfa_.add()};
    if (t == "eps") {
      link(f.in, f.out);
    } else if (t != "empty") {
      auto sym = resolve_(t);
      if (!sym) throw ParseError(0, "unknown symbol '" + t + "'");
      nfa_.out[f.in].emplace_back(*sym, f.out);
    }
    return f;
  }

  void link(std::size_t from, std::size_t to) { nfa_.out[from].emplace_back(Nfa::kEps, to); }

  std::vector<std::string> tokens_;
  const SymbolResolver& resolve_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

}  // namespace

Dfa compile_regex(std::string_view text, const SymbolResolver& resolve, std::size_t state_cap) {
  Nfa nfa;
  Parser parser(tokenize(text), resolve, nfa);
  Fragment f = parser.parse();

  nfa.accepting[f.out] = true;
  return detail::determinize(nfa, f.in, state_cap, "regular expression");
}

}  // namespace raystab
