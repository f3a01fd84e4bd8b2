#include <map>

#include "raystab/errors.hpp"
#include "raystab/series.hpp"
#include "yield_engine.hpp"

namespace raystab {

namespace {

std::size_t stabilization_of(const std::vector<CountSeries>& values) {
  std::size_t index = 0;
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] != values.back()) index = j + 1;
  return index;
}

CountSeries multiply(const CountSeries& a, const CountSeries& b, std::size_t max_deg) {
  CountSeries out(max_deg + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= max_deg; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= max_deg; ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

GfunResult gfun_recurrence(const LimitingGrammar& grammar, std::size_t max_deg, std::size_t max_rounds) {
  detail::RoundEngine<detail::SeriesSemiring> engine(grammar, detail::SeriesSemiring{max_deg}, false);
  auto normalized = [&](CountSeries v) {
    v.resize(max_deg + 1, 0);
    return v;
  };
  std::vector<CountSeries> tops{normalized(engine.top())};
  while (engine.advance()) {
    if (engine.round() > max_rounds)
      throw NoStabilization("series did not stabilize within " + std::to_string(max_rounds) + " rounds");
    tops.push_back(normalized(engine.top()));
  }
  GfunResult out;
  out.coefficients = tops.back();
  out.rounds = tops.size();
  out.stabilization_index = stabilization_of(tops);
  return out;
}

ForwardGfun gfun_forward(const LimitingGrammar& grammar, std::size_t max_deg, std::size_t nonterminal_cap,
                         bool collapse_terminals, std::size_t max_rounds) {
  const Et0lGrammar& g = grammar.grammar();
  const SymbolSpace& symbols = g.symbols;

  // Nonterminals reachable through alpha(start) and beta.
  std::vector<Symbol> nts;
  std::map<Symbol, std::size_t> nt_var;
  auto visit = [&](Symbol s) {
    if (!symbols.is_terminal(s) && nt_var.emplace(s, nts.size()).second) nts.push_back(s);
  };
  if (const Language* a = grammar.alpha().image(g.start))
    for (Symbol s : detail::language_symbols(*a)) visit(s);
  else
    visit(g.start);
  for (std::size_t i = 0; i < nts.size(); ++i)
    if (const Language* b = grammar.beta().image(nts[i]))
      for (Symbol s : detail::language_symbols(*b)) visit(s);

  const std::vector<Symbol> terminals = symbols.terminals();
  const std::size_t k = nts.size();
  const std::size_t m = collapse_terminals ? 1 : terminals.size();
  Grading grading;
  grading.group_of.assign(k, 0);
  grading.group_of.resize(k + m, 1);
  grading.caps = {nonterminal_cap, max_deg};
  std::map<Symbol, std::size_t> terminal_var;
  for (std::size_t i = 0; i < terminals.size(); ++i) terminal_var[terminals[i]] = k + (collapse_terminals ? 0 : i);

  auto variable_of = [&](Symbol s) -> std::optional<std::size_t> {
    if (symbols.is_terminal(s)) return terminal_var.at(s);
    auto it = nt_var.find(s);
    if (it == nt_var.end()) return std::nullopt;
    return it->second;
  };
  auto image_gf = [&](const Language* lang, Symbol a) {
    if (lang == nullptr) return MultiSeries::variable(grading, *variable_of(a));
    return regular_gf(*lang, variable_of, grading);
  };

  std::vector<MultiSeries> h_beta;
  for (Symbol a : nts) h_beta.push_back(image_gf(grammar.beta().image(a), a));

  // H_gamma,i: nonterminal variables to 0, terminal variables to z.
  std::vector<std::optional<std::uint32_t>> gamma_weights(k + m);
  for (std::size_t j = k; j < k + m; ++j) gamma_weights[j] = 1;
  std::vector<CountSeries> h_gamma;
  bool gamma_erases = false;
  for (Symbol a : nts) {
    const Language* c = grammar.gamma().image(a);
    if (c == nullptr) {
      h_gamma.emplace_back(max_deg + 1, 0);
      continue;
    }
    gamma_erases = gamma_erases || accepts_empty_word(*c);
    h_gamma.push_back(specialize(regular_gf(*c, variable_of, grading), gamma_weights, max_deg));
  }

  auto evaluate = [&](const MultiSeries& gn) {
    std::vector<std::vector<CountSeries>> powers(k);
    CountSeries out(max_deg + 1, 0);
    for (const auto& [e, c] : gn.terms()) {
      std::size_t zdeg = 0;
      for (std::size_t j = k; j < k + m; ++j) zdeg += e[j];
      if (zdeg > max_deg) continue;
      CountSeries term(max_deg + 1, 0);
      term[zdeg] = c;
      for (std::size_t i = 0; i < k; ++i) {
        if (e[i] == 0) continue;
        auto& list = powers[i];
        if (list.empty()) {
          list.emplace_back(max_deg + 1, 0);
          list[0][0] = 1;
        }
        while (list.size() <= e[i]) list.push_back(multiply(list.back(), h_gamma[i], max_deg));
        term = multiply(term, list[e[i]], max_deg);
      }
      for (std::size_t d = 0; d <= max_deg; ++d) out[d] += term[d];
    }
    return out;
  };

  MultiSeries gn = image_gf(grammar.alpha().image(g.start), g.start);
  std::vector<CountSeries> values{evaluate(gn)};
  std::uint32_t truncated = gn.truncated_groups();
  for (std::size_t n = 1;; ++n) {
    if (n > max_rounds)
      throw NoStabilization("forward series did not stabilize within " + std::to_string(max_rounds) + " rounds");
    MultiSeries next = substitute(gn, h_beta);
    truncated |= next.truncated_groups();
    if (next == gn) break;
    gn = std::move(next);
    values.push_back(evaluate(gn));
  }
  for (const MultiSeries& h : h_beta) truncated |= h.truncated_groups();

  ForwardGfun out;
  out.coefficients = values.back();
  out.rounds = values.size();
  out.stabilization_index = stabilization_of(values);
  const bool cut_forms = (truncated & 1u) != 0;
  out.exact = !(cut_forms && (gamma_erases || nonterminal_cap < max_deg));
  return out;
}

}  // namespace raystab
