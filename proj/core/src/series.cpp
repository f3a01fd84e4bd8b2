#include "raystab/series.hpp"

#include <numeric>

#include "raystab/errors.hpp"

namespace raystab {

Grading Grading::uniform(std::size_t variables, std::size_t cap) {
  return Grading{std::vector<std::uint32_t>(variables, 0), {cap}};
}

MultiSeries::MultiSeries(Grading grading) : grading_(std::move(grading)) {
  for (std::uint32_t g : grading_.group_of)
    if (g >= grading_.caps.size()) throw Error("grading refers to a missing group");
  if (grading_.caps.size() > 32) throw Error("at most 32 grading groups are supported");
}

MultiSeries MultiSeries::constant(const Grading& grading, const BigInt& c) {
  MultiSeries s(grading);
  s.add_term(Exponents(grading.variables(), 0), c);
  return s;
}

MultiSeries MultiSeries::variable(const Grading& grading, std::size_t i) {
  MultiSeries s(grading);
  Exponents e(grading.variables(), 0);
  e.at(i) = 1;
  s.add_term(e, 1);
  return s;
}

BigInt MultiSeries::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

bool MultiSeries::within_caps(const Exponents& e) const {
  std::vector<std::size_t> used(grading_.caps.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) used[grading_.group_of[i]] += e[i];
  for (std::size_t g = 0; g < used.size(); ++g)
    if (used[g] > grading_.caps[g]) return false;
  return true;
}

void MultiSeries::add_term(const Exponents& e, const BigInt& c) {
  if (e.size() != grading_.variables()) throw Error("exponent vector has the wrong length");
  if (c == 0) return;
  std::vector<std::size_t> used(grading_.caps.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) used[grading_.group_of[i]] += e[i];
  bool fits = true;
  for (std::size_t g = 0; g < used.size(); ++g)
    if (used[g] > grading_.caps[g]) {
      truncated_ |= std::uint32_t{1} << g;
      fits = false;
    }
  if (!fits) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& other) {
  truncated_ |= other.truncated_;
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
  MultiSeries out(a.grading_);
  out.truncated_ = a.truncated_ | b.truncated_;
  MultiSeries::Exponents e(a.grading_.variables());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiSeries substitute(const MultiSeries& g, std::span<const MultiSeries> replacements) {
  const Grading& grading = g.grading();
  const std::size_t k = grading.variables();
  if (replacements.size() > k) throw Error("more replacements than variables");
  // powers[i][p] = replacement_i^p, built lazily.
  std::vector<std::vector<MultiSeries>> powers(k);
  auto power = [&](std::size_t i, std::size_t p) -> const MultiSeries& {
    auto& list = powers[i];
    if (list.empty()) list.push_back(MultiSeries::constant(grading, 1));
    while (list.size() <= p) {
      const MultiSeries base = i < replacements.size() ? replacements[i] : MultiSeries::variable(grading, i);
      list.push_back(list.back() * base);
    }
    return list[p];
  };
  MultiSeries out(grading);
  for (const auto& [e, c] : g.terms()) {
    MultiSeries term = MultiSeries::constant(grading, c);
    for (std::size_t i = 0; i < k && !term.is_zero(); ++i)
      if (e[i] != 0) term = term * power(i, e[i]);
    out += term;
  }
  return out;
}

MultiSeries regular_gf(const Language& lang, const std::function<std::optional<std::size_t>(Symbol)>& variable_of,
                       const Grading& grading) {
  using Layer = std::map<StateIndex, MultiSeries>;
  MultiSeries out(grading);
  Layer layer;
  layer.emplace(lang.start(), MultiSeries::constant(grading, 1));
  // Every edge adds one to some group, so the layers run out.
  const std::size_t max_steps = std::accumulate(grading.caps.begin(), grading.caps.end(), std::size_t{0});
  for (std::size_t step = 0; !layer.empty(); ++step) {
    Layer next;
    for (const auto& [s, value] : layer) {
      if (lang.accepting(s)) out += value;
      if (step == max_steps) continue;
      for (const Edge& e : lang.edges(s)) {
        auto v = variable_of(e.symbol);
        if (!v) continue;
        MultiSeries moved = value * MultiSeries::variable(grading, *v);
        out.mark_truncated(moved.truncated_groups());
        if (moved.is_zero()) continue;
        auto it = next.find(e.target);
        if (it == next.end())
          next.emplace(e.target, std::move(moved));
        else
          it->second += moved;
      }
    }
    layer.swap(next);
  }
  return out;
}

CountSeries specialize(const MultiSeries& g, std::span<const std::optional<std::uint32_t>> weights,
                       std::size_t max_deg) {
  CountSeries out(max_deg + 1, 0);
  for (const auto& [e, c] : g.terms()) {
    std::size_t deg = 0;
    bool zero = false;
    for (std::size_t i = 0; i < e.size() && !zero; ++i) {
      if (e[i] == 0) continue;
      if (i >= weights.size() || !weights[i])
        zero = true;
      else
        deg += static_cast<std::size_t>(*weights[i]) * e[i];
    }
    if (!zero && deg <= max_deg) out[deg] += c;
  }
  return out;
}

RationalSeries green_from_f(const CountSeries& f, std::size_t x_count) {
  if (x_count == 0) throw Error("green function needs at least one generator");
  RationalSeries out;
  out.reserve(f.size());
  BigInt scale = 1;
  for (const BigInt& c : f) {
    out.emplace_back(c, scale);
    scale *= x_count;
  }
  return out;
}

}  // namespace raystab
