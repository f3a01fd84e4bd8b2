#include "raystab/stab_decide.hpp"

#include <algorithm>
#include <unordered_map>

#include "raystab/classify.hpp"
#include "raystab/errors.hpp"

namespace raystab {

RayOracle RayOracle::periodic(const Ray& ray) {
  return RayOracle([ray](std::size_t n) { return ray.prefix(n); });
}

bool member_periodic(const Automorphism& g, const Vertex& a, const Vertex& b) {
  if (b.empty()) throw EmptyPeriod();
  Vertex v = a + b.repeat(g.state_count() + 1);
  return act_vertex(g, v) == v;
}

bool member_periodic(const GeneratingSet& gens, const Word& w, const Vertex& a, const Vertex& b) {
  if (b.empty()) throw EmptyPeriod();
  return member_periodic(evaluate(gens, w), a, b);
}

MembershipVerdict member_promise(const GeneratingSet& gens, const Word& w, const RayOracle& ray,
                                 std::size_t depth_cap) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!is_bounded(gens.element(i)))
      throw UnboundedGenerator("generator '" + gens.name(i) + "' is not bounded");
  Automorphism g = evaluate(gens, w);
  Vertex known;
  StateId s = 0;
  for (std::size_t k = 0;; ++k) {
    if (g.is_trivial_state(s)) return Member{};
    if (k == depth_cap) return DepthExceeded{depth_cap};
    if (known.size() <= k) {
      known = ray.prefix(std::min(depth_cap, std::max<std::size_t>(2 * known.size(), k + 16)));
      if (known.size() <= k) throw Error("ray oracle returned a short prefix");
    }
    Letter c = known[k];
    if (c >= g.degree()) throw AlphabetMismatch("ray letter outside alphabet");
    if (g.perm(s, c) != c) return NonMember{k + 1};
    s = g.next(s, c);
  }
}

namespace {

// Interns group elements and caches right multiplication by generators.
class ElementTable {
 public:
  explicit ElementTable(const GeneratingSet& gens) : gens_(gens) { intern(Automorphism::identity(gens.degree())); }

  std::size_t times(std::size_t id, std::uint32_t x) {
    std::size_t key = id * gens_.size() + x;
    if (key < step_.size() && step_[key] != SIZE_MAX) return step_[key];
    std::size_t result = intern(compose(elements_[id], gens_.element(x)));
    if (step_.size() <= key) step_.resize(std::max(key + 1, step_.size() * 2), SIZE_MAX);
    step_[key] = result;
    return result;
  }
  const Automorphism& element(std::size_t id) const { return elements_[id]; }

 private:
  std::size_t intern(Automorphism g) {
    auto [it, fresh] = ids_.emplace(g, elements_.size());
    if (fresh) elements_.push_back(std::move(g));
    return it->second;
  }

  const GeneratingSet& gens_;
  std::vector<Automorphism> elements_;
  std::unordered_map<Automorphism, std::size_t, AutomorphismHash> ids_;
  std::vector<std::size_t> step_;
};

}  // namespace

WordProblemSet enumerate_wp(const GeneratingSet& gens, const Vertex& a, const Vertex& b, std::size_t max_len) {
  if (b.empty()) throw EmptyPeriod();
  ElementTable table(gens);
  std::unordered_map<std::size_t, bool> verdict;
  auto member = [&](std::size_t id) {
    auto it = verdict.find(id);
    if (it != verdict.end()) return it->second;
    bool m = member_periodic(table.element(id), a, b);
    verdict.emplace(id, m);
    return m;
  };

  WordProblemSet out;
  out.counts.assign(max_len + 1, 0);
  std::vector<std::vector<Word>> by_length(max_len + 1);
  Word w;
  auto dfs = [&](auto&& self, std::size_t id) -> void {
    if (member(id)) {
      by_length[w.size()].push_back(w);
      ++out.counts[w.size()];
    }
    if (w.size() == max_len) return;
    for (std::uint32_t x = 0; x < gens.size(); ++x) {
      w.push_back(x);
      self(self, table.times(id, x));
      w.pop_back();
    }
  };
  dfs(dfs, 0);
  for (auto& bucket : by_length)
    for (auto& word : bucket) out.words.push_back(std::move(word));
  return out;
}

}  // namespace raystab
