#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "raystab/tree.hpp"

namespace raystab {

// Supplies prefixes of a ray; prefix(n + 1) must extend prefix(n).
class RayOracle {
 public:
  using Supplier = std::function<Vertex(std::size_t)>;
  explicit RayOracle(Supplier supplier) : supplier_(std::move(supplier)) {}
  static RayOracle periodic(const Ray& ray);
  Vertex prefix(std::size_t n) const { return supplier_(n); }

 private:
  Supplier supplier_;
};

struct Member {};
struct NonMember {
  std::size_t witness_depth;
};
struct DepthExceeded {
  std::size_t cap;
};
using MembershipVerdict = std::variant<Member, NonMember, DepthExceeded>;

bool member_periodic(const GeneratingSet& gens, const Word& w, const Vertex& a, const Vertex& b);
bool member_periodic(const Automorphism& g, const Vertex& a, const Vertex& b);
MembershipVerdict member_promise(const GeneratingSet& gens, const Word& w, const RayOracle& ray,
                                 std::size_t depth_cap);

struct WordProblemSet {
  std::vector<Word> words;              // ordered by length, then generator order
  std::vector<std::size_t> counts;      // counts[n] = words of length n
};

WordProblemSet enumerate_wp(const GeneratingSet& gens, const Vertex& a, const Vertex& b, std::size_t max_len);

}  // namespace raystab
