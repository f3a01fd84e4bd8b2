#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace raystab {

using Letter = std::uint8_t;

// Generator indices for group words, symbol ids for grammar words.
using Word = std::vector<std::uint32_t>;

// A finite word over the tree alphabet {0..d-1}. Letters are stored as raw bytes.
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::string bytes) : bytes_(std::move(bytes)) {}
  Vertex(std::initializer_list<unsigned> letters);

  // Accepts "0110", "0,1,1,0" or "" / "e" for the root.
  static Vertex parse(std::string_view text, unsigned degree);

  std::size_t size() const { return bytes_.size(); }
  bool empty() const { return bytes_.empty(); }
  Letter operator[](std::size_t i) const { return static_cast<Letter>(bytes_[i]); }
  void push_back(Letter c) { bytes_.push_back(static_cast<char>(c)); }
  void pop_back() { bytes_.pop_back(); }

  Vertex prefix(std::size_t n) const { return Vertex(bytes_.substr(0, n)); }
  Vertex substr(std::size_t pos, std::size_t len = std::string::npos) const {
    return Vertex(bytes_.substr(pos, len));
  }
  Vertex repeat(std::size_t times) const;
  bool starts_with(const Vertex& other) const { return bytes_.starts_with(other.bytes_); }

  Vertex& operator+=(const Vertex& other) {
    bytes_ += other.bytes_;
    return *this;
  }
  friend Vertex operator+(Vertex lhs, const Vertex& rhs) { return lhs += rhs; }

  // Digits when d <= 10, comma separated otherwise. The root prints as "e".
  std::string to_string() const;
  const std::string& bytes() const { return bytes_; }

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
  friend bool operator==(const Vertex&, const Vertex&) = default;

 private:
  std::string bytes_;
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const { return std::hash<std::string>{}(v.bytes()); }
};

// Eventually periodic ray u v^omega, kept normalized: v primitive, u as short as possible.
class Ray {
 public:
  Ray(Vertex initial, Vertex period);

  const Vertex& initial() const { return initial_; }
  const Vertex& period() const { return period_; }
  Letter at(std::size_t i) const;
  Vertex prefix(std::size_t n) const;
  std::string to_string() const;

  friend bool operator==(const Ray&, const Ray&) = default;
  friend auto operator<=>(const Ray&, const Ray&) = default;

 private:
  Vertex initial_;
  Vertex period_;
};

using StateId = std::uint32_t;

// An automaton that may contain unreachable or duplicate states. State 0 is the root.
struct Machine {
  unsigned degree = 0;
  std::vector<std::vector<Letter>> perms;
  std::vector<std::vector<StateId>> next;

  StateId add_state(std::vector<Letter> perm, std::vector<StateId> successors);
};

// A finite-state automorphism of the d-ary tree in canonical form: minimized,
// reachable states only, numbered in breadth-first order from the root (state 0).
// Equal automorphisms have identical representations.
class Automorphism {
 public:
  static Automorphism identity(unsigned degree);
  static Automorphism from_machine(const Machine& machine, StateId root = 0);

  unsigned degree() const { return degree_; }
  std::size_t state_count() const { return next_.size() / degree_; }
  Letter perm(StateId s, Letter c) const { return perm_[s * degree_ + c]; }
  StateId next(StateId s, Letter c) const { return next_[s * degree_ + c]; }
  bool is_identity() const { return identity_state_ == 0; }
  // The state acting trivially, if reachable.
  std::optional<StateId> identity_state() const {
    return identity_state_ == kNone ? std::nullopt : std::optional<StateId>(identity_state_);
  }
  bool is_trivial_state(StateId s) const { return s == identity_state_; }

  // The automorphism rooted at state s.
  Automorphism state(StateId s) const;
  Machine machine() const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.degree_ == b.degree_ && a.perm_ == b.perm_ && a.next_ == b.next_;
  }
  std::size_t hash() const;

 private:
  static constexpr StateId kNone = ~StateId{0};
  unsigned degree_ = 0;
  std::vector<Letter> perm_;
  std::vector<StateId> next_;
  StateId identity_state_ = kNone;
};

struct AutomorphismHash {
  std::size_t operator()(const Automorphism& g) const { return g.hash(); }
};

Automorphism minimize(const Automorphism& g);
// Right action: vertex (v.g).h == v.(compose(g, h)).
Automorphism compose(const Automorphism& g, const Automorphism& h);
Automorphism inverse(const Automorphism& g);
Automorphism section(const Automorphism& g, const Vertex& v);
Vertex act_vertex(const Automorphism& g, const Vertex& v);
Ray act_ray(const Automorphism& g, const Ray& ray);
// Least n such that the section at the length-n prefix of the target is trivial,
// or nullopt when none exists within the given target.
std::optional<std::size_t> directional_depth(const Vertex& target, const Automorphism& g);
// Same along a ray; nullopt means the depth is infinite.
std::optional<std::size_t> directional_depth(const Ray& ray, const Automorphism& g);

class GeneratingSet {
 public:
  explicit GeneratingSet(unsigned degree) : degree_(degree) {}

  void add(std::string name, Automorphism element);

  unsigned degree() const { return degree_; }
  std::size_t size() const { return elements_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const Automorphism& element(std::size_t i) const { return elements_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  std::optional<std::size_t> inverse_of(std::size_t i) const;
  bool is_symmetric() const;
  // Adds "name^-1" for every generator whose inverse is not yet present.
  GeneratingSet symmetrized() const;

  // Words are whitespace separated names; without whitespace every character
  // is taken as a one-letter name.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;
  Word inverse_word(const Word& w) const;

 private:
  unsigned degree_;
  std::vector<std::string> names_;
  std::vector<Automorphism> elements_;
};

Automorphism evaluate(const GeneratingSet& gens, const Word& w);
bool is_identity(const GeneratingSet& gens, const Word& w);

}  // namespace raystab
