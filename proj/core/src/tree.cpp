#include "raystab/tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

#include "raystab/errors.hpp"

namespace raystab {

// ---------------------------------------------------------------- Vertex

Vertex::Vertex(std::initializer_list<unsigned> letters) {
  for (unsigned c : letters) bytes_.push_back(static_cast<char>(c));
}

Vertex Vertex::parse(std::string_view text, unsigned degree) {
  Vertex v;
  if (text.empty() || text == "e") return v;
  auto check = [&](unsigned c) {
    if (c >= degree)
      throw AlphabetMismatch("letter " + std::to_string(c) + " outside alphabet of size " +
                             std::to_string(degree));
    v.push_back(static_cast<Letter>(c));
  };
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view item = text.substr(pos, end - pos);
      if (item.empty() || !std::all_of(item.begin(), item.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw ParseError(0, "bad vertex letter '" + std::string(item) + "'");
      check(static_cast<unsigned>(std::stoul(std::string(item))));
      pos = end + 1;
    }
    return v;
  }
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParseError(0, "bad vertex letter '" + std::string(1, ch) + "'");
    check(static_cast<unsigned>(ch - '0'));
  }
  return v;
}

Vertex Vertex::repeat(std::size_t times) const {
  std::string out;
  out.reserve(bytes_.size() * times);
  for (std::size_t i = 0; i < times; ++i) out += bytes_;
  return Vertex(std::move(out));
}

std::string Vertex::to_string() const {
  if (bytes_.empty()) return "e";
  bool small = std::all_of(bytes_.begin(), bytes_.end(), [](char c) { return static_cast<unsigned char>(c) < 10; });
  std::string out;
  for (std::size_t i = 0; i < bytes_.size(); ++i) {
    unsigned c = static_cast<unsigned char>(bytes_[i]);
    if (small) {
      out.push_back(static_cast<char>('0' + c));
    } else {
      if (i) out.push_back(',');
      out += std::to_string(c);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Ray

namespace {

std::size_t primitive_root_length(const Vertex& v) {
  const std::size_t n = v.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = v[i] == v[i - p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

Ray::Ray(Vertex initial, Vertex period) {
  if (period.empty()) throw EmptyPeriod();
  period = period.prefix(primitive_root_length(period));
  // Absorb the tail of the initial segment into the period by rotation.
  while (!initial.empty() && initial[initial.size() - 1] == period[period.size() - 1]) {
    Letter c = initial[initial.size() - 1];
    initial.pop_back();
    period = Vertex(std::string(1, static_cast<char>(c))) + period.prefix(period.size() - 1);
  }
  initial_ = std::move(initial);
  period_ = std::move(period);
}

Letter Ray::at(std::size_t i) const {
  if (i < initial_.size()) return initial_[i];
  return period_[(i - initial_.size()) % period_.size()];
}

Vertex Ray::prefix(std::size_t n) const {
  Vertex out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

std::string Ray::to_string() const {
  return (initial_.empty() ? std::string() : initial_.to_string()) + "(" + period_.to_string() + ")^w";
}

// ---------------------------------------------------------------- Machine

StateId Machine::add_state(std::vector<Letter> perm, std::vector<StateId> successors) {
  perms.push_back(std::move(perm));
  next.push_back(std::move(successors));
  return static_cast<StateId>(perms.size() - 1);
}

// ---------------------------------------------------------------- Automorphism

Automorphism Automorphism::identity(unsigned degree) {
  Machine m{degree, {}, {}};
  std::vector<Letter> perm(degree);
  for (unsigned c = 0; c < degree; ++c) perm[c] = static_cast<Letter>(c);
  m.add_state(perm, std::vector<StateId>(degree, 0));
  return from_machine(m);
}

Automorphism Automorphism::from_machine(const Machine& machine, StateId root) {
  const unsigned d = machine.degree;
  if (d == 0) throw AlphabetMismatch("alphabet must be non-empty");
  const std::size_t total = machine.perms.size();
  if (root >= total) throw Error("machine root out of range");

  for (std::size_t s = 0; s < total; ++s) {
    if (machine.perms[s].size() != d || machine.next[s].size() != d)
      throw AlphabetMismatch("state " + std::to_string(s) + " has wrong arity");
    std::vector<bool> seen(d, false);
    for (Letter c : machine.perms[s]) {
      if (c >= d || seen[c]) throw AlphabetMismatch("state " + std::to_string(s) + " has no permutation");
      seen[c] = true;
    }
    for (StateId t : machine.next[s])
      if (t >= total) throw Error("successor out of range");
  }

  // Reachable part.
  std::vector<StateId> order{root};
  std::vector<std::int64_t> local(total, -1);
  local[root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (StateId t : machine.next[order[i]])
      if (local[t] < 0) {
        local[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
  const std::size_t n = order.size();

  // Moore refinement.
  std::vector<std::uint32_t> cls(n);
  {
    std::map<std::vector<Letter>, std::uint32_t> ids;
    for (std::size_t i = 0; i < n; ++i)
      cls[i] = ids.emplace(machine.perms[order[i]], static_cast<std::uint32_t>(ids.size())).first->second;
  }
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> refined(n);
    std::vector<std::uint32_t> key(d + 1);
    for (std::size_t i = 0; i < n; ++i) {
      key[0] = cls[i];
      for (unsigned c = 0; c < d; ++c) key[c + 1] = cls[local[machine.next[order[i]][c]]];
      refined[i] = ids.emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    cls.swap(refined);
    if (ids.size() == classes) break;
    classes = ids.size();
  }

  // Canonical breadth-first numbering of the quotient.
  std::vector<std::int64_t> canon(classes, -1);
  std::vector<std::size_t> rep(classes);
  for (std::size_t i = 0; i < n; ++i) rep[cls[i]] = i;
  std::vector<std::uint32_t> queue{cls[0]};
  canon[cls[0]] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::size_t r = rep[queue[i]];
    for (unsigned c = 0; c < d; ++c) {
      std::uint32_t t = cls[local[machine.next[order[r]][c]]];
      if (canon[t] < 0) {
        canon[t] = static_cast<std::int64_t>(queue.size());
        queue.push_back(t);
      }
    }
  }

  Automorphism g;
  g.degree_ = d;
  g.perm_.resize(queue.size() * d);
  g.next_.resize(queue.size() * d);
  for (std::size_t s = 0; s < queue.size(); ++s) {
    std::size_t r = rep[queue[s]];
    for (unsigned c = 0; c < d; ++c) {
      g.perm_[s * d + c] = machine.perms[order[r]][c];
      g.next_[s * d + c] = static_cast<StateId>(canon[cls[local[machine.next[order[r]][c]]]]);
    }
  }
  for (StateId s = 0; s < queue.size(); ++s) {
    bool trivial = true;
    for (unsigned c = 0; c < d && trivial; ++c) trivial = g.perm(s, static_cast<Letter>(c)) == c && g.next(s, static_cast<Letter>(c)) == s;
    if (trivial) {
      g.identity_state_ = s;
      break;
    }
  }
  return g;
}

Automorphism Automorphism::state(StateId s) const { return from_machine(machine(), s); }

Machine Automorphism::machine() const {
  Machine m{degree_, {}, {}};
  for (StateId s = 0; s < state_count(); ++s) {
    std::vector<Letter> perm(perm_.begin() + s * degree_, perm_.begin() + (s + 1) * degree_);
    std::vector<StateId> succ(next_.begin() + s * degree_, next_.begin() + (s + 1) * degree_);
    m.add_state(std::move(perm), std::move(succ));
  }
  return m;
}

std::size_t Automorphism::hash() const {
  std::size_t h = degree_;
  for (Letter c : perm_) h = h * 1000003u ^ c;
  for (StateId s : next_) h = h * 1000003u ^ s;
  return h;
}

// ---------------------------------------------------------------- operations

Automorphism minimize(const Automorphism& g) { return Automorphism::from_machine(g.machine()); }

Automorphism compose(const Automorphism& g, const Automorphism& h) {
  if (g.degree() != h.degree()) throw AlphabetMismatch("composing automorphisms of different degree");
  const unsigned d = g.degree();
  Machine m{d, {}, {}};
  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto id_of = [&](StateId s, StateId t) {
    std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | t;
    auto [it, fresh] = ids.emplace(key, static_cast<StateId>(pairs.size()));
    if (fresh) pairs.emplace_back(s, t);
    return it->second;
  };
  id_of(0, 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [s, t] = pairs[i];
    std::vector<Letter> perm(d);
    std::vector<StateId> succ(d);
    for (unsigned c = 0; c < d; ++c) {
      Letter mid = g.perm(s, static_cast<Letter>(c));
      perm[c] = h.perm(t, mid);
      succ[c] = id_of(g.next(s, static_cast<Letter>(c)), h.next(t, mid));
    }
    m.add_state(std::move(perm), std::move(succ));
  }
  return Automorphism::from_machine(m);
}

Automorphism inverse(const Automorphism& g) {
  const unsigned d = g.degree();
  Machine m{d, {}, {}};
  for (StateId s = 0; s < g.state_count(); ++s) {
    std::vector<Letter> perm(d);
    std::vector<StateId> succ(d);
    for (unsigned c = 0; c < d; ++c) {
      Letter img = g.perm(s, static_cast<Letter>(c));
      perm[img] = static_cast<Letter>(c);
      succ[img] = g.next(s, static_cast<Letter>(c));
    }
    m.add_state(std::move(perm), std::move(succ));
  }
  return Automorphism::from_machine(m);
}

namespace {

void check_letters(const Automorphism& g, const Vertex& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] >= g.degree())
      throw AlphabetMismatch("letter " + std::to_string(v[i]) + " outside alphabet of size " +
                             std::to_string(g.degree()));
}

}  // namespace

Automorphism section(const Automorphism& g, const Vertex& v) {
  check_letters(g, v);
  StateId s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s = g.next(s, v[i]);
  return g.state(s);
}

Vertex act_vertex(const Automorphism& g, const Vertex& v) {
  check_letters(g, v);
  Vertex out;
  StateId s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(g.perm(s, v[i]));
    s = g.next(s, v[i]);
  }
  return out;
}

Ray act_ray(const Automorphism& g, const Ray& ray) {
  check_letters(g, ray.initial());
  check_letters(g, ray.period());
  Vertex out;
  StateId s = 0;
  for (std::size_t i = 0; i < ray.initial().size(); ++i) {
    out.push_back(g.perm(s, ray.initial()[i]));
    s = g.next(s, ray.initial()[i]);
  }
  const Vertex& v = ray.period();
  std::vector<std::int64_t> seen(g.state_count(), -1);
  std::vector<std::size_t> offsets;
  std::size_t pass = 0;
  while (seen[s] < 0) {
    seen[s] = static_cast<std::int64_t>(pass++);
    offsets.push_back(out.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(g.perm(s, v[i]));
      s = g.next(s, v[i]);
    }
  }
  std::size_t start = offsets[static_cast<std::size_t>(seen[s])];
  return Ray(out.prefix(start), out.substr(start));
}

std::optional<std::size_t> directional_depth(const Vertex& target, const Automorphism& g) {
  check_letters(g, target);
  StateId s = 0;
  for (std::size_t i = 0;; ++i) {
    if (g.is_trivial_state(s)) return i;
    if (i == target.size()) return std::nullopt;
    s = g.next(s, target[i]);
  }
}

std::optional<std::size_t> directional_depth(const Ray& ray, const Automorphism& g) {
  // Once the state repeats at the same phase of the period the walk is periodic.
  check_letters(g, ray.initial());
  check_letters(g, ray.period());
  StateId s = 0;
  std::size_t i = 0;
  for (; i < ray.initial().size(); ++i) {
    if (g.is_trivial_state(s)) return i;
    s = g.next(s, ray.initial()[i]);
  }
  const std::size_t p = ray.period().size();
  std::vector<bool> seen(g.state_count() * p, false);
  for (std::size_t k = 0;; ++k, ++i) {
    if (g.is_trivial_state(s)) return i;
    std::size_t key = s * p + k % p;
    if (seen[key]) return std::nullopt;
    seen[key] = true;
    s = g.next(s, ray.period()[k % p]);
  }
}

// ---------------------------------------------------------------- GeneratingSet

void GeneratingSet::add(std::string name, Automorphism element) {
  if (element.degree() != degree_) throw AlphabetMismatch("generator '" + name + "' has wrong degree");
  if (name.empty()) throw Error("generator name must be non-empty");
  if (index_of(name)) throw Error("duplicate generator '" + name + "'");
  names_.push_back(std::move(name));
  elements_.push_back(std::move(element));
}

std::optional<std::size_t> GeneratingSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> GeneratingSet::inverse_of(std::size_t i) const {
  Automorphism inv = inverse(elements_[i]);
  for (std::size_t j = 0; j < elements_.size(); ++j)
    if (elements_[j] == inv) return j;
  return std::nullopt;
}

bool GeneratingSet::is_symmetric() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (!inverse_of(i)) return false;
  return true;
}

GeneratingSet GeneratingSet::symmetrized() const {
  GeneratingSet out = *this;
  for (std::size_t i = 0; i < size(); ++i) {
    if (out.inverse_of(i)) continue;
    out.add(names_[i] + "^-1", inverse(elements_[i]));
  }
  return out;
}

Word GeneratingSet::parse_word(std::string_view text) const {
  Word w;
  bool spaced = text.find_first_of(" \t") != std::string_view::npos;
  if (text == "e" && !index_of("e")) return w;
  if (spaced) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == text.size()) break;
      std::size_t end = pos;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
      std::string_view token = text.substr(pos, end - pos);
      auto idx = index_of(token);
      if (!idx) throw UnknownGenerator("unknown generator '" + std::string(token) + "'");
      w.push_back(static_cast<std::uint32_t>(*idx));
      pos = end;
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    // Longest generator name matching here, so "a^-1" works unspaced.
    std::size_t best_len = 0;
    std::size_t best = 0;
    for (std::size_t j = 0; j < names_.size(); ++j)
      if (names_[j].size() > best_len && text.substr(pos).starts_with(names_[j])) {
        best_len = names_[j].size();
        best = j;
      }
    if (best_len == 0) throw UnknownGenerator("unknown generator at '" + std::string(text.substr(pos)) + "'");
    w.push_back(static_cast<std::uint32_t>(best));
    pos += best_len;
  }
  return w;
}

std::string GeneratingSet::format_word(const Word& w) const {
  if (w.empty()) return "e";
  bool single = std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i) out.push_back(' ');
    out += names_.at(w[i]);
  }
  return out;
}

Word GeneratingSet::inverse_word(const Word& w) const {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    auto inv = inverse_of(*it);
    if (!inv) throw NotSymmetric("generator '" + names_[*it] + "' has no inverse in the set");
    out.push_back(static_cast<std::uint32_t>(*inv));
  }
  return out;
}

Automorphism evaluate(const GeneratingSet& gens, const Word& w) {
  Automorphism g = Automorphism::identity(gens.degree());
  for (std::uint32_t x : w) g = compose(g, gens.element(x));
  return g;
}

bool is_identity(const GeneratingSet& gens, const Word& w) { return evaluate(gens, w).is_identity(); }

}  // namespace raystab
