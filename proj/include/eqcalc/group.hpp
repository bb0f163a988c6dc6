#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eqcalc/element_set.hpp"
#include "eqcalc/errors.hpp"

namespace eqcalc {

using Element = std::uint32_t;

// Permutation of {0, ..., n-1}; printed and parsed in 1-based cycle notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (auto x : image_) {
      if (x >= image_.size() || seen[x]) throw InputError("not a permutation");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::uint32_t> im(n);
    std::iota(im.begin(), im.end(), 0u);
    return Permutation(std::move(im));
  }

  // Cycle notation on 1..n, e.g. "(1 2 3)(4 5)", "(1,2)", "()" or "e".
  static Permutation parse(const std::string& text, std::size_t n) {
    auto im = identity(n).image_;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    };
    skip();
    if (text.substr(i) == "e" || text.substr(i) == "id") return Permutation(std::move(im));
    std::vector<bool> used(n, false);
    while (i < text.size()) {
      skip();
      if (i >= text.size()) break;
      if (text[i] != '(') throw InputError("expected '(' in permutation: " + text);
      ++i;
      std::vector<std::uint32_t> cycle;
      while (true) {
        skip();
        if (i >= text.size()) throw InputError("unterminated cycle: " + text);
        if (text[i] == ')') {
          ++i;
          break;
        }
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw InputError("bad token in permutation: " + text);
        unsigned long v = std::stoul(text.substr(i, j - i));
        if (v < 1 || v > n) throw InputError("point out of range 1.." + std::to_string(n) + ": " + text);
        if (used[v - 1]) throw InputError("point repeated in cycle notation: " + text);
        used[v - 1] = true;
        cycle.push_back(static_cast<std::uint32_t>(v - 1));
        i = j;
      }
      for (std::size_t c = 0; c < cycle.size(); ++c) im[cycle[c]] = cycle[(c + 1) % cycle.size()];
    }
    return Permutation(std::move(im));
  }

  std::size_t degree() const { return image_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return image_[x]; }
  const std::vector<std::uint32_t>& image() const { return image_; }

  // (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    std::vector<std::uint32_t> im(a.degree());
    for (std::size_t x = 0; x < im.size(); ++x) im[x] = a.image_[b.image_[x]];
    Permutation p;
    p.image_ = std::move(im);
    return p;
  }

  Permutation inverse() const {
    std::vector<std::uint32_t> im(image_.size());
    for (std::size_t x = 0; x < im.size(); ++x) im[image_[x]] = static_cast<std::uint32_t>(x);
    Permutation p;
    p.image_ = std::move(im);
    return p;
  }

  std::string to_string() const {
    std::string out;
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t s = 0; s < image_.size(); ++s) {
      if (seen[s] || image_[s] == s) continue;
      out += "(";
      std::size_t x = s;
      bool first = true;
      while (!seen[x]) {
        seen[x] = true;
        if (!first) out += " ";
        out += std::to_string(x + 1);
        first = false;
        x = image_[x];
      }
      out += ")";
    }
    return out.empty() ? "e" : out;
  }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> image_;
};

// Finite group given by its multiplication table. Copies share immutable data.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial()) {}

  // Validates closure, identity, inverses and associativity.
  static FiniteGroup from_table(std::vector<std::vector<Element>> table, std::vector<std::string> labels = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw ValidationError("empty", "a group has at least one element");
    if (n > kMaxGroupOrder) throw InputError("group order exceeds " + std::to_string(kMaxGroupOrder));
    auto data = std::make_shared<Data>();
    data->n = n;
    data->table.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) throw ValidationError("closure", "row " + std::to_string(a) + " has wrong length");
      for (std::size_t b = 0; b < n; ++b) {
        if (table[a][b] >= n)
          throw ValidationError("closure", std::to_string(a) + "*" + std::to_string(b) + " is not an element");
        data->table[a * n + b] = table[a][b];
      }
    }
    std::optional<Element> e;
    for (Element c = 0; c < n && !e; ++c) {
      bool ok = true;
      for (Element a = 0; a < n && ok; ++a) ok = data->table[c * n + a] == a && data->table[a * n + c] == a;
      if (ok) e = c;
    }
    if (!e) throw ValidationError("identity", "no two-sided identity");
    data->identity = *e;
    data->inverse.assign(n, n);
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b)
        if (data->table[a * n + b] == *e && data->table[b * n + a] == *e) data->inverse[a] = b;
      if (data->inverse[a] == n) throw ValidationError("inverse", "element " + std::to_string(a) + " has no inverse");
    }
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) {
          Element l = data->table[data->table[a * n + b] * n + c];
          Element r = data->table[a * n + data->table[b * n + c]];
          if (l != r)
            throw ValidationError("associativity", "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                                       std::to_string(c) + " != " + std::to_string(a) + "*(" +
                                                       std::to_string(b) + "*" + std::to_string(c) + ")");
        }
    if (labels.empty()) {
      for (Element a = 0; a < n; ++a) labels.push_back(a == *e ? "e" : "g" + std::to_string(a));
    }
    if (labels.size() != n) throw InputError("label count does not match group order");
    data->labels = std::move(labels);
    return FiniteGroup(std::move(data));
  }

  // Closure of the generators inside Sym(degree). Elements are sorted by image
  // tuple, so the identity is element 0.
  static FiniteGroup from_permutations(const std::vector<Permutation>& gens, std::size_t degree) {
    for (const auto& g : gens)
      if (g.degree() != degree) throw InputError("generator degree mismatch");
    std::vector<Permutation> elems{Permutation::identity(degree)};
    std::map<Permutation, std::size_t> seen{{elems[0], 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const auto& g : gens) {
        Permutation p = g * elems[i];
        if (!seen.count(p)) {
          if (elems.size() >= kMaxGroupOrder) throw InputError("generated group exceeds order " + std::to_string(kMaxGroupOrder));
          seen.emplace(p, elems.size());
          elems.push_back(p);
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    std::map<Permutation, Element> index;
    for (Element i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    const std::size_t n = elems.size();
    auto data = std::make_shared<Data>();
    data->n = n;
    data->table.resize(n * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) data->table[a * n + b] = index.at(elems[a] * elems[b]);
    data->identity = 0;
    data->inverse.resize(n);
    for (Element a = 0; a < n; ++a) data->inverse[a] = index.at(elems[a].inverse());
    for (const auto& p : elems) data->labels.push_back(p.to_string());
    data->permutations = elems;
    data->degree = degree;
    return FiniteGroup(std::move(data));
  }

  static FiniteGroup trivial() {
    static const FiniteGroup g = from_table({{0}}, {"e"});
    return g;
  }

  std::size_t order() const { return data_->n; }
  Element identity() const { return data_->identity; }
  Element mul(Element a, Element b) const { return data_->table[a * data_->n + b]; }
  Element inv(Element a) const { return data_->inverse[a]; }
  Element conj(Element g, Element x) const { return mul(mul(g, x), inv(g)); }
  const std::string& label(Element a) const { return data_->labels[a]; }
  const std::vector<std::string>& labels() const { return data_->labels; }
  bool is_permutation_group() const { return !data_->permutations.empty(); }
  std::size_t permutation_degree() const { return data_->degree; }
  const Permutation& permutation(Element a) const { return data_->permutations.at(a); }

  std::optional<Element> find_label(const std::string& s) const {
    for (Element a = 0; a < order(); ++a)
      if (data_->labels[a] == s) return a;
    if (is_permutation_group()) {
      Permutation p = Permutation::parse(s, data_->degree);
      auto it = std::find(data_->permutations.begin(), data_->permutations.end(), p);
      if (it != data_->permutations.end()) return static_cast<Element>(it - data_->permutations.begin());
    }
    return std::nullopt;
  }

  std::size_t element_order(Element a) const {
    std::size_t k = 1;
    for (Element x = a; x != identity(); x = mul(x, a)) ++k;
    return k;
  }

  ElementSet all_elements() const {
    ElementSet s;
    for (Element a = 0; a < order(); ++a) s.insert(a);
    return s;
  }

  bool is_abelian() const {
    for (Element a = 0; a < order(); ++a)
      for (Element b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool same_as(const FiniteGroup& o) const { return data_ == o.data_ || data_->table == o.data_->table; }

 private:
  struct Data {
    std::size_t n = 0;
    std::vector<Element> table;
    std::vector<Element> inverse;
    Element identity = 0;
    std::vector<std::string> labels;
    std::vector<Permutation> permutations;
    std::size_t degree = 0;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FiniteGroup g, ElementSet members) : group_(std::move(g)), members_(members) {}

  const FiniteGroup& group() const { return group_; }
  const ElementSet& elements() const { return members_; }
  std::vector<Element> members() const { return members_.members(); }
  std::size_t order() const { return members_.size(); }
  bool contains(Element a) const { return members_.contains(a); }
  bool operator==(const Subgroup& o) const { return members_ == o.members_; }

  std::string describe() const {
    std::string s = "{";
    bool first = true;
    for (auto a : members()) {
      if (!first) s += ", ";
      s += group_.label(a);
      first = false;
    }
    return s + "}";
  }

 private:
  FiniteGroup group_;
  ElementSet members_;
};

// Canonical subgroup order: by size, then lexicographically by sorted member ids.
inline bool canonical_less(const ElementSet& a, const ElementSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members() < b.members();
}

inline ElementSet closure(const FiniteGroup& g, const ElementSet& seed) {
  auto gens = seed.members();
  ElementSet s;
  s.insert(g.identity());
  std::vector<Element> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto x : gens) {
      Element y = g.mul(queue[i], x);
      if (!s.contains(y)) {
        s.insert(y);
        queue.push_back(y);
      }
    }
  }
  return s;
}

inline Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Element>& gens) {
  ElementSet seed;
  for (auto x : gens) {
    if (x >= g.order()) throw InputError("element id out of range");
    seed.insert(x);
  }
  return Subgroup(g, closure(g, seed));
}

inline bool is_subgroup(const FiniteGroup& g, const ElementSet& s) {
  if (!s.contains(g.identity())) return false;
  auto m = s.members();
  for (auto a : m)
    for (auto b : m)
      if (!s.contains(g.mul(a, g.inv(b)))) return false;
  return true;
}

inline ElementSet conjugate_set(const FiniteGroup& g, Element x, const ElementSet& s) {
  ElementSet r;
  for (auto a : s.members()) r.insert(g.conj(x, a));
  return r;
}

inline std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  std::vector<ElementSet> found;
  ElementSet triv;
  triv.insert(g.identity());
  found.push_back(triv);
  seen.emplace(triv, 0);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Element x = 0; x < g.order(); ++x) {
      if (found[i].contains(x)) continue;
      ElementSet seed = found[i];
      seed.insert(x);
      ElementSet c = closure(g, seed);
      if (!seen.count(c)) {
        seen.emplace(c, found.size());
        found.push_back(c);
      }
    }
  }
  std::sort(found.begin(), found.end(), canonical_less);
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& s : found) out.emplace_back(g, s);
  return out;
}

// Subgroups of a group with conjugation data precomputed.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(FiniteGroup g) : group_(std::move(g)), subgroups_(enumerate_subgroups(group_)) {
    const std::size_t n = subgroups_.size();
    for (std::size_t i = 0; i < n; ++i) index_.emplace(subgroups_[i].elements(), i);
    conj_.resize(group_.order() * n);
    for (Element x = 0; x < group_.order(); ++x)
      for (std::size_t i = 0; i < n; ++i)
        conj_[x * n + i] = index_.at(conjugate_set(group_, x, subgroups_[i].elements()));
    class_of_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (class_of_[i] != n) continue;
      std::vector<std::size_t> cls;
      for (Element x = 0; x < group_.order(); ++x) cls.push_back(conjugate(x, i));
      std::sort(cls.begin(), cls.end());
      cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
      for (auto j : cls) class_of_[j] = classes_.size();
      classes_.push_back(std::move(cls));
    }
  }

  const FiniteGroup& group() const { return group_; }
  std::size_t size() const { return subgroups_.size(); }
  const Subgroup& subgroup(std::size_t i) const { return subgroups_.at(i); }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  std::size_t trivial_index() const { return 0; }
  std::size_t whole_index() const { return subgroups_.size() - 1; }

  std::size_t index_of(const ElementSet& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw PreconditionError("set is not a subgroup of this group");
    return it->second;
  }
  std::size_t index_of(const Subgroup& h) const { return index_of(h.elements()); }

  // Index of x H x^{-1}.
  std::size_t conjugate(Element x, std::size_t i) const { return conj_[x * subgroups_.size() + i]; }

  std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t class_rep(std::size_t i) const { return classes_[class_of_[i]].front(); }

  bool is_normal(std::size_t i) const { return classes_[class_of_[i]].size() == 1; }
  std::vector<std::size_t> normal_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (is_normal(i)) out.push_back(i);
    return out;
  }

  bool contains(std::size_t big, std::size_t small) const {
    return subgroups_[small].elements().subset_of(subgroups_[big].elements());
  }

  // Is some conjugate of a contained in b?
  bool subconjugate(std::size_t a, std::size_t b) const {
    for (auto c : classes_[class_of_[a]])
      if (contains(b, c)) return true;
    return false;
  }

  // An element x with x a x^{-1} = b, if any.
  std::optional<Element> conjugator(std::size_t a, std::size_t b) const {
    for (Element x = 0; x < group_.order(); ++x)
      if (conjugate(x, a) == b) return x;
    return std::nullopt;
  }

  std::size_t normalizer(std::size_t i) const {
    ElementSet s;
    for (Element x = 0; x < group_.order(); ++x)
      if (conjugate(x, i) == i) s.insert(x);
    return index_of(s);
  }

  // Largest normal subgroup of the group contained in subgroup i.
  std::size_t core(std::size_t i) const {
    ElementSet s = group_.all_elements();
    for (auto j : classes_[class_of_[i]]) s = s & subgroups_[j].elements();
    return index_of(s);
  }

  std::size_t intersection(std::size_t a, std::size_t b) const {
    return index_of(subgroups_[a].elements() & subgroups_[b].elements());
  }

 private:
  FiniteGroup group_;
  std::vector<Subgroup> subgroups_;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index_;
  std::vector<std::size_t> conj_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> classes_;
};

// Classes ordered by canonical representative; each class lists its members
// in canonical order, representative first.
inline std::vector<std::vector<Subgroup>> conjugacy_classes_of_subgroups(const FiniteGroup& g) {
  SubgroupLattice lat(g);
  std::vector<std::vector<Subgroup>> out;
  for (const auto& cls : lat.classes()) {
    std::vector<Subgroup> c;
    for (auto i : cls) c.push_back(lat.subgroup(i));
    out.push_back(std::move(c));
  }
  return out;
}

inline bool is_normal(const Subgroup& h) {
  const auto& g = h.group();
  for (Element x = 0; x < g.order(); ++x)
    if (conjugate_set(g, x, h.elements()) != h.elements()) return false;
  return true;
}

inline std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  for (auto& h : enumerate_subgroups(g))
    if (is_normal(h)) out.push_back(h);
  return out;
}

inline Subgroup normalizer(const Subgroup& h) {
  const auto& g = h.group();
  ElementSet s;
  for (Element x = 0; x < g.order(); ++x)
    if (conjugate_set(g, x, h.elements()) == h.elements()) s.insert(x);
  return Subgroup(g, s);
}

// A subgroup viewed as a group in its own right; elements keep the order of
// their ids in the ambient group.
struct EmbeddedGroup {
  FiniteGroup group;
  std::vector<Element> embedding;  // element of `group` -> ambient element
  std::vector<Element> restriction;  // ambient element -> element of `group` (or order() if absent)
};

inline EmbeddedGroup as_group(const Subgroup& h) {
  const auto& g = h.group();
  auto mem = h.members();
  std::vector<Element> back(g.order(), static_cast<Element>(mem.size()));
  for (Element i = 0; i < mem.size(); ++i) back[mem[i]] = i;
  std::vector<std::vector<Element>> table(mem.size(), std::vector<Element>(mem.size()));
  std::vector<std::string> labels;
  for (Element i = 0; i < mem.size(); ++i) {
    labels.push_back(g.label(mem[i]));
    for (Element j = 0; j < mem.size(); ++j) table[i][j] = back[g.mul(mem[i], mem[j])];
  }
  return {FiniteGroup::from_table(std::move(table), std::move(labels)), mem, back};
}

struct QuotientGroup {
  FiniteGroup group;
  std::vector<Element> projection;  // ambient element -> coset id
};

// G/N with cosets ordered by their smallest element id.
inline QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(n)) throw PreconditionError("quotient by a subgroup that is not normal");
  std::vector<Element> proj(g.order(), static_cast<Element>(g.order()));
  std::vector<Element> reps;
  for (Element a = 0; a < g.order(); ++a) {
    if (proj[a] != g.order()) continue;
    Element id = static_cast<Element>(reps.size());
    reps.push_back(a);
    for (auto x : n.members()) proj[g.mul(a, x)] = id;
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<Element>> table(q, std::vector<Element>(q));
  std::vector<std::string> labels;
  for (Element i = 0; i < q; ++i) {
    labels.push_back(q == 1 || proj[g.identity()] == i ? std::string("e") : "[" + g.label(reps[i]) + "]");
    for (Element j = 0; j < q; ++j) table[i][j] = proj[g.mul(reps[i], reps[j])];
  }
  return {FiniteGroup::from_table(std::move(table), std::move(labels)), std::move(proj)};
}

// W_G(H) = N_G(H)/H.
inline FiniteGroup weyl_group(const FiniteGroup& g, const Subgroup& h) {
  Subgroup nh = normalizer(h);
  EmbeddedGroup emb = as_group(nh);
  ElementSet inner;
  for (auto a : h.members()) inner.insert(emb.restriction[a]);
  return quotient_group(emb.group, Subgroup(emb.group, inner)).group;
}

// Backtracking isomorphism test on a greedy generating set.
inline bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  const std::size_t n = a.order();
  std::map<std::size_t, std::size_t> ca, cb;
  for (Element x = 0; x < n; ++x) {
    ++ca[a.element_order(x)];
    ++cb[b.element_order(x)];
  }
  if (ca != cb) return false;
  std::vector<Element> gens;
  ElementSet span;
  span.insert(a.identity());
  span = closure(a, span);
  for (Element x = 0; x < n && span.size() < n; ++x) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    ElementSet seed;
    for (auto y : gens) seed.insert(y);
    span = closure(a, seed);
  }
  std::vector<Element> image(gens.size());
  // Try to extend the assignment gens -> image to an isomorphism.
  auto try_extend = [&]() -> bool {
    std::vector<Element> phi(n, static_cast<Element>(n));
    std::vector<bool> used(n, false);
    phi[a.identity()] = b.identity();
    used[b.identity()] = true;
    std::vector<Element> queue{a.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Element x = a.mul(queue[i], gens[k]);
        Element y = b.mul(phi[queue[i]], image[k]);
        if (phi[x] == n) {
          if (used[y]) return false;
          phi[x] = y;
          used[y] = true;
          queue.push_back(x);
        } else if (phi[x] != y) {
          return false;
        }
      }
    }
    if (queue.size() != n) return false;
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (phi[a.mul(x, y)] != b.mul(phi[x], phi[y])) return false;
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) return try_extend();
    for (Element y = 0; y < n; ++y) {
      if (b.element_order(y) != a.element_order(gens[k])) continue;
      image[k] = y;
      if (search(k + 1)) return true;
    }
    return false;
  };
  return search(0);
}

}  // namespace eqcalc
