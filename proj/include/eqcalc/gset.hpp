#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eqcalc/catalog.hpp"
#include "eqcalc/group.hpp"

namespace eqcalc {

using Point = std::uint32_t;

// Finite left G-set given by its action table, with an optional fixed basepoint.
class GSet {
 public:
  GSet() = default;

  GSet(FiniteGroup g, std::vector<std::vector<Point>> action, std::optional<Point> basepoint = std::nullopt)
      : group_(std::move(g)), action_(std::move(action)), basepoint_(basepoint) {
    if (action_.size() != group_.order()) throw ValidationError("action", "one row per group element required");
    size_ = action_.empty() ? 0 : action_[0].size();
    for (const auto& row : action_) {
      if (row.size() != size_) throw ValidationError("action", "rows of unequal length");
      std::vector<bool> hit(size_, false);
      for (auto y : row) {
        if (y >= size_ || hit[y]) throw ValidationError("action", "row is not a permutation");
        hit[y] = true;
      }
    }
    for (Point x = 0; x < size_; ++x)
      if (action_[group_.identity()][x] != x) throw ValidationError("action", "identity moves point " + std::to_string(x));
    for (Element a = 0; a < group_.order(); ++a)
      for (Element b = 0; b < group_.order(); ++b)
        for (Point x = 0; x < size_; ++x)
          if (action_[group_.mul(a, b)][x] != action_[a][action_[b][x]])
            throw ValidationError("action", "(gh)x != g(hx) for g=" + group_.label(a) + ", h=" + group_.label(b) +
                                                ", x=" + std::to_string(x));
    if (basepoint_) {
      if (*basepoint_ >= size_) throw ValidationError("basepoint", "out of range");
      for (Element a = 0; a < group_.order(); ++a)
        if (action_[a][*basepoint_] != *basepoint_) throw ValidationError("basepoint", "basepoint is not fixed");
    }
  }

  static GSet empty(const FiniteGroup& g) { return GSet(g, std::vector<std::vector<Point>>(g.order())); }

  // Left cosets xH, ordered by smallest element.
  static GSet coset_space(const Subgroup& h) {
    const auto& g = h.group();
    std::vector<Point> coset_of(g.order(), static_cast<Point>(g.order()));
    std::vector<Element> reps;
    for (Element a = 0; a < g.order(); ++a) {
      if (coset_of[a] != g.order()) continue;
      for (auto x : h.members()) coset_of[g.mul(a, x)] = static_cast<Point>(reps.size());
      reps.push_back(a);
    }
    std::vector<std::vector<Point>> act(g.order(), std::vector<Point>(reps.size()));
    for (Element a = 0; a < g.order(); ++a)
      for (Point c = 0; c < reps.size(); ++c) act[a][c] = coset_of[g.mul(a, reps[c])];
    return GSet(g, std::move(act));
  }

  static GSet trivial(const FiniteGroup& g, std::size_t n) {
    std::vector<Point> row(n);
    std::iota(row.begin(), row.end(), 0u);
    return GSet(g, std::vector<std::vector<Point>>(g.order(), row));
  }

  static GSet disjoint_union(const GSet& a, const GSet& b) {
    if (a.basepoint_ || b.basepoint_) throw PreconditionError("disjoint union of pointed sets");
    std::vector<std::vector<Point>> act(a.group_.order());
    for (Element g = 0; g < a.group_.order(); ++g) {
      act[g] = a.action_[g];
      for (auto y : b.action_[g]) act[g].push_back(static_cast<Point>(y + a.size_));
    }
    return GSet(a.group_, std::move(act));
  }

  // J_+ : adds a new fixed basepoint as the last point.
  GSet with_basepoint() const {
    if (basepoint_) throw PreconditionError("set already has a basepoint");
    auto act = action_;
    for (auto& row : act) row.push_back(static_cast<Point>(size_));
    return GSet(group_, std::move(act), static_cast<Point>(size_));
  }

  const FiniteGroup& group() const { return group_; }
  std::size_t size() const { return size_; }
  Point act(Element g, Point x) const { return action_[g][x]; }
  const std::vector<std::vector<Point>>& action() const { return action_; }
  const std::optional<Point>& basepoint() const { return basepoint_; }

  // Orbits ordered by smallest point; each orbit sorted.
  std::vector<std::vector<Point>> orbits() const {
    std::vector<bool> seen(size_, false);
    std::vector<std::vector<Point>> out;
    for (Point x = 0; x < size_; ++x) {
      if (seen[x]) continue;
      std::vector<Point> orb;
      for (Element g = 0; g < group_.order(); ++g) {
        Point y = action_[g][x];
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    return out;
  }

  // Orbits of J = this set minus the basepoint.
  std::vector<std::vector<Point>> unpointed_orbits() const {
    auto orbs = orbits();
    if (basepoint_) {
      orbs.erase(std::remove_if(orbs.begin(), orbs.end(),
                                [&](const auto& o) { return o.size() == 1 && o[0] == *basepoint_; }),
                 orbs.end());
    }
    return orbs;
  }

  ElementSet stabilizer(Point x) const {
    ElementSet s;
    for (Element g = 0; g < group_.order(); ++g)
      if (action_[g][x] == x) s.insert(g);
    return s;
  }

  // Points fixed by every element of `h`.
  std::vector<Point> fixed_points(const ElementSet& h) const {
    std::vector<Point> out;
    for (Point x = 0; x < size_; ++x) {
      bool fixed = true;
      for (auto g : h.members()) fixed = fixed && action_[g][x] == x;
      if (fixed) out.push_back(x);
    }
    return out;
  }

  // Orbit count under the elements of a subgroup.
  std::size_t orbit_count(const ElementSet& h) const {
    std::vector<bool> seen(size_, false);
    std::size_t count = 0;
    auto mem = h.members();
    for (Point x = 0; x < size_; ++x) {
      if (seen[x]) continue;
      ++count;
      for (auto g : mem) seen[action_[g][x]] = true;
    }
    return count;
  }

 private:
  FiniteGroup group_;
  std::vector<std::vector<Point>> action_;
  std::size_t size_ = 0;
  std::optional<Point> basepoint_;
};

struct OrbitInfo {
  std::vector<Point> points;
  Subgroup stabilizer;  // of the smallest point
};

inline std::vector<OrbitInfo> orbit_decomposition(const GSet& x) {
  std::vector<OrbitInfo> out;
  for (auto& o : x.orbits()) out.push_back({o, Subgroup(x.group(), x.stabilizer(o.front()))});
  return out;
}

inline std::vector<Point> fixed_points(const GSet& x, const Subgroup& h) { return x.fixed_points(h.elements()); }

// Restriction of a G-set along the inclusion of a subgroup.
inline GSet restrict_to(const GSet& x, const Subgroup& h) {
  EmbeddedGroup emb = as_group(h);
  std::vector<std::vector<Point>> act;
  for (auto g : emb.embedding) act.push_back(x.action()[g]);
  return GSet(emb.group, std::move(act), x.basepoint());
}

struct QuotientGSet {
  QuotientGroup quotient;
  GSet set;                      // J/H as a G/H-set
  std::vector<Point> projection;  // J -> J/H
};

inline QuotientGSet quotient_gset(const GSet& j, const Subgroup& h) {
  const auto& g = j.group();
  QuotientGroup q = quotient_group(g, h);
  std::vector<Point> proj(j.size(), static_cast<Point>(j.size()));
  std::vector<Point> reps;
  for (Point x = 0; x < j.size(); ++x) {
    if (proj[x] != j.size()) continue;
    for (auto a : h.members()) proj[j.act(a, x)] = static_cast<Point>(reps.size());
    reps.push_back(x);
  }
  std::vector<std::vector<Point>> act(q.group.order(), std::vector<Point>(reps.size()));
  for (Element a = 0; a < g.order(); ++a)
    for (Point c = 0; c < reps.size(); ++c) act[q.projection[a]][c] = proj[j.act(a, reps[c])];
  std::optional<Point> bp;
  if (j.basepoint()) bp = proj[*j.basepoint()];
  GSet set(q.group, std::move(act), bp);
  return {std::move(q), std::move(set), std::move(proj)};
}

class EquivariantMap {
 public:
  EquivariantMap(GSet source, GSet target, std::vector<Point> f)
      : source_(std::move(source)), target_(std::move(target)), f_(std::move(f)) {
    if (f_.size() != source_.size()) throw ValidationError("map", "wrong number of images");
    for (auto y : f_)
      if (y >= target_.size()) throw ValidationError("map", "image out of range");
    for (Element g = 0; g < source_.group().order(); ++g)
      for (Point x = 0; x < source_.size(); ++x)
        if (f_[source_.act(g, x)] != target_.act(g, f_[x]))
          throw ValidationError("equivariance", "f(gx) != g f(x) for g=" + source_.group().label(g) +
                                                   ", x=" + std::to_string(x));
  }

  const GSet& source() const { return source_; }
  const GSet& target() const { return target_; }
  Point operator()(Point x) const { return f_[x]; }

 private:
  GSet source_;
  GSet target_;
  std::vector<Point> f_;
};

// Distinct source orbits land in distinct target orbits.
inline bool is_injective_on_orbits(const EquivariantMap& f) {
  auto tgt = f.target().orbits();
  std::vector<std::size_t> orbit_of(f.target().size());
  for (std::size_t i = 0; i < tgt.size(); ++i)
    for (auto y : tgt[i]) orbit_of[y] = i;
  std::vector<bool> used(tgt.size(), false);
  for (auto& o : f.source().orbits()) {
    auto t = orbit_of[f(o.front())];
    if (used[t]) return false;
    used[t] = true;
  }
  return true;
}

// Sorted multiset of stabilizer conjugacy-class ids: a complete isomorphism invariant.
inline std::vector<std::size_t> iso_key(const SubgroupLattice& lat, const GSet& x) {
  std::vector<std::size_t> key;
  for (auto& o : x.orbits()) key.push_back(lat.class_of(lat.index_of(x.stabilizer(o.front()))));
  std::sort(key.begin(), key.end());
  return key;
}

inline bool isomorphic(const SubgroupLattice& lat, const GSet& a, const GSet& b) {
  return iso_key(lat, a) == iso_key(lat, b);
}

// Disjoint union of G/H over the given subgroup indices.
inline GSet gset_from_orbit_types(const SubgroupLattice& lat, const std::vector<std::size_t>& subgroup_indices) {
  GSet out = GSet::empty(lat.group());
  for (auto i : subgroup_indices) out = GSet::disjoint_union(out, GSet::coset_space(lat.subgroup(i)));
  return out;
}

// Is there an equivariant map K -> J injective on orbits?
inline bool tree_leq(const SubgroupLattice& lat, const GSet& k, const GSet& j) {
  auto ko = k.orbits();
  auto jo = j.orbits();
  if (ko.size() > jo.size()) return false;
  std::vector<std::size_t> ks, js;
  for (auto& o : ko) ks.push_back(lat.index_of(k.stabilizer(o.front())));
  for (auto& o : jo) js.push_back(lat.index_of(j.stabilizer(o.front())));
  std::vector<int> match(jo.size(), -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t a, std::vector<bool>& seen) {
    for (std::size_t b = 0; b < jo.size(); ++b) {
      if (seen[b] || !lat.subconjugate(ks[a], js[b])) continue;
      seen[b] = true;
      if (match[b] < 0 || augment(static_cast<std::size_t>(match[b]), seen)) {
        match[b] = static_cast<int>(a);
        return true;
      }
    }
    return false;
  };
  for (std::size_t a = 0; a < ko.size(); ++a) {
    std::vector<bool> seen(jo.size(), false);
    if (!augment(a, seen)) return false;
  }
  return true;
}

struct GSetClass {
  std::vector<std::size_t> key;  // stabilizer class ids, sorted
  GSet set;
};

// Iso classes of G-sets with at most max_size points (and at most max_orbits
// orbits), the empty set included; ordered by size, then key.
inline std::vector<GSetClass> enumerate_gset_iso_classes(const SubgroupLattice& lat, std::size_t max_size,
                                                         std::size_t max_orbits = static_cast<std::size_t>(-1)) {
  const auto& classes = lat.classes();
  const std::size_t order = lat.group().order();
  std::vector<std::vector<std::size_t>> keys;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t size) {
    keys.push_back(cur);
    if (cur.size() >= max_orbits) return;
    for (std::size_t c = from; c < classes.size(); ++c) {
      std::size_t orb = order / lat.subgroup(classes[c].front()).order();
      if (size + orb > max_size) continue;
      cur.push_back(c);
      rec(c, size + orb);
      cur.pop_back();
    }
  };
  rec(0, 0);
  auto size_of = [&](const std::vector<std::size_t>& key) {
    std::size_t s = 0;
    for (auto c : key) s += order / lat.subgroup(classes[c].front()).order();
    return s;
  };
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    auto sa = size_of(a), sb = size_of(b);
    return sa != sb ? sa < sb : a < b;
  });
  std::vector<GSetClass> out;
  for (auto& key : keys) {
    std::vector<std::size_t> reps;
    for (auto c : key) reps.push_back(classes[c].front());
    out.push_back({key, gset_from_orbit_types(lat, reps)});
  }
  return out;
}

// Human-readable orbit type list, e.g. "2xG/1 + G/G".
inline std::string describe_gset(const SubgroupLattice& lat, const GSet& x) {
  auto key = iso_key(lat, x);
  if (key.empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < key.size();) {
    std::size_t j = i;
    while (j < key.size() && key[j] == key[i]) ++j;
    if (!s.empty()) s += " + ";
    if (j - i > 1) s += std::to_string(j - i) + "x";
    s += "G/H" + std::to_string(lat.classes()[key[i]].front());
    i = j;
  }
  return s;
}

// Subgroup spec: "1" (trivial), "G" (whole group), "#i" (canonical index), or
// "<a; b; ...>" generated by elements given by label or cycle notation.
inline std::size_t parse_subgroup_spec(const SubgroupLattice& lat, const std::string& spec_in) {
  std::string spec = trim(spec_in);
  if (spec == "1" || spec == "e") return lat.trivial_index();
  if (spec == "G") return lat.whole_index();
  if (!spec.empty() && spec[0] == '#') {
    std::size_t i = 0;
    try {
      i = std::stoul(spec.substr(1));
    } catch (const std::exception&) {
      throw InputError("bad subgroup index: " + spec);
    }
    if (i >= lat.size()) throw InputError("subgroup index out of range: " + spec);
    return i;
  }
  if (spec.size() >= 2 && spec.front() == '<' && spec.back() == '>') {
    std::vector<Element> gens;
    std::stringstream ss(spec.substr(1, spec.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      auto e = lat.group().find_label(tok);
      if (!e) throw InputError("unknown group element: " + tok);
      gens.push_back(*e);
    }
    return lat.index_of(generated_subgroup(lat.group(), gens));
  }
  throw InputError("bad subgroup spec: " + spec);
}

// G-set file grammar ('#' starts a comment):
//   orbit: [<m> x] G/<subgroup spec>
//   basepoint: yes|no
inline GSet parse_gset_file(const SubgroupLattice& lat, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  GSet out = GSet::empty(lat.group());
  bool pointed = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // '#' right after '/' is a subgroup index (G/#3), anywhere else a comment.
    for (std::size_t p = line.find('#'); p != std::string::npos; p = line.find('#', p + 1)) {
      if (p == 0 || line[p - 1] != '/') {
        line = line.substr(0, p);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw InputError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "basepoint") {
      if (value == "yes" || value == "true") pointed = true;
      else if (value == "no" || value == "false") pointed = false;
      else throw InputError("line " + std::to_string(lineno) + ": basepoint must be yes or no");
    } else if (key == "orbit") {
      std::size_t mult = 1;
      auto x = value.find('x');
      if (x != std::string::npos && value.rfind("G/", 0) != 0) {
        try {
          mult = std::stoul(value.substr(0, x));
        } catch (const std::exception&) {
          throw InputError("line " + std::to_string(lineno) + ": bad multiplicity");
        }
        value = trim(value.substr(x + 1));
      }
      if (value.rfind("G/", 0) != 0) throw InputError("line " + std::to_string(lineno) + ": orbit must be G/<subgroup>");
      std::size_t h = parse_subgroup_spec(lat, value.substr(2));
      for (std::size_t i = 0; i < mult; ++i) out = GSet::disjoint_union(out, GSet::coset_space(lat.subgroup(h)));
    } else {
      throw InputError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return pointed ? out.with_basepoint() : out;
}

}  // namespace eqcalc
