#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqcalc/gset.hpp"

namespace eqcalc {

// Finite poset with an order-preserving action of a finite group.
class GPoset {
 public:
  GPoset() = default;

  // leq is row-major n x n; action[g] is a permutation of the objects.
  GPoset(FiniteGroup g, std::vector<std::string> labels, std::vector<std::uint8_t> leq,
         std::vector<std::vector<std::uint32_t>> action, bool validate = true)
      : group_(std::move(g)), labels_(std::move(labels)), leq_(std::move(leq)), action_(std::move(action)) {
    n_ = labels_.size();
    if (leq_.size() != n_ * n_) throw ValidationError("poset", "order matrix has wrong size");
    if (action_.empty()) {
      std::vector<std::uint32_t> id(n_);
      std::iota(id.begin(), id.end(), 0u);
      action_.assign(group_.order(), id);
    }
    if (action_.size() != group_.order()) throw ValidationError("poset", "one action row per group element required");
    if (validate) check();
    build_covers();
  }

  // Trivial action.
  static GPoset plain(std::vector<std::string> labels, std::vector<std::uint8_t> leq, bool validate = true) {
    return GPoset(FiniteGroup::trivial(), std::move(labels), std::move(leq), {}, validate);
  }

  std::size_t size() const { return n_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * n_ + b]; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  const FiniteGroup& group() const { return group_; }
  std::uint32_t act(Element g, std::size_t a) const { return action_[g][a]; }
  const std::vector<std::vector<std::uint32_t>>& action() const { return action_; }

  // Hasse diagram edges a < b with nothing strictly between.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  const std::vector<std::size_t>& upper_covers(std::size_t a) const { return up_[a]; }

  std::optional<std::size_t> initial_object() const {
    for (std::size_t a = 0; a < n_; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < n_ && ok; ++b) ok = leq(a, b);
      if (ok) return a;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> terminal_object() const {
    for (std::size_t a = 0; a < n_; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < n_ && ok; ++b) ok = leq(b, a);
      if (ok) return a;
    }
    return std::nullopt;
  }

  bool is_fixed(std::size_t a, const ElementSet& h) const {
    for (auto g : h.members())
      if (action_[g][a] != a) return false;
    return true;
  }

  // Full subposet on the given objects (in the given order), with the action
  // dropped.
  GPoset full_subposet(const std::vector<std::size_t>& objects) const {
    const std::size_t m = objects.size();
    std::vector<std::uint8_t> l(m * m);
    std::vector<std::string> lab;
    for (std::size_t i = 0; i < m; ++i) {
      lab.push_back(labels_[objects[i]]);
      for (std::size_t j = 0; j < m; ++j) l[i * m + j] = leq(objects[i], objects[j]);
    }
    return GPoset(FiniteGroup::trivial(), std::move(lab), std::move(l), {}, false);
  }

  // Hasse diagram in DOT; nodes in object order, edges in cover order.
  std::string to_dot(const std::string& name = "poset") const {
    std::string s = "digraph " + name + " {\n  rankdir=BT;\n";
    for (std::size_t a = 0; a < n_; ++a) s += "  n" + std::to_string(a) + " [label=\"" + labels_[a] + "\"];\n";
    for (auto& [a, b] : covers_) s += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    return s + "}\n";
  }

 private:
  void check() const {
    for (std::size_t a = 0; a < n_; ++a) {
      if (!leq(a, a)) throw ValidationError("poset", "not reflexive at " + labels_[a]);
      for (std::size_t b = 0; b < n_; ++b) {
        if (a != b && leq(a, b) && leq(b, a)) throw ValidationError("poset", "not antisymmetric");
        if (!leq(a, b)) continue;
        for (std::size_t c = 0; c < n_; ++c)
          if (leq(b, c) && !leq(a, c)) throw ValidationError("poset", "not transitive");
      }
    }
    for (Element g = 0; g < group_.order(); ++g) {
      const auto& p = action_[g];
      if (p.size() != n_) throw ValidationError("action", "row has wrong length");
      std::vector<bool> hit(n_, false);
      for (auto x : p) {
        if (x >= n_ || hit[x]) throw ValidationError("action", "row is not a permutation");
        hit[x] = true;
      }
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
          if (leq(a, b) != leq(p[a], p[b])) throw ValidationError("action", "group element does not preserve order");
      for (Element h = 0; h < group_.order(); ++h)
        for (std::size_t a = 0; a < n_; ++a)
          if (action_[group_.mul(g, h)][a] != p[action_[h][a]]) throw ValidationError("action", "not an action");
    }
  }

  void build_covers() {
    up_.assign(n_, {});
    covers_.clear();
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        if (!less(a, b)) continue;
        bool cover = true;
        for (std::size_t c = 0; c < n_ && cover; ++c)
          if (less(a, c) && less(c, b)) cover = false;
        if (cover) {
          covers_.emplace_back(a, b);
          up_[a].push_back(b);
        }
      }
  }

  FiniteGroup group_;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::vector<std::uint32_t>> action_;
  std::size_t n_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> up_;
};

using Mask = std::uint64_t;

inline Mask act_mask(const GSet& ground, Element g, Mask m) {
  Mask r = 0;
  while (m) {
    int b = std::countr_zero(m);
    r |= Mask{1} << ground.act(g, static_cast<Point>(b));
    m &= m - 1;
  }
  return r;
}

inline std::size_t mask_size(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }
inline bool mask_subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Label like "{0,2,+}", the basepoint written as '+'.
inline std::string mask_label(const GSet& ground, Mask m) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (!(m >> i & 1)) continue;
    if (!first) s += ",";
    s += (ground.basepoint() && *ground.basepoint() == i) ? std::string("+") : std::to_string(i);
    first = false;
  }
  return s + "}";
}

// A G-invariant family of subsets of a G-set, ordered by inclusion.
struct SubsetPoset {
  GSet ground;
  std::vector<Mask> subsets;  // sorted by size, then by mask value
  GPoset poset;

  std::optional<std::size_t> index_of(Mask m) const {
    auto it = std::lower_bound(subsets.begin(), subsets.end(), m, order);
    if (it == subsets.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - subsets.begin());
  }

  static bool order(Mask a, Mask b) { return mask_size(a) != mask_size(b) ? mask_size(a) < mask_size(b) : a < b; }
};

// With with_action = false the family need not be invariant and the poset
// carries the trivial group.
inline SubsetPoset make_subset_poset(const GSet& ground, std::vector<Mask> subsets, bool with_action = true) {
  if (ground.size() > 63) throw PreconditionError("subset posets support at most 63 points");
  std::sort(subsets.begin(), subsets.end(), SubsetPoset::order);
  subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
  const std::size_t n = subsets.size();
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(mask_label(ground, subsets[i]));
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = mask_subset(subsets[i], subsets[j]);
  }
  SubsetPoset sp{ground, subsets, {}};
  if (!with_action) {
    sp.poset = GPoset(FiniteGroup::trivial(), std::move(labels), std::move(leq), {}, false);
    return sp;
  }
  std::vector<std::vector<std::uint32_t>> action(ground.group().order(), std::vector<std::uint32_t>(n));
  for (Element g = 0; g < ground.group().order(); ++g)
    for (std::size_t i = 0; i < n; ++i) {
      auto j = sp.index_of(act_mask(ground, g, subsets[i]));
      if (!j) throw PreconditionError("subset family is not invariant under the group");
      action[g][i] = static_cast<std::uint32_t>(*j);
    }
  sp.poset = GPoset(ground.group(), std::move(labels), std::move(leq), std::move(action), false);
  return sp;
}

inline Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

inline std::vector<Mask> all_subsets_of(Mask u) {
  std::vector<Mask> out;
  for (Mask s = u;; s = (s - 1) & u) {
    out.push_back(s);
    if (s == 0) break;
  }
  return out;
}

// P(J): all subsets of J.
inline SubsetPoset power_poset(const GSet& j) { return make_subset_poset(j, all_subsets_of(full_mask(j.size()))); }

inline Mask orbit_mask(const std::vector<Point>& orbit) {
  Mask m = 0;
  for (auto p : orbit) m |= Mask{1} << p;
  return m;
}

inline Mask basepoint_mask(const GSet& jplus) {
  if (!jplus.basepoint()) throw PreconditionError("expected a pointed G-set J_+");
  return Mask{1} << *jplus.basepoint();
}

// o_+ for each G-orbit o of J, in orbit order.
inline std::vector<Mask> pointed_orbit_masks(const GSet& jplus) {
  std::vector<Mask> out;
  for (auto& o : jplus.unpointed_orbits()) out.push_back(orbit_mask(o) | basepoint_mask(jplus));
  return out;
}

// St(U) = union over orbits o of P(o_+ n U), minus the full o_+.
inline std::vector<Mask> star_masks(const GSet& jplus, Mask u) {
  std::vector<Mask> out{0};
  Mask plus = basepoint_mask(jplus);
  if (u & plus) out.push_back(plus);
  for (Mask op : pointed_orbit_masks(jplus)) {
    for (Mask s : all_subsets_of(op & u))
      if (s != op) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), SubsetPoset::order);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// St(U) for U a subset of J_+ (J unpointed; the basepoint is appended as the last point).
inline SubsetPoset star_category(const GSet& j, Mask u) {
  GSet jplus = j.with_basepoint();
  if (!mask_subset(u, full_mask(jplus.size()))) throw PreconditionError("U is not a subset of J_+");
  auto masks = star_masks(jplus, u);
  // St(U) is invariant under the stabilizer of U only; keep the action of G
  // when U is G-invariant and drop it otherwise.
  bool invariant = true;
  for (Element g = 0; g < j.group().order(); ++g) invariant = invariant && act_mask(jplus, g, u) == u;
  return make_subset_poset(jplus, masks, invariant);
}

// Subsets S of J_+ not in St(J_+).
inline std::vector<Mask> outside_star(const GSet& j) {
  GSet jplus = j.with_basepoint();
  Mask all = full_mask(jplus.size());
  auto st = star_masks(jplus, all);
  std::vector<Mask> out;
  for (Mask s : all_subsets_of(all))
    if (!std::binary_search(st.begin(), st.end(), s, SubsetPoset::order)) out.push_back(s);
  std::sort(out.begin(), out.end(), SubsetPoset::order);
  return out;
}

struct HomotopyTypeExpr {
  enum class Kind { Contractible, JoinWithPoints, WedgeOfOrbitSuspensions };
  Kind kind = Kind::Contractible;
  std::size_t join_points = 0;             // JoinWithPoints(m): c * {m points}
  std::vector<std::size_t> orbit_indices;  // Wedge: orbits o with o_+ in U
  std::vector<std::size_t> orbit_sizes;

  std::string to_string() const {
    switch (kind) {
      case Kind::Contractible:
        return "Contractible";
      case Kind::JoinWithPoints:
        return "JoinWithPoints(" + std::to_string(join_points) + ")";
      case Kind::WedgeOfOrbitSuspensions: {
        std::string s = "WedgeOfOrbitSuspensions(";
        for (std::size_t i = 0; i < orbit_sizes.size(); ++i)
          s += (i ? "," : "") + std::string("|o") + std::to_string(orbit_indices[i]) + "|=" + std::to_string(orbit_sizes[i]);
        return s + ")";
      }
    }
    return "";
  }

  // Underlying Betti numbers of the described object, given those of c.
  GradedRanks predicted_homology(const GradedRanks& c) const {
    GradedRanks out;
    auto add_shifted = [&](int shift, std::size_t copies) {
      for (auto& [n, k] : c) out[n + shift] += copies * k;
    };
    switch (kind) {
      case Kind::Contractible:
        break;
      case Kind::JoinWithPoints:
        if (join_points == 0) add_shifted(0, 1);
        else if (join_points >= 2) add_shifted(1, join_points - 1);
        break;
      case Kind::WedgeOfOrbitSuspensions:
        for (auto s : orbit_sizes) add_shifted(static_cast<int>(s), 1);
        break;
    }
    return prune(out);
  }
};

inline HomotopyTypeExpr lambda_classify(const GSet& j, Mask u) {
  GSet jplus = j.with_basepoint();
  Mask plus = basepoint_mask(jplus);
  auto orbits = jplus.unpointed_orbits();
  HomotopyTypeExpr e;
  if (!(u & plus)) {
    e.kind = HomotopyTypeExpr::Kind::JoinWithPoints;
    for (auto& o : orbits)
      if (u & orbit_mask(o)) ++e.join_points;
    return e;
  }
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    Mask op = orbit_mask(orbits[i]) | plus;
    if (mask_subset(op, u)) {
      e.orbit_indices.push_back(i);
      e.orbit_sizes.push_back(orbits[i].size());
    }
  }
  e.kind = e.orbit_indices.empty() ? HomotopyTypeExpr::Kind::Contractible
                                   : HomotopyTypeExpr::Kind::WedgeOfOrbitSuspensions;
  return e;
}

// Subgroups of the lattice with the given indices, ordered by inclusion
// (trivial action).
inline GPoset subgroup_poset(const SubgroupLattice& lat, const std::vector<std::size_t>& indices) {
  const std::size_t n = indices.size();
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(lat.subgroup(indices[a]).describe());
    for (std::size_t b = 0; b < n; ++b) leq[a * n + b] = lat.contains(indices[b], indices[a]);
  }
  return GPoset::plain(std::move(labels), std::move(leq), false);
}

inline GPoset normal_subgroup_poset(const SubgroupLattice& lat) { return subgroup_poset(lat, lat.normal_indices()); }

// Product poset with diagonal action (both factors over the same group).
inline GPoset product(const GPoset& a, const GPoset& b) {
  const std::size_t n = a.size() * b.size();
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) labels.push_back("(" + a.label(i) + "," + b.label(k) + ")");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      leq[x * n + y] = a.leq(x / b.size(), y / b.size()) && b.leq(x % b.size(), y % b.size());
  std::vector<std::vector<std::uint32_t>> action(a.group().order(), std::vector<std::uint32_t>(n));
  for (Element g = 0; g < a.group().order(); ++g)
    for (std::size_t x = 0; x < n; ++x)
      action[g][x] = static_cast<std::uint32_t>(a.act(g, x / b.size()) * b.size() + b.act(g, x % b.size()));
  return GPoset(a.group(), std::move(labels), std::move(leq), std::move(action), false);
}

// Family {I_j} of subposets (object lists) indexed by the points of a G-set.
struct EquivariantCover {
  GSet index;
  std::vector<std::vector<std::size_t>> pieces;
};

struct CoverCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Union is everything (objects and relations), pairwise unions of morphism
// sets are closed under composition, and g I_j = I_{gj}.
inline CoverCheck validate_equivariant_cover(const GPoset& p, const EquivariantCover& c) {
  const std::size_t n = p.size();
  if (c.pieces.size() != c.index.size()) return {false, "one piece per index point required"};
  if (!p.group().same_as(c.index.group())) return {false, "index set over a different group"};
  std::vector<std::vector<std::uint8_t>> in(c.pieces.size(), std::vector<std::uint8_t>(n, 0));
  for (std::size_t j = 0; j < c.pieces.size(); ++j)
    for (auto x : c.pieces[j]) {
      if (x >= n) return {false, "piece " + std::to_string(j) + " names a missing object"};
      in[j][x] = 1;
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!p.leq(a, b)) continue;
      bool covered = false;
      for (std::size_t j = 0; j < in.size() && !covered; ++j) covered = in[j][a] && in[j][b];
      if (!covered) return {false, "relation " + p.label(a) + " <= " + p.label(b) + " lies in no piece"};
    }
  for (std::size_t j = 0; j < in.size(); ++j)
    for (std::size_t k = j + 1; k < in.size(); ++k)
      for (std::size_t b = 0; b < n; ++b) {
        if (!in[j][b] || !in[k][b]) continue;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t d = 0; d < n; ++d) {
            bool composable = (p.leq(a, b) && p.leq(b, d)) &&
                              ((in[j][a] && in[k][d]) || (in[k][a] && in[j][d]));
            if (composable && !((in[j][a] && in[j][d]) || (in[k][a] && in[k][d])))
              return {false, "composite " + p.label(a) + " <= " + p.label(d) + " leaves the union of two pieces"};
          }
      }
  for (Element g = 0; g < p.group().order(); ++g)
    for (std::size_t j = 0; j < in.size(); ++j) {
      std::size_t gj = c.index.act(g, static_cast<Point>(j));
      for (std::size_t x = 0; x < n; ++x)
        if (in[j][x] != in[gj][p.act(g, x)])
          return {false, "g I_j != I_gj for g=" + p.group().label(g) + ", j=" + std::to_string(j)};
    }
  return {};
}

struct DeloopingCover {
  SubsetPoset factor;  // P_0(J_+)
  GPoset poset;        // P_0(J_+)^k with diagonal action
  EquivariantCover cover;  // indexed by o_+ (points of o, then +)
};

// Cover of P_0(J_+)^k indexed by o_+: A_j = tuples with some entry containing
// j (j in o), A_+ = tuples with no entry inside o.
inline DeloopingCover delooping_cover(const GSet& j, std::size_t orbit_index, std::size_t k) {
  if (k == 0) throw PreconditionError("delooping cover needs k >= 1");
  GSet jplus = j.with_basepoint();
  auto orbits = jplus.unpointed_orbits();
  if (orbit_index >= orbits.size()) throw PreconditionError("orbit index out of range");
  const auto& o = orbits[orbit_index];
  std::vector<Mask> nonempty;
  for (Mask s : all_subsets_of(full_mask(jplus.size())))
    if (s) nonempty.push_back(s);
  SubsetPoset factor = make_subset_poset(jplus, nonempty);
  GPoset prod = factor.poset;
  for (std::size_t i = 1; i < k; ++i) prod = product(prod, factor.poset);
  const std::size_t m = factor.subsets.size();
  auto entries = [&](std::size_t x) {
    std::vector<Mask> e(k);
    for (std::size_t i = k; i-- > 0;) {
      e[i] = factor.subsets[x % m];
      x /= m;
    }
    return e;
  };
  // Index G-set o_+ with points ordered as o, then +.
  std::vector<std::vector<Point>> act(j.group().order(), std::vector<Point>(o.size() + 1));
  for (Element g = 0; g < j.group().order(); ++g) {
    for (std::size_t a = 0; a < o.size(); ++a) {
      Point img = jplus.act(g, o[a]);
      act[g][a] = static_cast<Point>(std::find(o.begin(), o.end(), img) - o.begin());
    }
    act[g][o.size()] = static_cast<Point>(o.size());
  }
  GSet index(j.group(), std::move(act), static_cast<Point>(o.size()));
  Mask omask = orbit_mask(o);
  std::vector<std::vector<std::size_t>> pieces(o.size() + 1);
  for (std::size_t x = 0; x < prod.size(); ++x) {
    auto e = entries(x);
    for (std::size_t a = 0; a < o.size(); ++a) {
      bool hit = false;
      for (Mask s : e) hit = hit || (s >> o[a] & 1);
      if (hit) pieces[a].push_back(x);
    }
    bool none_inside = true;
    for (Mask s : e) none_inside = none_inside && !mask_subset(s, omask);
    if (none_inside) pieces[o.size()].push_back(x);
  }
  return {std::move(factor), std::move(prod), {std::move(index), std::move(pieces)}};
}

// An H-fixed object that is initial in C and in every fixed subposet C^K, K <= H.
inline std::optional<std::size_t> has_invariant_initial(const GPoset& c, const Subgroup& h) {
  if (!c.group().same_as(h.group())) throw PreconditionError("subgroup of a different group");
  SubgroupLattice lat(c.group());
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (!c.is_fixed(x, h.elements())) continue;
    bool ok = true;
    for (std::size_t ki = 0; ki < lat.size() && ok; ++ki) {
      const auto& k = lat.subgroup(ki).elements();
      if (!k.subset_of(h.elements())) continue;
      for (std::size_t y = 0; y < c.size() && ok; ++y)
        if (c.is_fixed(y, k) && !c.leq(x, y)) ok = false;
    }
    if (ok) return x;
  }
  return std::nullopt;
}

// The under category V/p for p : P_1(S) wr St -> St(S), (U, W) -> W:
// pairs (U in P_1(S), W in St(U)) with V in W, ordered componentwise, acted on
// by the stabilizer of S and V.
struct CommaPoset {
  GPoset poset;
  std::vector<std::pair<Mask, Mask>> objects;
  Subgroup acting;  // stabilizer of S and V, as a subgroup of G
};

inline CommaPoset under_category(const GSet& j, Mask s, Mask v) {
  GSet jplus = j.with_basepoint();
  const auto& g = j.group();
  ElementSet stab;
  for (Element x = 0; x < g.order(); ++x)
    if (act_mask(jplus, x, s) == s && act_mask(jplus, x, v) == v) stab.insert(x);
  std::vector<std::pair<Mask, Mask>> objs;
  for (Mask u : all_subsets_of(s)) {
    if (u == s) continue;
    for (Mask w : star_masks(jplus, u))
      if (mask_subset(v, w)) objs.emplace_back(u, w);
  }
  std::sort(objs.begin(), objs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return SubsetPoset::order(a.first, b.first);
    return SubsetPoset::order(a.second, b.second);
  });
  const std::size_t n = objs.size();
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("(" + mask_label(jplus, objs[a].first) + "," + mask_label(jplus, objs[a].second) + ")");
    for (std::size_t b = 0; b < n; ++b)
      leq[a * n + b] = mask_subset(objs[a].first, objs[b].first) && mask_subset(objs[a].second, objs[b].second);
  }
  std::vector<std::vector<std::uint32_t>> action(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    if (!stab.contains(x)) {
      action[x].resize(n);
      std::iota(action[x].begin(), action[x].end(), 0u);
      continue;
    }
    for (auto& [u, w] : objs) {
      std::pair<Mask, Mask> img{act_mask(jplus, x, u), act_mask(jplus, x, w)};
      action[x].push_back(static_cast<std::uint32_t>(std::find(objs.begin(), objs.end(), img) - objs.begin()));
    }
  }
  // The action is only meaningful on the stabilizer; restrict to it.
  Subgroup acting(g, stab);
  EmbeddedGroup emb = as_group(acting);
  std::vector<std::vector<std::uint32_t>> sub_action;
  for (auto x : emb.embedding) sub_action.push_back(action[x]);
  GPoset p(emb.group, std::move(labels), std::move(leq), std::move(sub_action), false);
  return {std::move(p), std::move(objs), std::move(acting)};
}

}  // namespace eqcalc
