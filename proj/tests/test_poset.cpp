#include <gtest/gtest.h>

#include "eqcalc/catalog.hpp"
#include "eqcalc/cube.hpp"
#include "oracles.hpp"

using namespace eqcalc;

namespace {

GSet copies_of_free(const FiniteGroup& g, std::size_t n) {
  SubgroupLattice lat(g);
  return gset_from_orbit_types(lat, std::vector<std::size_t>(n, lat.trivial_index()));
}

Subgroup whole_group(const FiniteGroup& g) {
  SubgroupLattice lat(g);
  return lat.subgroup(lat.whole_index());
}

// St(J_+) by direct filtering: subsets of J_+ properly contained in some o_+.
std::vector<Mask> star_by_filter(const GSet& j) {
  GSet jp = j.with_basepoint();
  auto ops = pointed_orbit_masks(jp);
  std::vector<Mask> out;
  for (Mask s : all_subsets_of(full_mask(jp.size()))) {
    bool in = ops.empty() && (s == 0 || s == basepoint_mask(jp));
    for (Mask op : ops) in = in || (mask_subset(s, op) && s != op);
    if (in) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), SubsetPoset::order);
  return out;
}

}  // namespace

TEST(Poset, PowerPosetSizes) {
  auto c2 = catalog_group("C2");
  EXPECT_EQ(power_poset(GSet::trivial(c2, 2).with_basepoint()).subsets.size(), 8u);
  EXPECT_EQ(power_poset(GSet::empty(c2)).subsets.size(), 1u);
}

TEST(Poset, StarCountsOfDrawnExamples) {
  auto c2 = catalog_group("C2");
  GSet j = copies_of_free(c2, 3);
  // U = J without the basepoint.
  EXPECT_EQ(star_category(j, full_mask(j.size())).subsets.size(), 10u);
  // U = first orbit, one point of each other orbit, and the basepoint.
  auto orbs = j.unpointed_orbits();
  Mask u = orbit_mask(orbs[0]) | (Mask{1} << orbs[1][0]) | (Mask{1} << orbs[2][0]) | (Mask{1} << j.size());
  EXPECT_EQ(star_category(j, u).subsets.size(), 11u);
}

TEST(Poset, StarOfTrivialSet) {
  auto s3 = catalog_group("S3");
  for (std::size_t n = 0; n <= 5; ++n) {
    GSet j = GSet::trivial(s3, n);
    EXPECT_EQ(star_category(j, full_mask(n + 1)).subsets.size(), n + 2);
    for (Mask s : outside_star(j)) EXPECT_GE(mask_size(s), 2u);
    EXPECT_EQ(outside_star(j).size(), (std::size_t{1} << (n + 1)) - (n + 2));
  }
}

TEST(Poset, StarMatchesFilter) {
  for (auto name : {"C2", "C3", "V4", "S3"}) {
    auto g = catalog_group(name);
    SubgroupLattice lat(g);
    for (auto& cls : enumerate_gset_iso_classes(lat, 4, 4)) {
      auto st = star_category(cls.set, full_mask(cls.set.size() + 1));
      EXPECT_EQ(st.subsets, star_by_filter(cls.set)) << name;
    }
  }
}

TEST(Poset, OutsideStarExamples) {
  auto c2 = catalog_group("C2");
  // Transitive: only T_+.
  GSet t = copies_of_free(c2, 1);
  EXPECT_EQ(outside_star(t), std::vector<Mask>{full_mask(3)});
  // Z/2 + point: every S meeting both orbits, plus both full o_+.
  GSet j = GSet::disjoint_union(t, GSet::trivial(c2, 1));
  GSet jp = j.with_basepoint();
  Mask o1 = 0b0011, o2 = 0b0100, plus = 0b1000;
  std::vector<Mask> expect;
  for (Mask s : all_subsets_of(full_mask(4)))
    if (((s & o1) && (s & o2)) || s == (o1 | plus) || s == (o2 | plus)) expect.push_back(s);
  std::sort(expect.begin(), expect.end(), SubsetPoset::order);
  EXPECT_EQ(outside_star(j), expect);
}

TEST(Poset, FixedPosetIsQuotientPowerPoset) {
  for (auto& name : catalog_names()) {
    auto g = catalog_group(name);
    SubgroupLattice lat(g);
    for (auto& cls : enumerate_gset_iso_classes(lat, 6, 3)) {
      auto p = power_poset(cls.set);
      for (auto hi : lat.normal_indices()) {
        const auto& h = lat.subgroup(hi);
        auto q = quotient_gset(cls.set, h);
        std::vector<std::pair<Mask, Mask>> pairs;
        for (std::size_t i = 0; i < p.subsets.size(); ++i) {
          if (!p.poset.is_fixed(i, h.elements())) continue;
          Mask img = 0;
          for (std::size_t x = 0; x < cls.set.size(); ++x)
            if (p.subsets[i] >> x & 1) img |= Mask{1} << q.projection[x];
          pairs.emplace_back(p.subsets[i], img);
        }
        ASSERT_EQ(pairs.size(), std::size_t{1} << q.set.size()) << name;
        for (auto& [a, ia] : pairs)
          for (auto& [b, ib] : pairs) {
            EXPECT_EQ(a == b, ia == ib);
            EXPECT_EQ(mask_subset(a, b), mask_subset(ia, ib));
          }
      }
    }
  }
}

TEST(Poset, LambdaClassifyExamples) {
  auto c2 = catalog_group("C2");
  GSet j = copies_of_free(c2, 2);
  Mask plus = Mask{1} << j.size();
  EXPECT_EQ(lambda_classify(j, plus).kind, HomotopyTypeExpr::Kind::Contractible);
  auto e = lambda_classify(j, full_mask(j.size() + 1));
  EXPECT_EQ(e.kind, HomotopyTypeExpr::Kind::WedgeOfOrbitSuspensions);
  EXPECT_EQ(e.orbit_sizes, (std::vector<std::size_t>{2, 2}));
  auto z = lambda_classify(j, 0);
  EXPECT_EQ(z.kind, HomotopyTypeExpr::Kind::JoinWithPoints);
  EXPECT_EQ(z.join_points, 0u);
}

TEST(Poset, LambdaClassifyAgreesWithNerveAndHocolim) {
  ChainComplex c({{0, 1}, {2, 2}}, {});
  auto ch = homology(c);
  for (auto name : {"C2", "S3"}) {
    auto g = catalog_group(name);
    SubgroupLattice lat(g);
    for (auto& cls : enumerate_gset_iso_classes(lat, 3, 3)) {
      auto lc = lambda_cube(cls.set, c);
      for (std::size_t u = 0; u < lc.shape.subsets.size(); ++u) {
        Mask um = lc.shape.subsets[u];
        auto predicted = lambda_classify(cls.set, um).predicted_homology(ch);
        EXPECT_EQ(homology(lc.values[u].complex), predicted) << name << " " << mask_label(lc.shape.ground, um);
        auto st = star_category(cls.set, um);
        // Reduced homology of the nerve of St(U) minus the empty set, suspended, tensor H(c).
        auto nerve = oracle::reduced_nerve_homology(st.subsets.size() - 1, [&](std::size_t a, std::size_t b) {
          return st.poset.less(a + 1, b + 1);
        });
        GradedRanks expect;
        for (auto& [p, r] : nerve)
          for (auto& [n, k] : ch) expect[p + 1 + n] += r * k;
        EXPECT_EQ(predicted, prune(expect)) << name << " " << mask_label(lc.shape.ground, um);
      }
    }
  }
}

TEST(Poset, DeloopingCoverCounts) {
  auto c2 = catalog_group("C2");
  GSet j = copies_of_free(c2, 1);
  auto dc = delooping_cover(j, 0, 1);
  ASSERT_EQ(dc.cover.pieces.size(), 3u);
  for (auto& piece : dc.cover.pieces) EXPECT_EQ(piece.size(), 4u);
  std::set<std::size_t> all;
  for (auto& piece : dc.cover.pieces) all.insert(piece.begin(), piece.end());
  EXPECT_EQ(all.size(), 7u);
  EXPECT_TRUE(validate_equivariant_cover(dc.poset, dc.cover).ok);
  auto dc2 = delooping_cover(GSet::disjoint_union(j, GSet::trivial(c2, 1)), 0, 2);
  EXPECT_TRUE(validate_equivariant_cover(dc2.poset, dc2.cover).ok) << validate_equivariant_cover(dc2.poset, dc2.cover).reason;
}

TEST(Poset, CoverValidation) {
  auto c2 = catalog_group("C2");
  GSet j = copies_of_free(c2, 1);
  auto p = power_poset(j.with_basepoint());
  std::vector<std::size_t> all(p.subsets.size());
  std::iota(all.begin(), all.end(), 0);
  EquivariantCover single{GSet::trivial(c2, 1), {all}};
  EXPECT_TRUE(validate_equivariant_cover(p.poset, single).ok);
  auto missing = all;
  missing.pop_back();
  EXPECT_FALSE(validate_equivariant_cover(p.poset, EquivariantCover{GSet::trivial(c2, 1), {missing}}).ok);
  auto soc = star_orbit_cover(copies_of_free(c2, 2));
  EXPECT_TRUE(validate_equivariant_cover(soc.star.poset, soc.cover).ok);
  // Two chains {0 < 1} and {1 < 2} cover every cover relation but not 0 < 2.
  auto chain = GPoset::plain({"0", "1", "2"}, {1, 1, 1, 0, 1, 1, 0, 0, 1});
  EXPECT_FALSE(validate_equivariant_cover(chain, EquivariantCover{GSet::trivial(FiniteGroup::trivial(), 2), {{0, 1}, {1, 2}}}).ok);
}

TEST(Poset, InvariantInitialObjects) {
  auto c2 = catalog_group("C2");
  GSet t = copies_of_free(c2, 1);
  auto p = power_poset(t);
  EXPECT_EQ(has_invariant_initial(p.poset, whole_group(c2)), std::optional<std::size_t>(0));
  // P_0(T_+) for transitive T has no invariant initial object.
  for (auto name : {"C2", "C3", "S3"}) {
    auto g = catalog_group(name);
    SubgroupLattice lat(g);
    GSet tt = GSet::coset_space(lat.subgroup(lat.trivial_index()));
    GSet tp = tt.with_basepoint();
    std::vector<Mask> nonempty;
    for (Mask s : all_subsets_of(full_mask(tp.size())))
      if (s) nonempty.push_back(s);
    auto p0 = make_subset_poset(tp, nonempty);
    EXPECT_FALSE(has_invariant_initial(p0.poset, lat.subgroup(lat.whole_index())).has_value()) << name;
  }
  // Under category V/p for J = Z/2 + point: (V, V) is an invariant initial object.
  GSet j = GSet::disjoint_union(t, GSet::trivial(c2, 1));
  GSet jp = j.with_basepoint();
  for (Mask s : outside_star(j)) {
    for (Mask v : all_subsets_of(s)) {
      auto sv = star_masks(jp, v);
      if (v == s || std::find(sv.begin(), sv.end(), v) == sv.end()) continue;
      auto cp = under_category(j, s, v);
      auto init = has_invariant_initial(cp.poset, whole_group(cp.poset.group()));
      ASSERT_TRUE(init.has_value()) << mask_label(jp, s) << " " << mask_label(jp, v);
      EXPECT_EQ(cp.objects[*init], std::make_pair(v, v));
    }
  }
}

TEST(Poset, DotIsDeterministic) {
  auto c2 = catalog_group("C2");
  auto a = power_poset(copies_of_free(c2, 1)).poset.to_dot();
  auto b = power_poset(copies_of_free(c2, 1)).poset.to_dot();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("rankdir=BT"), std::string::npos);
}
