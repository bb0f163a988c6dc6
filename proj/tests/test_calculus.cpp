#include <gtest/gtest.h>

#include <set>

#include "eqcalc/calculus.hpp"
#include "oracles.hpp"

using namespace eqcalc;

TEST(Calculus, TreeExamples) {
  SubgroupLattice lat(catalog_group("C2"));
  auto t = goodwillie_tree(lat, 4, 2);
  auto find = [&](const std::string& d) {
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
      if (describe_gset(lat, t.nodes[i].set) == d) return i;
    ADD_FAILURE() << d;
    return std::size_t{0};
  };
  std::size_t free = find("G/H0"), pt = find("G/H1");
  EXPECT_TRUE(t.leq[free][pt]);
  EXPECT_FALSE(t.leq[pt][free]);
  EXPECT_NE(std::find(t.edges.begin(), t.edges.end(), std::make_pair(free, pt)), t.edges.end());
  GSet two_free = gset_from_orbit_types(lat, {0, 0});
  GSet free_pt = gset_from_orbit_types(lat, {0, 1});
  EXPECT_TRUE(tree_leq(lat, two_free, free_pt));
  EXPECT_TRUE(oracle::brute_tree_leq(two_free, free_pt));
}

TEST(Calculus, TreeOrderMatchesMapSearch) {
  for (auto name : {"C2", "C3", "V4", "S3"}) {
    SubgroupLattice lat(catalog_group(name));
    auto t = goodwillie_tree(lat, 4, 4);
    const std::size_t n = t.nodes.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        EXPECT_EQ(t.leq[a][b], oracle::brute_tree_leq(t.nodes[a].set, t.nodes[b].set)) << name << " " << a << " " << b;
        if (a != b) EXPECT_FALSE(t.leq[a][b] && t.leq[b][a]);
        for (std::size_t c = 0; c < n; ++c)
          if (t.leq[a][b] && t.leq[b][c]) EXPECT_TRUE(t.leq[a][c]);
      }
    // Edges are exactly the covers.
    std::set<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || !t.leq[a][b]) continue;
        std::size_t between = 0;
        for (std::size_t c = 0; c < n; ++c) between += c != a && c != b && t.leq[a][c] && t.leq[c][b];
        if (between == 0) covers.emplace(a, b);
      }
    std::set<std::pair<std::size_t, std::size_t>> edges(t.edges.begin(), t.edges.end());
    EXPECT_EQ(edges, covers);
  }
}

TEST(Calculus, TrivialNodesFormAChainAndFreeSetsDominate) {
  for (auto name : {"C2", "S3"}) {
    SubgroupLattice lat(catalog_group(name));
    auto t = goodwillie_tree(lat, 4, 4);
    std::vector<std::size_t> trivial;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      bool all = true;
      for (auto c : t.nodes[i].key) all = all && lat.classes()[c].front() == lat.whole_index();
      if (all) trivial.push_back(i);
    }
    ASSERT_EQ(trivial.size(), 5u);
    for (std::size_t a = 0; a < trivial.size(); ++a)
      for (std::size_t b = 0; b < trivial.size(); ++b)
        EXPECT_EQ(t.leq[trivial[a]][trivial[b]], t.nodes[trivial[a]].set.size() <= t.nodes[trivial[b]].set.size());
    for (auto& node : t.nodes) {
      GSet free = gset_from_orbit_types(lat, std::vector<std::size_t>(node.set.orbits().size(), lat.trivial_index()));
      EXPECT_TRUE(tree_leq(lat, free, node.set));
    }
  }
  auto a = goodwillie_tree(SubgroupLattice(catalog_group("C2")), 4, 4).to_dot();
  auto b = goodwillie_tree(SubgroupLattice(catalog_group("C2")), 4, 4).to_dot();
  EXPECT_EQ(a, b);
}

TEST(Calculus, RestrictionIndex) {
  for (auto name : {"C2", "C4", "V4", "S3", "D4"}) {
    SubgroupLattice lat(catalog_group(name));
    for (auto& cls : enumerate_gset_iso_classes(lat, 8, 3)) {
      const auto& j = cls.set;
      std::size_t orbits = j.orbits().size();
      // Trivial H: every union is |J/G| fixed points.
      auto triv = restriction_index(j, lat.subgroup(lat.trivial_index()));
      for (auto& u : triv.unions) EXPECT_EQ(u.size(), orbits);
      std::size_t expect = 1;
      for (auto& o : j.orbits()) expect *= o.size();
      EXPECT_EQ(triv.choices.size(), expect);
      for (std::size_t h = 0; h < lat.size(); ++h) {
        auto ri = restriction_index(j, lat.subgroup(h));
        for (auto& u : ri.unions) EXPECT_EQ(u.orbits().size(), orbits);
        if (orbits == 1) {
          EXPECT_EQ(ri.choices.size(), restrict_to(j, lat.subgroup(h)).orbits().size());
          for (std::size_t c = 0; c < ri.choices.size(); ++c) EXPECT_EQ(ri.unions[c].size(), ri.h_orbits[0][c].size());
        }
      }
    }
    // J = n free orbits: every union is n free H-orbits.
    GSet nfree = gset_from_orbit_types(lat, {0, 0});
    for (std::size_t h = 0; h < lat.size(); ++h) {
      auto emb = as_group(lat.subgroup(h));
      SubgroupLattice hl(emb.group);
      GSet target = gset_from_orbit_types(hl, {0, 0});
      auto ri = restriction_index(nfree, lat.subgroup(h));
      std::size_t index = lat.group().order() / lat.subgroup(h).order();
      EXPECT_EQ(ri.choices.size(), index * index);
      for (auto& u : ri.unions) EXPECT_TRUE(isomorphic(hl, u, target));
    }
  }
}

TEST(Calculus, TrivialityPredicate) {
  SubgroupLattice lat(catalog_group("C2"));
  const auto& g = lat.subgroup(lat.whole_index());
  GSet free = GSet::coset_space(lat.subgroup(lat.trivial_index()));
  EXPECT_TRUE(png_triviality(free, g, 1));
  EXPECT_FALSE(png_triviality(free, g, 2));
  GSet two = GSet::trivial(lat.group(), 2);
  EXPECT_TRUE(png_triviality(two, g, 1));
  EXPECT_FALSE(png_triviality(two, g, 2));
  EXPECT_EQ(connectivity_estimate(free, 1, 3).increment, 1);
  EXPECT_TRUE(connectivity_estimate(free, 1, 3).diverges);
  EXPECT_LE(connectivity_estimate(free, 2, 3).increment, 0);
}

TEST(Calculus, TrivialityMatchesConnectivity) {
  for (auto& name : catalog_names()) {
    SubgroupLattice lat(catalog_group(name));
    const auto& g = lat.subgroup(lat.whole_index());
    for (auto& cls : enumerate_gset_iso_classes(lat, 4)) {
      if (cls.set.size() == 0) continue;
      for (std::size_t n = 1; n <= 4; ++n) {
        auto e = connectivity_estimate(cls.set, n, 1);
        EXPECT_EQ(png_triviality(cls.set, g, n), e.increment >= 1) << name << " n=" << n;
        long long orbits = static_cast<long long>(cls.set.orbits().size());
        long long size = static_cast<long long>(cls.set.size());
        long long nn = static_cast<long long>(n);
        EXPECT_EQ(e.increment, std::min(orbits - nn + 1, size - nn));
      }
    }
  }
}

TEST(Calculus, SymmetricPowerTower) {
  SubgroupLattice lat(catalog_group("C2"));
  GSet regular = GSet::coset_space(lat.subgroup(lat.trivial_index()));
  auto r = family_RK(lat, regular);
  auto t = symmetric_power_tower(2, r);
  ASSERT_EQ(t.stages.size(), 2u);
  EXPECT_TRUE(truncate_family(r, 1).empty());
  EXPECT_EQ(t.stages[1].below.size(), 1u);
  EXPECT_EQ(t.stabilization, 2u);
  auto empty = symmetric_power_tower(3, FamilySet{3, {}});
  for (auto& s : empty.stages) {
    EXPECT_TRUE(s.below.empty());
    EXPECT_TRUE(s.layer.empty());
    EXPECT_TRUE(s.excisive.empty());
  }
  for (auto name : {"C2", "C3", "S3", "V4"}) {
    SubgroupLattice l(catalog_group(name));
    for (auto& cls : enumerate_gset_iso_classes(l, 4, 4)) {
      if (cls.set.size() == 0) continue;
      auto rk = family_RK(l, cls.set);
      auto tw = symmetric_power_tower(cls.set.size(), rk);
      EXPECT_LE(tw.stabilization, cls.set.size());
      for (std::size_t i = 1; i < tw.stages.size(); ++i)
        for (auto& m : tw.stages[i - 1].below.members) EXPECT_TRUE(tw.stages[i].below.contains(m));
    }
  }
}

TEST(Calculus, TomDieck) {
  SubgroupLattice c2(catalog_group("C2"));
  auto d = tomdieck_summands(c2, TomDieckMode::AbelianNormal);
  ASSERT_EQ(d.summands.size(), 2u);
  EXPECT_EQ(d.summands[0].aux_name, "C2");
  EXPECT_EQ(d.summands[1].aux_name, "C1");
  SubgroupLattice s3(catalog_group("S3"));
  auto c = tomdieck_summands(s3, TomDieckMode::Conjugacy);
  EXPECT_EQ(c.summands.size(), 4u);
  for (auto& s : c.summands) {
    std::size_t n = s3.subgroup(s3.normalizer(s.subgroup)).order();
    EXPECT_EQ(s.aux.order(), n / s3.subgroup(s.subgroup).order());
  }
  EXPECT_THROW(tomdieck_summands(s3, TomDieckMode::AbelianNormal), PreconditionError);
  EXPECT_EQ(tomdieck_summands(SubgroupLattice(FiniteGroup::trivial()), TomDieckMode::Conjugacy).summands.size(), 1u);
}

TEST(Calculus, HigherTomDieck) {
  SubgroupLattice c2(catalog_group("C2"));
  auto d2 = higher_tomdieck_summands(c2, 2);
  ASSERT_EQ(d2.summands.size(), 2u);
  EXPECT_EQ(d2.summands[0].subgroup, c2.trivial_index());
  EXPECT_EQ(d2.summands[0].k, 2u);
  EXPECT_EQ(d2.summands[0].classes, 2u);
  EXPECT_EQ(d2.summands[1].subgroup, c2.whole_index());
  EXPECT_EQ(d2.summands[1].k, 2u);
  EXPECT_EQ(d2.summands[1].classes, 1u);
  auto d1 = higher_tomdieck_summands(c2, 1);
  ASSERT_EQ(d1.summands.size(), 2u);
  for (auto& s : d1.summands) EXPECT_EQ(s.k, 1u);
  SubgroupLattice triv(FiniteGroup::trivial());
  for (std::size_t n = 1; n <= 4; ++n) {
    auto t = higher_tomdieck_summands(triv, n);
    ASSERT_EQ(t.summands.size(), 1u);
    EXPECT_EQ(t.summands[0].k, n);
    EXPECT_EQ(t.summands[0].classes, 1u);
  }
  for (auto name : {"C3", "V4", "S3", "C4"}) {
    SubgroupLattice lat(catalog_group(name));
    auto h1 = higher_tomdieck_summands(lat, 1);
    std::set<std::size_t> hs;
    for (auto& s : h1.summands) hs.insert(s.subgroup);
    auto normal = lat.normal_indices();
    EXPECT_EQ(hs, std::set<std::size_t>(normal.begin(), normal.end())) << name;
    for (std::size_t n = 1; n <= 2; ++n) {
      auto hd = higher_tomdieck_summands(lat, n);
      for (std::size_t k = n; k <= n * lat.group().order() && k <= 6; ++k) {
        std::size_t total = 0;
        for (auto& s : hd.summands)
          if (s.k == k) total += s.classes;
        EXPECT_EQ(total, family_Fk_n(lat, k, n).size()) << name << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Calculus, IdentityLayers) {
  SubgroupLattice c2(catalog_group("C2"));
  auto l1 = identity_layer_descriptor(c2, 1);
  ASSERT_EQ(l1.entries.size(), 2u);
  EXPECT_FALSE(l1.entries[0].family.empty());
  EXPECT_TRUE(l1.entries[1].family.empty());
  auto l2 = identity_layer_descriptor(c2, 2);
  ASSERT_EQ(l2.entries.size(), 3u);
  EXPECT_FALSE(l2.entries[0].family.empty());
  EXPECT_TRUE(l2.entries[1].family.empty());
  EXPECT_TRUE(l2.entries[2].family.empty());
  for (auto& [h, idx] : l2.entries[0].index)
    if (h == c2.whole_index()) {
      ASSERT_EQ(idx.size(), 2u);
      EXPECT_EQ(idx[0].aut_order, 2);
      EXPECT_EQ(idx[1].aut_order, 2);
    }
  SubgroupLattice triv(FiniteGroup::trivial());
  for (std::size_t n = 1; n <= 5; ++n) {
    auto l = identity_layer_descriptor(triv, n);
    ASSERT_EQ(l.entries.size(), 1u);
    EXPECT_EQ(l.entries[0].family.size(), 1u);
    EXPECT_TRUE(l.entries[0].family.members[0].is_trivial_action());
    ASSERT_TRUE(l.entries[0].t_ranks.has_value());
    EXPECT_EQ(*l.entries[0].t_ranks, (GradedRanks{{static_cast<int>(n) - 1, oracle::factorial(n - 1)}}));
  }
  EXPECT_TRUE(identity_layer_descriptor(SubgroupLattice(catalog_group("C4")), 2).partial);
}
