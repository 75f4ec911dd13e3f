#include <gtest/gtest.h>

#include "nspace/fixtures.hpp"
#include "nspace/hk.hpp"
#include "nspace/relation.hpp"
#include "oracles.hpp"

using namespace nspace;
namespace fx = nspace::fixtures;

namespace {
constexpr std::size_t kMax = 1 << 20;

std::size_t class_count(const PointRelation& R) {
  auto c = class_index(R);
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}
}  // namespace

TEST(Relation, Closure) {
  PointRelation R(4);
  R.add(0, 1);
  R.add(1, 2);
  EXPECT_FALSE(is_equivalence(R));
  auto w = equivalence_witness(R);
  ASSERT_TRUE(w.has_value());
  PointRelation C = close_relation(R);
  EXPECT_TRUE(is_equivalence(C));
  EXPECT_TRUE(C.contains(2, 0));
  EXPECT_FALSE(C.contains(0, 3));
  EXPECT_EQ(class_count(C), 2u);
}

TEST(Canonical, D1Z2IsDiagonalAtOne) {
  CubeSpace X = fx::d_s(FiniteGroup::cyclic(2), 1, 3);
  auto r = canonical_relation(X, 1);
  EXPECT_EQ(r.status, RelationStatus::Equivalence);
  EXPECT_EQ(r.relation, PointRelation::diagonal(2));
  EXPECT_EQ(canonical_relation(X, 0).relation, PointRelation::full(2));
}

TEST(Canonical, HeisenbergClassesAreCentralCosets) {
  CubeSpace X = fx::heisenberg_space(2, 3);
  FiniteGroup H = FiniteGroup::heisenberg(2);
  auto r = canonical_relation(X, 1);
  ASSERT_EQ(r.status, RelationStatus::Equivalence);
  EXPECT_EQ(class_count(r.relation), oracle::kHeisenbergTildeOneClasses);
  auto pt = hk_points(H);
  auto Z = H.center();
  for (Elem g = 0; g < H.order(); ++g) {
    for (Elem h = 0; h < H.order(); ++h) {
      bool same_coset = std::find(Z.begin(), Z.end(), H.mul(H.inv(g), h)) != Z.end();
      EXPECT_EQ(r.relation.contains(pt[g], pt[h]), same_coset);
    }
  }
  auto q = quotient_cubespace(X, r.relation);
  CubeSpace V = hk_cubespace(Filtration::constant(fx::z2xz2(), 1), 3, kMax);
  EXPECT_EQ(find_isomorphism(q.quotient, V).status, SearchStatus::Found);
}

TEST(Canonical, DsBelowDegreeIsFull) {
  CubeSpace X = fx::d_s(FiniteGroup::cyclic(4), 2, 3);
  EXPECT_EQ(canonical_relation(X, 1).relation, PointRelation::full(4));
  EXPECT_EQ(canonical_relation(X, 2).relation, PointRelation::diagonal(4));
}

TEST(Canonical, RelativeZeroOnRotation) {
  CubeMap f = fx::rotation(4, 2).as_cubemap(3, kMax);
  auto r = relative_canonical_relation(f, 0);
  EXPECT_EQ(r.relation.pair_count(), oracle::kZ4RelTildeZeroPairs);
  for (Point x = 0; x < 4; ++x)
    for (Point y = 0; y < 4; ++y) EXPECT_EQ(r.relation.contains(x, y), f.assign[x] == f.assign[y]);
}

TEST(Canonical, MonotoneInK) {
  for (const auto& f : fx::space_corpus()) {
    if (!f.space.gluing() || f.space.size() > 32) continue;
    for (int k = 1; k + 1 <= f.space.max_dim(); ++k) {
      EXPECT_TRUE(canonical_relation(f.space, k).relation.subset_of(canonical_relation(f.space, k - 1).relation)) << f.name;
    }
  }
}

TEST(Canonical, EquivalenceOnGluingSpaces) {
  for (const auto& f : fx::space_corpus()) {
    if (!f.space.gluing() || f.space.size() > 32) continue;
    for (int k = 0; k + 1 <= f.space.max_dim(); ++k) {
      EXPECT_EQ(canonical_relation(f.space, k).status, RelationStatus::Equivalence) << f.name << " k=" << k;
    }
  }
  auto raw = canonical_relation(fx::path3(2), 0);
  EXPECT_FALSE(raw.gluing);
}

TEST(Quotient, ProjectionIsAFibration) {
  for (const auto& f : fx::space_corpus()) {
    if (!f.space.gluing() || f.space.size() > 16 || !is_fibrant(f.space).ok) continue;
    for (int s = 0; s + 1 <= f.space.max_dim(); ++s) {
      auto q = quotient_cubespace(f.space, canonical_relation(f.space, s).relation);
      EXPECT_TRUE(is_fibration(q.map()).fibration) << f.name << " s=" << s;
    }
  }
}

TEST(Quotient, RejectsNonEquivalence) {
  PointRelation R(2);
  R.add(0, 1);
  EXPECT_THROW(quotient_cubespace(fx::d_s(FiniteGroup::cyclic(2), 1, 2), R), InvalidInput);
}

TEST(Urp, Nilspaces) {
  EXPECT_TRUE(urp_check(fx::d_s(FiniteGroup::cyclic(2), 1, 3), 1).ok);
  EXPECT_TRUE(urp_check(fx::heisenberg_space(2, 3), 2).ok);
}

TEST(MaximalFibration, HeisenbergOverPoint) {
  auto m = maximal_s_fibration(map_to_point(fx::heisenberg_space(2, 3)), 1);
  EXPECT_EQ(m.quotient.quotient.size(), 4u);
  EXPECT_TRUE(m.projection_fibration);
  EXPECT_TRUE(m.induced_s_fibration);
}

TEST(Dynamics, RotationCubes) {
  FactorMap pi = fx::rotation(4, 2);
  CubeSpace X = dynamical_cubes(pi.domain, 2, kMax);
  EXPECT_EQ(X.cubes(1).size(), 16u);
  EXPECT_TRUE(is_ergodic(X));
  CubeSpace V = dynamical_cubes(fx::z2xz2_rotation().domain, 3, kMax);
  CubeSpace H = hk_cubespace(Filtration::constant(fx::z2xz2(), 1), 3, kMax);
  EXPECT_EQ(find_isomorphism(V, H).status, SearchStatus::Found);
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(V.cubes(k).size(), H.cubes(k).size());
}

TEST(Dynamics, Minimality) {
  // Z4 acting on Z4 x Z2 by (+1,+1): two orbits of size 4
  std::vector<std::string> pts;
  Perm g(8);
  for (Point a = 0; a < 4; ++a)
    for (Point b = 0; b < 2; ++b) {
      pts.push_back(std::to_string(a) + std::to_string(b));
      g[a * 2 + b] = ((a + 1) % 4) * 2 + (b + 1) % 2;
    }
  EXPECT_FALSE(is_minimal(GroupAction(pts, {"t"}, {g})));
  // Z4 x Z2 acting by the two generators separately is minimal
  Perm h(8);
  for (Point a = 0; a < 4; ++a)
    for (Point b = 0; b < 2; ++b) h[a * 2 + b] = a * 2 + (b + 1) % 2;
  EXPECT_TRUE(is_minimal(GroupAction(pts, {"t", "u"}, {g, h})));
}

TEST(Dynamics, Nrp) {
  FactorMap pi = fx::rotation(4, 2);
  EXPECT_EQ(nrp_relation(pi.domain, 1, kMax), PointRelation::diagonal(4));
  EXPECT_EQ(nrp_relation(pi.domain, 0, kMax), PointRelation::full(4));
  EXPECT_EQ(relative_nrp(pi, 1, kMax), PointRelation::diagonal(4));
}

TEST(Dynamics, AbelianRegularActionsAreDistal) {
  for (std::size_t n : {2u, 3u, 5u, 6u, 8u}) {
    GroupAction S = GroupAction::regular(FiniteGroup::cyclic(n), {1});
    for (int k = 1; k <= 2; ++k) EXPECT_EQ(nrp_relation(S, k, kMax), PointRelation::diagonal(n)) << n;
  }
}

TEST(Dynamics, GroupExtension) {
  FactorMap pi = fx::rotation(4, 2);
  auto v = group_extension_check(pi, {{2, 3, 0, 1}}, 3, kMax);
  EXPECT_TRUE(v.group_extension);
  EXPECT_TRUE(v.principal_abelian);
  // X -> point with K generated by +2: not transitive on X
  const auto& names = pi.domain.generator_names();
  GroupAction pt({"*"}, names, std::vector<Perm>(names.size(), Perm{0}));
  FactorMap collapse(pi.domain, pt, {0, 0, 0, 0});
  auto w = group_extension_check(collapse, {{2, 3, 0, 1}}, 3, kMax);
  EXPECT_FALSE(w.group_extension);
  ASSERT_TRUE(w.witness.has_value());
}

TEST(Dynamics, FactorMapValidation) {
  FactorMap pi = fx::rotation(4, 2);
  EXPECT_THROW(FactorMap(pi.domain, pi.codomain, {0, 0, 0, 0}), InvalidInput);  // not surjective
  EXPECT_THROW(FactorMap(pi.domain, pi.codomain, {0, 0, 1, 1}), InvalidInput);  // not equivariant
}

TEST(Fibration, Examples) {
  EXPECT_TRUE(is_fibration(fx::rotation(4, 2).as_cubemap(3, kMax)).fibration);
  auto broken = is_fibration(fx::broken_map(3));
  EXPECT_FALSE(broken.fibration);
  ASSERT_TRUE(broken.witness.has_value());
  CubeMap q = fx::heisenberg_central_quotient(3);
  for (Point y = 0; y < q.codomain.size(); ++y) EXPECT_EQ(fiber_points(q, y).size(), 2u);
  EXPECT_EQ(find_isomorphism(fiber_subcubespace(q, 0), fiber_subcubespace(q, 1)).status, SearchStatus::Found);
}

TEST(Fibration, RelativeErgodicityIsMonotone) {
  for (const auto& m : fx::map_corpus()) {
    for (int k = m.map.domain.max_dim(); k >= 1; --k) {
      if (!is_relatively_k_ergodic(m.map, k)) continue;
      for (int l = 0; l <= k; ++l) EXPECT_TRUE(is_relatively_k_ergodic(m.map, l)) << m.name << " " << k << " " << l;
      break;
    }
  }
}

TEST(Fibration, CompositionAndUniversalProperty) {
  CubeMap q = fx::heisenberg_central_quotient(3);
  CubeMap to_pt = map_to_point(q.codomain);
  auto v = universal_property_check(q, to_pt);
  EXPECT_TRUE(v.consistent);
  EXPECT_TRUE(v.f_fibration && v.g_fibration && v.gf_fibration);
  EXPECT_TRUE(is_fibration(compose(q, to_pt)).fibration);
}
