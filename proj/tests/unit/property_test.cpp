#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "nspace/cubemap.hpp"
#include "nspace/fixtures.hpp"
#include "nspace/relation.hpp"

using namespace nspace;
namespace fx = nspace::fixtures;

namespace {

constexpr int kTrials = 200;

// psi ∘ rho as cube morphisms {0,1}^k -> {0,1}^l -> {0,1}^m, computed on vertices
std::vector<std::size_t> composite_table(const CubeMorphismSpec& rho, const CubeMorphismSpec& psi) {
  std::vector<std::size_t> t(vertex_count(rho.k));
  for (std::size_t v = 0; v < t.size(); ++v) t[v] = psi.image_of(rho.image_of(v));
  return t;
}

}  // namespace

TEST(Property, MorphismPullbackIsFunctorial) {
  const std::uint64_t seed = gen::seed_from_env(101);
  gen::Rng rng(seed);
  for (int t = 0; t < kTrials; ++t) {
    int k = gen::uniform(rng, 0, 3), l = gen::uniform(rng, 0, 3), m = gen::uniform(rng, 0, 3);
    auto rho = gen::morphism(rng, k, l);
    auto psi = gen::morphism(rng, l, m);
    Configuration c = gen::configuration(rng, m, 5);
    // (c ∘ psi) ∘ rho, vertex by vertex against the composite
    Configuration lhs = apply_morphism(apply_morphism(c, psi), rho);
    auto tab = composite_table(rho, psi);
    for (std::size_t v = 0; v < tab.size(); ++v) ASSERT_EQ(lhs[v], c[tab[v]]) << "seed " << seed << " trial " << t;
  }
}

TEST(Property, ClosuresAreCubeSpaces) {
  const std::uint64_t seed = gen::seed_from_env(202);
  gen::Rng rng(seed);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 2, 5));
    int K = gen::uniform(rng, 1, 3);
    CubeSpace X = gen::closure_space(rng, n, K);
    ASSERT_TRUE(validate_cubespace(X).ok) << "seed " << seed << " trial " << t;
    // constants are cubes
    for (int k = 1; k <= K; ++k)
      for (Point p = 0; p < n; ++p) EXPECT_TRUE(X.contains(Configuration::constant(k, p)));
    // faces of cubes are cubes
    for (int k = 2; k <= K; ++k) {
      for (const auto& key : X.cubes(k)) {
        Configuration c = key.unpack(k);
        for (const auto& F : enumerate_faces_of_dim(k, k - 1)) {
          auto vs = face_vertices(k, F.fixed_mask, F.fixed_values);
          std::vector<Point> sub;
          for (auto v : vs) sub.push_back(c[v]);
          EXPECT_TRUE(X.contains(Configuration(k - 1, sub)));
        }
      }
    }
  }
}

TEST(Property, CubesAreReflectionInvariant) {
  const std::uint64_t seed = gen::seed_from_env(303);
  gen::Rng rng(seed);
  for (int t = 0; t < 20; ++t) {
    CubeSpace X = gen::closure_space(rng, 4, 3);
    for (const auto& key : X.cubes(3)) {
      Configuration c = key.unpack(3);
      int axis = gen::uniform(rng, 0, 2);
      Configuration r = c;
      for (std::size_t v = 0; v < 8; ++v) r.values[v] = c[v ^ (std::size_t{1} << axis)];
      ASSERT_TRUE(X.contains(r)) << "seed " << seed;
    }
  }
}

// Gluing (k+1)-cubes uses (k+2)-corners, so below the top dimension only.
TEST(Property, FibrantImpliesGluingOnRandomSpaces) {
  const std::uint64_t seed = gen::seed_from_env(404);
  gen::Rng rng(seed);
  int fibrant = 0;
  for (int t = 0; t < 60; ++t) {
    int K = gen::uniform(rng, 2, 3);
    CubeSpace X = gen::closure_space(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 4)), K);
    if (!is_fibrant(X).ok) continue;
    ++fibrant;
    auto w = gluing_witness(X);
    if (w) EXPECT_EQ(w->k + 2, K + 1) << "seed " << seed << " trial " << t;
  }
  EXPECT_GT(fibrant, 0);
}

TEST(Property, TopDimensionGluingIsNotForced) {
  // every square on {0,1} except the two xor squares: 2-corners all complete,
  // but (0,1,0,0) and (0,0,1,0) glue to the missing (0,1,1,0)
  std::vector<Configuration> squares;
  for (Point a = 0; a < 2; ++a)
    for (Point b = 0; b < 2; ++b)
      for (Point c = 0; c < 2; ++c)
        for (Point d = 0; d < 2; ++d)
          if (!(a == d && b == c && a != b)) squares.push_back(Configuration(2, {a, b, c, d}));
  CubeSpace X = close_under_morphisms({"0", "1"}, 2, squares);
  ASSERT_EQ(X.cubes(2).size(), 14u);
  EXPECT_TRUE(is_fibrant(X).ok);
  auto w = gluing_witness(X);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->k, 1);
}

TEST(Property, CanonicalRelationIsMonotoneAndReflexive) {
  const std::uint64_t seed = gen::seed_from_env(505);
  gen::Rng rng(seed);
  for (int t = 0; t < 30; ++t) {
    CubeSpace X = gen::closure_space(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 5)), 3);
    auto r0 = canonical_relation(X, 0), r1 = canonical_relation(X, 1), r2 = canonical_relation(X, 2);
    EXPECT_TRUE(PointRelation::diagonal(X.size()).subset_of(r2.relation));
    EXPECT_TRUE(r2.relation.subset_of(r1.relation));
    EXPECT_TRUE(r1.relation.subset_of(r0.relation));
    if (X.gluing()) EXPECT_EQ(r1.status, RelationStatus::Equivalence) << "seed " << seed << " trial " << t;
  }
}

TEST(Property, AbelianHkGroupsAreSubgroups) {
  const std::uint64_t seed = gen::seed_from_env(606);
  gen::Rng rng(seed);
  for (int t = 0; t < 10; ++t) {
    FiniteGroup A = gen::abelian_group(rng, 2, 12);
    int s = gen::uniform(rng, 1, 2);
    auto hk = hk_cube_group(Filtration::constant(A, s), 2, 1 << 20);
    std::set<CubeKey> set(hk.elements.begin(), hk.elements.end());
    for (int i = 0; i < 50; ++i) {
      const auto& x = hk.elements[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(hk.elements.size()) - 1))];
      const auto& y = hk.elements[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(hk.elements.size()) - 1))];
      CubeKey z = x;
      for (int v = 0; v < 4; ++v) z[v] = static_cast<std::uint8_t>(A.mul(x[v], A.inv(y[v])));
      EXPECT_TRUE(set.count(z)) << "seed " << seed;
    }
  }
}

TEST(Property, MorphismsComposeOnCorpus) {
  for (const auto& m : fx::map_corpus()) {
    if (!is_morphism(m.map)) continue;
    CubeMap to_pt = map_to_point(m.map.codomain);
    EXPECT_TRUE(is_morphism(compose(m.map, to_pt))) << m.name;
  }
}
