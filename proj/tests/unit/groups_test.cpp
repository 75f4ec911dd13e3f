#include <gtest/gtest.h>

#include <set>

#include "nspace/fixtures.hpp"
#include "nspace/hk.hpp"
#include "nspace/structure.hpp"
#include "oracles.hpp"

using namespace nspace;

namespace {

// Brute-force D_s(A) membership for A = Z_n: every (s+1)-face has
// alternating sum 0.
bool d_s_brute(std::size_t n, int s, int k, const std::vector<Point>& t) {
  if (k <= s) return true;
  for (const Face& F : enumerate_faces_of_dim(k, s + 1)) {
    auto vs = face_vertices(k, F.fixed_mask, F.fixed_values);
    long sum = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) sum += (popcount(i) % 2 ? -1L : 1L) * static_cast<long>(t[vs[i]]);
    if (((sum % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n) != 0) return false;
  }
  return true;
}

std::size_t brute_count(std::size_t n, int s, int k) {
  std::size_t nv = vertex_count(k), total = 1, count = 0;
  for (std::size_t i = 0; i < nv; ++i) total *= n;
  std::vector<Point> t(nv);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& v : t) {
      v = static_cast<Point>(c % n);
      c /= n;
    }
    count += d_s_brute(n, s, k, t);
  }
  return count;
}

}  // namespace

TEST(Group, Constructors) {
  EXPECT_EQ(FiniteGroup::cyclic(5).order(), 5u);
  EXPECT_EQ(FiniteGroup::dihedral(4).order(), 8u);
  EXPECT_FALSE(FiniteGroup::dihedral(3).is_abelian());
  EXPECT_EQ(FiniteGroup::quaternion().order(), 8u);
  EXPECT_EQ(FiniteGroup::quaternion().center().size(), 2u);
  FiniteGroup H = FiniteGroup::heisenberg(2);
  EXPECT_EQ(H.order(), oracle::kHeisenbergOrder);
  EXPECT_EQ(H.center().size(), oracle::kHeisenbergCenter);
  EXPECT_EQ(FiniteGroup::heisenberg(3).order(), 27u);
}

TEST(Group, NonAssociativeTableNamesATriple) {
  // a Latin square with identity 0 that is not associative
  std::vector<std::vector<Elem>> t = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    FiniteGroup::from_table({"e", "a", "b", "c", "d"}, t);
    FAIL() << "accepted a non-associative table";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("associativ"), std::string::npos) << e.what();
  }
}

TEST(Group, LowerCentralAndInvariants) {
  FiniteGroup H = FiniteGroup::heisenberg(2);
  auto lcs = H.lower_central_series();
  ASSERT_GE(lcs.size(), 2u);
  EXPECT_EQ(lcs[1], H.center());
  EXPECT_EQ(abelian_invariants(fixtures::z2xz2()), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(abelian_invariants(FiniteGroup::cyclic(6)), (std::vector<std::size_t>{6}));
  EXPECT_EQ(abelian_type_string(abelian_invariants(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)))),
            "Z2xZ4");
  EXPECT_THROW(abelian_invariants(FiniteGroup::dihedral(3)), InvalidInput);
}

TEST(Filtration, Validation) {
  FiniteGroup Z4 = FiniteGroup::cyclic(4);
  EXPECT_NO_THROW(fixtures::z4_two_step());
  EXPECT_THROW(Filtration(Z4, {{0, 1, 2, 3}, {0, 2}, {0, 1, 2, 3}, {0}}), InvalidInput);  // not nested
  EXPECT_THROW(Filtration(Z4, {{0, 2}, {0}}), InvalidInput);                             // G_0 != G
  // S3 with G_1 = S3, G_2 = 1 breaks [G_1, G_1] ⊆ G_2
  FiniteGroup S3 = fixtures::symmetric3();
  EXPECT_THROW(Filtration(S3, {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}, {0}}), InvalidInput);
  EXPECT_EQ(Filtration::lower_central(FiniteGroup::heisenberg(2)).degree(), 2);
}

TEST(HK, SmallCubeGroups) {
  Filtration F = Filtration::constant(FiniteGroup::cyclic(2), 1);
  EXPECT_EQ(hk_cube_group(F, 1, 1 << 20).elements.size(), oracle::kHkZ2K1);
  auto g2 = hk_cube_group(F, 2, 1 << 20);
  EXPECT_EQ(g2.elements.size(), oracle::kHkZ2K2);
  for (const auto& t : g2.elements) EXPECT_EQ((t[0] + t[1] + t[2] + t[3]) % 2, 0);
}

TEST(HK, HeisenbergCounts) {
  Filtration F = Filtration::lower_central(FiniteGroup::heisenberg(2));
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(hk_cube_group(F, k, 1 << 20).elements.size(), oracle::kHeisenbergHk[k]) << k;
}

TEST(HK, DsMatchesBruteForce) {
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int s = 0; s <= 2; ++s) {
      CubeSpace X = d_s_cubespace(FiniteGroup::cyclic(n), s, 3, 1 << 20);
      for (int k = 1; k <= 3; ++k) {
        EXPECT_EQ(X.cubes(k).size(), brute_count(n, s, k)) << "n=" << n << " s=" << s << " k=" << k;
        std::size_t expect = 1;
        for (std::size_t i = 0; i < d_s_exponent(s, k); ++i) expect *= n;
        EXPECT_EQ(X.cubes(k).size(), expect);
      }
    }
  }
}

TEST(HK, OneFiltrationIsTheAlternatingKernel) {
  // k = s+1 = 2, every abelian group of order <= 8
  std::vector<FiniteGroup> groups;
  for (std::size_t n = 2; n <= 8; ++n) groups.push_back(FiniteGroup::cyclic(n));
  groups.push_back(fixtures::z2xz2());
  groups.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)));
  groups.push_back(FiniteGroup::direct_product(fixtures::z2xz2(), FiniteGroup::cyclic(2)));
  for (const auto& A : groups) {
    auto hk = hk_cube_group(Filtration::constant(A, 1), 2, 1 << 20);
    std::set<CubeKey> got(hk.elements.begin(), hk.elements.end());
    std::size_t kernel = 0;
    for (Elem a = 0; a < A.order(); ++a)
      for (Elem b = 0; b < A.order(); ++b)
        for (Elem c = 0; c < A.order(); ++c)
          for (Elem d = 0; d < A.order(); ++d) {
            // a - b - c + d = 0
            if (A.mul(A.mul(a, A.inv(b)), A.mul(A.inv(c), d)) != A.identity()) continue;
            ++kernel;
            EXPECT_TRUE(got.count(CubeKey::pack(Configuration(2, {a, b, c, d}))));
          }
    EXPECT_EQ(got.size(), kernel);
  }
}

TEST(HK, SymmetricUnderReflections) {
  Filtration F = Filtration::lower_central(FiniteGroup::dihedral(4));
  auto hk = hk_cube_group(F, 2, 1 << 20);
  std::set<CubeKey> set(hk.elements.begin(), hk.elements.end());
  for (const auto& t : hk.elements) {
    CubeKey swap = t, flip = t;
    std::swap(swap[1], swap[2]);
    std::swap(flip[0], flip[1]);
    std::swap(flip[2], flip[3]);
    EXPECT_TRUE(set.count(swap));
    EXPECT_TRUE(set.count(flip));
  }
}

TEST(HK, SpacesAreGluingNilspaces) {
  CubeSpace H = fixtures::heisenberg_space(2, 3);
  EXPECT_TRUE(validate_cubespace(H).ok);
  EXPECT_TRUE(H.gluing());
  EXPECT_TRUE(is_ergodic(H));
  EXPECT_FALSE(is_ergodic(hk_cubespace(fixtures::s3_a3(), 2, 1 << 20)));
  CubeSpace D = d_s_cubespace(FiniteGroup::cyclic(2), 1, 2, 1 << 20);
  EXPECT_EQ(D, hk_cubespace(Filtration::constant(FiniteGroup::cyclic(2), 1), 2, 1 << 20));
}

TEST(HK, CentralQuotient) {
  Filtration F = Filtration::lower_central(FiniteGroup::heisenberg(2));
  auto q = hk_quotient_cubespace(F, F.group().center(), 3, 1 << 20);
  EXPECT_EQ(q.space.size(), 4u);
  CubeSpace target = hk_cubespace(Filtration::constant(fixtures::z2xz2(), 1), 3, 1 << 20);
  EXPECT_EQ(find_isomorphism(q.space, target).status, SearchStatus::Found);
  auto cert = is_fibration(fixtures::heisenberg_central_quotient(3));
  EXPECT_TRUE(cert.fibration);
  ASSERT_TRUE(cert.degree.has_value());
  EXPECT_LE(*cert.degree, 2);
}

TEST(HK, RejectsNonSubgroup) {
  Filtration F = Filtration::lower_central(FiniteGroup::heisenberg(2));
  EXPECT_THROW(hk_quotient_cubespace(F, {0, 1, 2}, 2, 1 << 20), InvalidInput);
}
