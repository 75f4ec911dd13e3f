#include <gtest/gtest.h>

#include "generators.hpp"
#include "nspace/cocycle.hpp"
#include "nspace/fixtures.hpp"
#include "nspace/modular.hpp"
#include "nspace/translation.hpp"

using namespace nspace;
namespace fx = nspace::fixtures;

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

std::int64_t mod(std::int64_t a, std::int64_t q) { return ((a % q) + q) % q; }

bool brute_solvable(const Matrix& A, const std::vector<std::int64_t>& b, std::int64_t q, std::size_t n) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(q);
  std::vector<std::int64_t> x(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& v : x) {
      v = static_cast<std::int64_t>(c % static_cast<std::size_t>(q));
      c /= static_cast<std::size_t>(q);
    }
    bool ok = true;
    for (std::size_t r = 0; r < A.size() && ok; ++r) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s += A[r][j] * x[j];
      ok = mod(s - b[r], q) == 0;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST(Modular, PrimePower) {
  EXPECT_EQ(prime_power(8), (std::pair<std::int64_t, int>{2, 3}));
  EXPECT_EQ(prime_power(9), (std::pair<std::int64_t, int>{3, 2}));
  EXPECT_EQ(prime_power(7), (std::pair<std::int64_t, int>{7, 1}));
  EXPECT_FALSE(prime_power(12).has_value());
  EXPECT_FALSE(prime_power(1).has_value());
}

TEST(Modular, AgreesWithBruteForce) {
  gen::Rng rng(gen::seed_from_env(17));
  const std::pair<std::int64_t, int> moduli[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}};
  for (auto [p, e] : moduli) {
    std::int64_t q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t rows = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
      std::size_t cols = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
      Matrix A(rows, std::vector<std::int64_t>(cols));
      std::vector<std::int64_t> b(rows);
      for (auto& row : A)
        for (auto& a : row) a = gen::uniform(rng, -2, static_cast<int>(q));
      for (auto& v : b) v = gen::uniform(rng, 0, static_cast<int>(q) - 1);
      auto sol = solve_mod_prime_power(A, b, p, e);
      bool brute = brute_solvable(A, b, q, cols);
      EXPECT_EQ(sol.x.has_value(), brute) << "q=" << q << " trial " << trial;
      if (sol.x) {
        for (std::size_t r = 0; r < rows; ++r) {
          std::int64_t s = 0;
          for (std::size_t j = 0; j < cols; ++j) s += A[r][j] * (*sol.x)[j];
          EXPECT_EQ(mod(s - b[r], q), 0);
        }
      } else {
        EXPECT_TRUE(check_obstruction(A, b, q, sol.obstruction));
      }
    }
  }
}

TEST(Modular, KnownObstruction) {
  // 2x = 1 mod 4
  auto sol = solve_mod_prime_power({{2}}, {1}, 2, 2);
  EXPECT_FALSE(sol.x.has_value());
  EXPECT_TRUE(check_obstruction({{2}}, {1}, 4, sol.obstruction));
  EXPECT_FALSE(check_obstruction({{2}}, {1}, 4, {{0, 1}}));
}

TEST(Cocycle, CoboundariesAreCocyclesAndSolve) {
  gen::Rng rng(gen::seed_from_env(29));
  CubeMap f = map_to_point(fx::d_s(FiniteGroup::cyclic(2), 1, 3));
  for (int k = 1; k <= 2; ++k) {
    FiberCubeSet S = fiber_cubes(f, k);
    for (const FiniteGroup& A : {FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), fx::z2xz2()}) {
      for (int t = 0; t < 10; ++t) {
        Cochain h(f.domain.size());
        for (auto& v : h) v = static_cast<Elem>(gen::uniform(rng, 0, static_cast<int>(A.order()) - 1));
        FiberCocycle rho = coboundary(S, A, h);
        EXPECT_TRUE(is_fiber_cocycle(rho));
        auto sol = solve_coboundary(rho);
        ASSERT_TRUE(sol.h.has_value());
        EXPECT_EQ(coboundary(S, A, *sol.h).values, rho.values);
      }
    }
  }
}

TEST(Cocycle, PerturbedCocycleIsCaught) {
  CubeMap f = map_to_point(fx::d_s(FiniteGroup::cyclic(3), 1, 3));
  FiberCubeSet S = fiber_cubes(f, 1);
  FiniteGroup A = FiniteGroup::cyclic(2);
  FiberCocycle rho = coboundary(S, A, Cochain(f.domain.size(), 0));
  rho.values[1] = A.mul(rho.values[1], 1);
  auto w = cocycle_witness(rho);
  auto sol = solve_coboundary(rho);
  EXPECT_FALSE(sol.h.has_value());
  // one of the two detectors must explain the failure
  if (sol.certificate) EXPECT_TRUE(verify_certificate(rho, *sol.certificate));
  EXPECT_TRUE(w.has_value() || sol.certificate.has_value());
}

TEST(Cocycle, RejectsNonAbelianTarget) {
  CubeMap f = map_to_point(fx::d_s(FiniteGroup::cyclic(2), 1, 3));
  FiberCubeSet S = fiber_cubes(f, 1);
  FiberCocycle rho = coboundary(S, FiniteGroup::cyclic(2), Cochain(2, 0));
  rho.target = fx::symmetric3();
  rho.values.assign(rho.values.size(), 0);
  EXPECT_THROW(solve_coboundary(rho), InvalidInput);
}

TEST(Discrepancy, SingleVertexMoves) {
  CubeMap q = fx::heisenberg_central_quotient(3);
  LevelData L = level_data(q, 2);
  ASSERT_EQ(L.A.group.order(), 2u);
  const Elem a = 1;
  int seen = 0;
  for (const auto& key : L.g.domain.cubes(3)) {
    Configuration c = key.unpack(3);
    EXPECT_EQ(discrepancy(L, c), L.A.group.identity());
    Configuration one = c;
    one.values[0] = L.A.action[a][one[0]];
    Elem d = discrepancy(L, one);
    EXPECT_TRUE(d == a || d == L.A.group.inv(a));
    Configuration two = one;
    two.values[1] = L.A.action[a][two[1]];  // odd vertex cancels the even one
    EXPECT_EQ(discrepancy(L, two), L.A.group.identity());
    for (Elem e : discrepancy_all_bases(L, one)) EXPECT_EQ(e, d);
    if (++seen == 64) break;
  }
}

TEST(Repair, IdentityLiftNeedsNoRepair) {
  CubeMap g = map_to_point(fx::heisenberg_space(2, 3));
  LevelData L = level_data(g, 2);
  Perm id(g.domain.size());
  for (Point p = 0; p < id.size(); ++p) id[p] = p;
  auto r = repair_lift(L, id, 1);
  EXPECT_TRUE(r.repaired);
  EXPECT_TRUE(is_k_translation(g, r.repaired_map, 1).direct);
}
