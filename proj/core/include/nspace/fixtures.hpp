#pragma once
// Named example spaces, maps and actions used by the tests, the benchmarks
// and the `gen` command.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nspace/cubemap.hpp"
#include "nspace/dynamics.hpp"
#include "nspace/error.hpp"
#include "nspace/group.hpp"
#include "nspace/hk.hpp"

namespace nspace::fixtures {

struct SpaceFixture {
  std::string name;
  CubeSpace space;
  std::optional<int> degree;  // known nilspace degree, if any
};

struct MapFixture {
  std::string name;
  CubeMap map;
  std::optional<int> degree;  // known fibration degree, if any
};

struct ActionFixture {
  std::string name;
  FactorMap factor;
  int max_dim = 2;
};

FiniteGroup z2xz2();
/// Z_4 with G_0 = G_1 = Z_4, G_2 = {0,2}, G_3 = 1.
Filtration z4_two_step();
/// S_3 ⊇ A_3 ⊇ 1 (G_0 != G_1, so the HK space is not ergodic).
Filtration s3_a3();
FiniteGroup symmetric3();

CubeSpace d_s(const FiniteGroup& A, int s, int K, const Caps& caps = Caps::defaults());
CubeSpace heisenberg_space(std::size_t p, int K, const Caps& caps = Caps::defaults());
/// Heisenberg HK space -> its quotient by the center.
CubeMap heisenberg_central_quotient(int K, const Caps& caps = Caps::defaults());
/// All 1-cubes on three points closed under morphisms: ergodic, gluing,
/// not fibrant for K >= 2.
CubeSpace free_triangle(int K);
/// 1-cubes (0,1), (1,2) only: fails gluing.
CubeSpace path3(int K);
/// Morphism closure of a few random cubes on n points.
CubeSpace random_closure(std::size_t n, int K, std::uint64_t seed);
/// free_triangle -> point.
CubeMap broken_map(int K);

/// G acting on G/H, factoring onto G/H' for H ⊆ H'.
FactorMap coset_factor(const FiniteGroup& G, const std::vector<Elem>& H, const std::vector<Elem>& Hp);
/// Z_n rotation onto Z_d, d | n.
FactorMap rotation(std::size_t n, std::size_t d);
/// Z_2 x Z_2 acting on itself, onto the first coordinate.
FactorMap z2xz2_rotation();

std::vector<SpaceFixture> space_corpus(const Caps& caps = Caps::defaults());
std::vector<MapFixture> map_corpus(const Caps& caps = Caps::defaults());
std::vector<ActionFixture> action_corpus();

}  // namespace nspace::fixtures
