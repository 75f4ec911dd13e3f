#pragma once
// Frozen expected values. Comments give the hand computation behind each.

#include <cstddef>

namespace oracle {

// cube morphisms {0,1}^k -> {0,1}^l: each output coordinate is 0, 1, w_i or 1 - w_i
constexpr std::size_t morphisms(int k, int l) {
  std::size_t r = 1;
  for (int i = 0; i < l; ++i) r *= static_cast<std::size_t>(2 * k + 2);
  return r;
}
static_assert(morphisms(1, 1) == 4);
static_assert(morphisms(2, 1) == 6);

// (a,b) pulled back along w -> w_1: vertices 00,10,01,11 read a,b,a,b
inline constexpr int kPullback[4] = {0, 1, 0, 1};
// concatenate (a,b),(c,d) along axis 1 -> (a,c,b,d)
inline constexpr int kConcat[4] = {0, 2, 1, 3};
// generalized l-corner of (a,b),(c,d): (c,d) sits on the vertices (w, 1, ..., 1)
//   l=1 -> (a,b,c,d), l=2 -> (a,b,a,b,a,b,c,d)
inline constexpr int kCorner1[4] = {0, 1, 2, 3};
inline constexpr int kCorner2[8] = {0, 1, 0, 1, 0, 1, 2, 3};

// D_1(Z2) x D_1(Z2): 4 points, all 16 pairs are 1-cubes
inline constexpr std::size_t kProductD1Z2OneCubes = 16;

// HK^k of Z2 with the 1-filtration: 2^(1+k) tuples
inline constexpr std::size_t kHkZ2K1 = 4;
inline constexpr std::size_t kHkZ2K2 = 8;

// Heisenberg mod 2: order 8, center {(0,0,c)} of order 2, H/Z ≅ Z2 x Z2
inline constexpr std::size_t kHeisenbergOrder = 8;
inline constexpr std::size_t kHeisenbergCenter = 2;
inline constexpr std::size_t kHeisenbergDegree = 2;
// ~_1 classes are the cosets of the center
inline constexpr std::size_t kHeisenbergTildeOneClasses = 4;

// |HK^k(G)| = prod_i |G_i / G_{i+1}|^(sum_{j <= i} C(k, j))
// Heisenberg mod 2: |G_1/G_2| = 4, |G_2| = 2
//   k=1: 4^2 * 2^2 = 64, k=2: 4^3 * 2^4 = 1024, k=3: 4^4 * 2^7 = 32768
inline constexpr std::size_t kHeisenbergHk[4] = {8, 64, 1024, 32768};

// Automorphisms of D_1(Z_n) are the affine maps x -> u x + b, u a unit
inline constexpr std::size_t kAffineZ2 = 2, kAffineZ3 = 6, kAffineZ4 = 8, kAffineZ5 = 20, kAffineZ6 = 12;

// Aut_1(D_1(Z2) -> point) = the swap and the identity
inline constexpr std::size_t kAut1D1Z2 = 2;
// Aut_2 of the Heisenberg nilspace over a point: the central translations
inline constexpr std::size_t kAut2Heisenberg = 2;

// Z4 rotation, ~_0 relative to the mod 2 factor: 8 pairs x = x' mod 2
inline constexpr std::size_t kZ4RelTildeZeroPairs = 8;

}  // namespace oracle
