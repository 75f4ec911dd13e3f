#pragma once

#include <vector>

#include "nspace/cube.hpp"
#include "nspace/cubespace.hpp"
#include "nspace/group.hpp"

namespace nspace {

/// HK^k(G_•) as a sorted set of tuples over group element indices.
struct HKCubeGroup {
  int k = 0;
  std::vector<CubeKey> elements;
  std::vector<CubeKey> generators;  // [x]_F in face order, x over level generators
};

/// [x]_F: x on the vertices of F, identity elsewhere.
CubeKey face_element(const FiniteGroup& G, int k, const Face& F, Elem x);

HKCubeGroup hk_cube_group(const Filtration& F, int k, std::size_t max_elements);

/// Cubespace on the group's elements (labels as in the group) with
/// C^k = HK^k(G_•) for k <= K.
CubeSpace hk_cubespace(const Filtration& F, int K, std::size_t max_elements);

/// "Every (s+1)-dimensional face has alternating sum 0" for a tuple over
/// the abelian group A.
bool d_s_predicate(const FiniteGroup& A, int s, int k, const CubeKey& tuple);

/// D_s(A); the BFS result is cross-checked against d_s_predicate.
CubeSpace d_s_cubespace(const FiniteGroup& A, int s, int K, std::size_t max_elements);

struct HKQuotient {
  CubeSpace space;
  std::vector<Point> projection;            // group element -> quotient point
  std::vector<std::size_t> compatibility;  // |Γ ∩ G_i| for i = 0..s+1
};

/// Quotient by right cosets gΓ; a coset is labeled by its minimal label.
HKQuotient hk_quotient_cubespace(const Filtration& F, const std::vector<Elem>& gamma, int K,
                                 std::size_t max_elements);

/// Point of hk_cubespace corresponding to a group element.
std::vector<Point> hk_points(const FiniteGroup& G);

}  // namespace nspace
