#pragma once
// Hand-rolled random generators for property tests. Every generator takes an
// explicit engine so failures reproduce from the printed seed.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <numeric>
#include <random>
#include <vector>

#include "nspace/cube.hpp"
#include "nspace/cubespace.hpp"
#include "nspace/group.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("NSPACE_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return fallback;
}

inline int uniform(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }

inline nspace::CubeMorphismSpec morphism(Rng& r, int k, int l) {
  nspace::CubeMorphismSpec m;
  m.k = k;
  m.l = l;
  for (int j = 0; j < l; ++j) {
    nspace::CubeSymbol s;
    int pick = uniform(r, 0, k == 0 ? 1 : 3);
    s.kind = static_cast<nspace::CubeSymbol::Kind>(pick);
    s.index = k == 0 ? 0 : uniform(r, 1, k);
    m.coords.push_back(s);
  }
  return m;
}

inline nspace::Configuration configuration(Rng& r, int dim, std::size_t points) {
  std::vector<nspace::Point> v(nspace::vertex_count(dim));
  for (auto& x : v) x = static_cast<nspace::Point>(uniform(r, 0, static_cast<int>(points) - 1));
  return nspace::Configuration(dim, std::move(v));
}

inline nspace::Perm permutation(Rng& r, std::size_t n) {
  nspace::Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::shuffle(p.begin(), p.end(), r);
  return p;
}

// Z_{n1} x ... with at most `factors` cyclic factors and order <= cap.
inline nspace::FiniteGroup abelian_group(Rng& r, int factors, std::size_t cap) {
  nspace::FiniteGroup G = nspace::FiniteGroup::cyclic(static_cast<std::size_t>(uniform(r, 2, 4)));
  int extra = uniform(r, 0, factors - 1);
  for (int i = 0; i < extra; ++i) {
    std::size_t n = static_cast<std::size_t>(uniform(r, 2, 3));
    if (G.order() * n > cap) break;
    G = nspace::FiniteGroup::direct_product(G, nspace::FiniteGroup::cyclic(n));
  }
  return G;
}

// Random cube space: morphism closure of a few random cubes.
inline nspace::CubeSpace closure_space(Rng& r, std::size_t points, int K) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points; ++i) labels.push_back(std::to_string(i));
  std::vector<nspace::Configuration> cubes;
  int count = uniform(r, 1, 4);
  for (int i = 0; i < count; ++i) cubes.push_back(configuration(r, uniform(r, 1, K), points));
  return nspace::close_under_morphisms(labels, K, cubes);
}

}  // namespace gen
