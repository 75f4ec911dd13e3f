#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nspace/cubemap.hpp"
#include "nspace/dynamics.hpp"
#include "nspace/group.hpp"
#include "nspace/relation.hpp"

namespace nspace {

/// The level-s structure group of an s-fibration f: X -> Y, built from
/// classes of pairs (x, x') with x ~_{f,s-1} x', two pairs being equivalent
/// when [⌞^s(x,x'), ⌞^s(y,y')] is an (s+1)-cube.
struct StructureGroupCertificate {
  int level = 0;
  Point base = 0;
  FiniteGroup group;               // a*b = "apply b, then a"
  std::vector<Perm> action;        // action[a]: permutation of the domain
  PointRelation relation;          // ~_{f,s-1}
  std::vector<std::size_t> invariants;

  bool well_defined = false;  // induced permutation independent of the representative
  bool abelian = false;
  bool free_action = false;
  bool transitive = false;  // on every ~_{f,s-1} class
  bool cube_compatible = false;
  std::string failure;  // first failing check, if any

  bool valid() const { return well_defined && abelian && free_action && transitive && cube_compatible; }
  /// The unique a with a.x = y, if x and y are related.
  std::optional<Elem> difference(Point x, Point y) const;
  std::string type() const { return abelian_type_string(invariants); }

  std::vector<int> diff;  // n*n table behind difference()
};

/// |C^k(D_s(A))| as a power of |A|: sum_{j <= min(s,k)} C(k, j).
std::size_t d_s_exponent(int s, int k);

/// Throws InvalidInput if f is not an s-fibration or max_dim < s+1. With
/// `strict`, a failing evidence flag raises InternalAlarm.
StructureGroupCertificate extract_structure_group(const CubeMap& f, int s, bool strict = true);

struct TowerLevel {
  int k = 0;
  CubeMap map;                   // g_k: X_k -> Y
  QuotientCertificate quotient;  // X_k -> X_{k-1} = X_k / ~_{g_k,k-1}
  StructureGroupCertificate group;
  bool orbits_match = false;           // A_k-orbits are exactly the projection fibers
  std::optional<bool> equivariant;     // dynamical towers only
  std::vector<Perm> induced_generators;  // dynamical towers: G acting on X_k
};

struct TowerCertificate {
  CubeMap base;
  int s = 0;
  std::vector<TowerLevel> levels;  // k = s, s-1, ..., 1
  CubeMap bottom;                  // g_0: X_0 -> Y
  bool chain_consistent = false;   // composed projections match ~_{f,k}
  bool bottom_isomorphic = false;
  std::vector<Point> bottom_iso;   // X_0 -> Y found by search
  bool valid() const;
};

TowerCertificate build_relative_tower(const CubeMap& f, int s);
/// Requires X ergodic with nilspace degree <= s.
TowerCertificate build_tower(const CubeSpace& X, int s);
/// Requires minimal actions and NRP^[s](pi) = Δ; adds equivariance evidence.
TowerCertificate dynamical_tower(const FactorMap& pi, int s, int K, std::size_t max_elements);

}  // namespace nspace
