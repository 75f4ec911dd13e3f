#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nspace/cubemap.hpp"
#include "nspace/group.hpp"
#include "nspace/relation.hpp"

namespace nspace {

/// A group acting on finitely many points through named generator
/// permutations; the acting group is the permutation group they generate.
/// Points are kept sorted by label, matching dynamical_cubes' indexing.
class GroupAction {
 public:
  GroupAction() = default;
  GroupAction(std::vector<std::string> points, std::vector<std::string> generator_names,
              std::vector<Perm> generators);

  /// G acting on itself by left multiplication, generators = given elements.
  static GroupAction regular(const FiniteGroup& G, const std::vector<Elem>& gens);
  /// G acting on the cosets gH by left multiplication; a coset is labeled by
  /// its minimal element label.
  static GroupAction on_cosets(const FiniteGroup& G, const std::vector<Elem>& H, const std::vector<Elem>& gens);
  /// Coset label map g -> index of gH in on_cosets(G, H, ...).
  static std::vector<Point> coset_projection(const FiniteGroup& G, const std::vector<Elem>& H);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<Perm>& generators() const { return gens_; }

 private:
  std::vector<std::string> points_;
  std::vector<std::string> names_;
  std::vector<Perm> gens_;
};

/// Orbit of the constant configurations under the hyperface generators.
CubeSpace dynamical_cubes(const GroupAction& S, int K, std::size_t max_elements);

bool is_minimal(const GroupAction& S);

/// Equivariant surjection between actions with matching generator names.
struct FactorMap {
  GroupAction domain;
  GroupAction codomain;
  std::vector<Point> assign;

  FactorMap() = default;
  /// Validates surjectivity and equivariance on generators.
  FactorMap(GroupAction d, GroupAction c, std::vector<Point> a);
  CubeMap as_cubemap(int K, std::size_t max_elements) const;
};

/// NRP^[k]: pairs whose corner configuration is a dynamical (k+1)-cube. When
/// S is minimal the result is checked to be a G-invariant equivalence.
PointRelation nrp_relation(const GroupAction& S, int k, std::size_t max_elements);
PointRelation nrp_relation(const GroupAction& S, const CubeSpace& cubes, int k);
PointRelation relative_nrp(const FactorMap& pi, int k, std::size_t max_elements);

struct GroupExtensionVerdict {
  bool commutes = true;
  bool group_extension = false;
  bool principal_abelian = false;
  bool k_invariant = true;  // K·NRP^[l] = NRP^[l] for checked l
  int nrp_bound = 0;
  std::optional<std::pair<Point, Point>> witness;  // in R_pi, not of the form (x, kx)
};
/// K is given by permutations of the domain points generating it.
GroupExtensionVerdict group_extension_check(const FactorMap& pi, const std::vector<Perm>& k_generators, int K,
                                            std::size_t max_elements);

}  // namespace nspace
