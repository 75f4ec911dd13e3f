#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nspace/cubemap.hpp"
#include "nspace/group.hpp"
#include "nspace/modular.hpp"
#include "nspace/structure.hpp"

namespace nspace {

/// C^k_f: the k-cubes of the domain that f maps to a constant.
struct FiberCubeSet {
  CubeMap map;
  int k = 0;
  std::vector<CubeKey> cubes;  // sorted
  std::optional<std::size_t> index_of(const CubeKey& c) const;
};
FiberCubeSet fiber_cubes(const CubeMap& f, int k);

struct FiberCocycle {
  FiberCubeSet domain;
  FiniteGroup target;
  std::vector<Elem> values;  // aligned with domain.cubes
};

/// h: domain points -> target elements.
using Cochain = std::vector<Elem>;

/// ∂^l h(c) = sum_w (-1)^{|w|} h(c(w)) on every cube of S.
FiberCocycle coboundary(const FiberCubeSet& S, const FiniteGroup& A, const Cochain& h);

/// Fails additivity: rho([c1,c3]) != rho([c1,c2]) + rho([c2,c3]), the
/// concatenations taken along `axis`.
struct CocycleWitness {
  int axis = 0;
  Configuration c1, c2, c3;
};
std::optional<CocycleWitness> cocycle_witness(const FiberCocycle& rho);
inline bool is_fiber_cocycle(const FiberCocycle& rho) { return !cocycle_witness(rho); }

/// No h exists: chi is a homomorphism A -> Z/modulus and the integer
/// combination of equations has zero coefficients on every unknown but
/// sum_c u_c chi(rho(c)) = constant != 0.
struct UnsolvableCertificate {
  std::size_t modulus = 0;
  std::vector<std::int64_t> character;  // chi(a), indexed by element
  Combination combination;              // over indices of rho.domain.cubes
  std::int64_t constant = 0;
  std::vector<Point> unknown_of;        // point -> unknown (identity unless restricted)
};

struct CoboundarySolution {
  std::optional<Cochain> h;
  std::optional<UnsolvableCertificate> certificate;
};

/// Solves rho = ∂^l h exactly, one prime-power factor of the target at a
/// time. With `unknown_of`, h is constrained to be constant on the points
/// sharing an unknown. Throws InvalidInput for non-abelian targets.
CoboundarySolution solve_coboundary(const FiberCocycle& rho, const std::vector<Point>* unknown_of = nullptr);

/// Independent check of a certificate against rho.
bool verify_certificate(const FiberCocycle& rho, const UnsolvableCertificate& cert);

/// Data of an s-fibration g needed for discrepancies: its level-s structure
/// group, pi = pi_{g,s-1}, g_{s-1}, and the (s+1)-cubes grouped by projection.
struct LevelData {
  CubeMap g;
  int s = 0;
  StructureGroupCertificate A;
  std::vector<Point> projection;
  CubeMap lower;
  std::map<CubeKey, std::vector<CubeKey>> base_cubes;
};
LevelData level_data(const CubeMap& g, int s);

/// Δ(c) for a (s+1)-configuration whose projection is a cube. Throws
/// InvalidInput when no base cube exists.
Elem discrepancy(const LevelData& L, const Configuration& c);
/// Δ(c) computed against every available base cube.
std::vector<Elem> discrepancy_all_bases(const LevelData& L, const Configuration& c);

struct RepairResult {
  bool repaired = false;
  Perm lift;             // the input psi
  Perm induced;          // phi on the quotient level
  Perm repaired_map;     // h.psi when repaired
  Cochain h;
  FiberCocycle rho;      // rho_psi on C^{s+1-k}_g
  std::optional<CocycleWitness> cocycle_failure;
  std::optional<UnsolvableCertificate> certificate;
  bool invariant_solution = false;  // h constant on ~_{g,s-1} classes
  std::string note;
};

/// Repairs a fiber-preserving lift psi of some phi ∈ Aut_k(g_{s-1}) into an
/// element of Aut_k(g), 1 <= k <= s.
RepairResult repair_lift(const LevelData& L, const Perm& psi, int k);

}  // namespace nspace
