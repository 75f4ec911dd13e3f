#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nspace/cubespace.hpp"

namespace nspace {

/// A total point map between cubespaces. Morphism-ness is checked, not assumed.
struct CubeMap {
  CubeSpace domain;
  CubeSpace codomain;
  std::vector<Point> assign;

  CubeMap() = default;
  CubeMap(CubeSpace d, CubeSpace c, std::vector<Point> a);

  Point operator()(Point x) const { return assign[x]; }
  CubeKey image(const CubeKey& c, int k) const;
  Configuration image(const Configuration& c) const;
};

CubeMap identity_map(const CubeSpace& X);
/// X -> one-point space (label "*").
CubeMap map_to_point(const CubeSpace& X);
CubeSpace point_space(int max_dim);
/// g ∘ f.
CubeMap compose(const CubeMap& f, const CubeMap& g);

struct MorphismWitness {
  int k = 0;
  Configuration cube;
  Configuration image;
};
std::optional<MorphismWitness> morphism_witness(const CubeMap& f);
inline bool is_morphism(const CubeMap& f) { return !morphism_witness(f).has_value(); }

/// Validated k-corner: 2^k - 1 values over all vertices except the all-ones one.
struct Corner {
  int dim = 0;
  std::vector<Point> values;
  CubeKey key() const;
};
/// Throws InvalidInput when some lower face is not a cube.
void validate_corner(const CubeSpace& X, const Corner& c);
std::vector<Point> complete_corner(const CubeSpace& X, const Corner& c);

struct CornerWitness {
  int k = 0;
  Configuration corner;  // dim k, the all-ones entry is meaningless
};

struct FibrancyReport {
  bool ok = true;
  int bound = 0;
  std::optional<CornerWitness> witness;
};
FibrancyReport is_fibrant(const CubeSpace& X);

struct UniquenessWitness {
  int k = 0;
  Configuration c1, c2;
};
std::optional<UniquenessWitness> uniqueness_witness(const CubeSpace& X, int k);
std::optional<UniquenessWitness> uniqueness_witness(const CubeMap& f, int k);
inline bool has_k_uniqueness(const CubeSpace& X, int k) { return !uniqueness_witness(X, k); }
inline bool has_k_uniqueness(const CubeMap& f, int k) { return !uniqueness_witness(f, k); }

/// Smallest s with fibrancy and (s+1)-uniqueness for s + 1 <= max_dim.
std::optional<int> nilspace_degree(const CubeSpace& X);

bool is_relatively_k_ergodic(const CubeMap& f, int k);

struct FibrationWitness {
  int k = 0;
  Configuration corner;  // domain corner, all-ones entry meaningless
  Point target = 0;      // codomain completion with no lift
};

struct FibrationCertificate {
  bool morphism = true;
  bool fibration = true;
  int bound = 0;
  std::vector<bool> completion;  // per k = 0..bound
  std::optional<FibrationWitness> witness;
  std::vector<bool> uniqueness;  // relative k-uniqueness, k = 0..bound
  std::optional<int> degree;     // smallest s with relative (s+1)-uniqueness
};
FibrationCertificate is_fibration(const CubeMap& f);
/// Fibration of degree at most s.
bool is_s_fibration(const CubeMap& f, int s);

struct UniversalPropertyVerdict {
  bool f_fibration = false, g_fibration = false, gf_fibration = false;
  bool consistent = true;
};
UniversalPropertyVerdict universal_property_check(const CubeMap& f, const CubeMap& g);

/// Subcubespace on f^{-1}(y). Throws InvalidInput on an empty fiber.
CubeSpace fiber_subcubespace(const CubeMap& f, Point y);
std::vector<Point> fiber_points(const CubeMap& f, Point y);

enum class SearchStatus { Found, None, CapExceeded };

struct IsoResult {
  SearchStatus status = SearchStatus::None;
  std::vector<Point> map;
  std::size_t nodes = 0;
};

/// Backtracking search for a bijection carrying every C^k(X) onto C^k(Y).
/// Optional colors restrict x to targets of equal color.
IsoResult find_isomorphism(const CubeSpace& X, const CubeSpace& Y, std::size_t node_cap = 1'000'000,
                           const std::vector<std::uint32_t>* color_x = nullptr,
                           const std::vector<std::uint32_t>* color_y = nullptr);

struct IsoEnumeration {
  std::vector<std::vector<Point>> maps;  // lexicographic order
  bool complete = true;                  // false if a cap was hit
  std::size_t nodes = 0;
};
IsoEnumeration enumerate_isomorphisms(const CubeSpace& X, const CubeSpace& Y, std::size_t node_cap,
                                      std::size_t max_solutions,
                                      const std::vector<std::uint32_t>* color_x = nullptr,
                                      const std::vector<std::uint32_t>* color_y = nullptr);

}  // namespace nspace
