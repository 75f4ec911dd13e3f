#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nspace/cube.hpp"
#include "nspace/error.hpp"

namespace nspace {

/// A finite cubespace with explicit cube sets C^0..C^K.
///
/// Points are identified by string labels; the library keeps them sorted
/// lexicographically so that point index order is the global order used for
/// every tie-break. Values are immutable and cheap to copy.
class CubeSpace {
 public:
  CubeSpace();

  /// Builds a space from arbitrary labels. cubes[k] lists k-cubes for
  /// k = 1..max_dim (cubes[0] is ignored; C^0 is the point set). Point values
  /// in configurations index into `labels` as given; they are remapped after
  /// sorting. Duplicates are removed. No closure is performed.
  static CubeSpace create(std::vector<std::string> labels, int max_dim,
                          const std::vector<std::vector<Configuration>>& cubes);

  /// Same, from already sorted unique labels and packed keys.
  static CubeSpace from_keys(std::vector<std::string> sorted_labels, int max_dim,
                             std::vector<std::vector<CubeKey>> keys);

  std::size_t size() const;
  int max_dim() const;
  const std::string& label(Point p) const;
  const std::vector<std::string>& labels() const;
  std::optional<Point> find(const std::string& label) const;

  /// Sorted k-cubes, 0 <= k <= max_dim.
  const std::vector<CubeKey>& cubes(int k) const;
  bool contains(int k, const CubeKey& key) const;
  bool contains(const Configuration& c) const;

  /// Sorted values v such that some k-cube starts with the first `len` bytes
  /// of `prefix` followed by v. Bytes of `prefix` beyond `len` are ignored.
  std::span<const std::uint8_t> next_values(int k, const CubeKey& prefix, int len) const;

  /// Completions of a k-corner stored in the first 2^k - 1 bytes of `corner`.
  std::span<const std::uint8_t> completions(int k, const CubeKey& corner) const;

  /// Gluing verdict, computed once.
  bool gluing() const;

  friend bool operator==(const CubeSpace& a, const CubeSpace& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit CubeSpace(std::shared_ptr<const Impl> impl);
};

struct ClosureViolation {
  int l = 0;
  Configuration cube;
  CubeMorphismSpec rho;
  Configuration image;
};

struct ValidationReport {
  bool ok = true;
  int bound = 0;  // max_dim the check ran up to
  std::string problem;  // structural problem (non-closure issues), if any
  std::optional<ClosureViolation> violation;
};

/// Full morphism closure check over all l, k <= max_dim.
ValidationReport validate_cubespace(const CubeSpace& X);

bool is_ergodic(const CubeSpace& X);

struct GluingWitness {
  int k = 0;
  Configuration c1, c2, c3;
};

/// First gluing violation under sorted iteration, if any.
std::optional<GluingWitness> gluing_witness(const CubeSpace& X);
inline bool is_gluing(const CubeSpace& X) { return X.gluing(); }

/// The smallest morphism-closed set containing the given cubes (and all
/// constants), truncated at max_dim.
CubeSpace close_under_morphisms(std::vector<std::string> labels, int max_dim,
                                const std::vector<Configuration>& generators);

/// Product cubespace; labels are "(x,y)".
CubeSpace product(const CubeSpace& X, const CubeSpace& Y);

/// Restriction to a point subset. Labels are kept.
CubeSpace subcubespace(const CubeSpace& X, const std::vector<Point>& subset);

/// Calls fn(corner) for every k-corner of X (bytes 0..2^k-2 assigned) in
/// lexicographic order; fn returns false to stop. Returns false if stopped.
bool for_each_corner(const CubeSpace& X, int k, const std::function<bool(const CubeKey&)>& fn);

/// One-line summary: point count, bound, cube counts.
std::string describe(const CubeSpace& X);

}  // namespace nspace
