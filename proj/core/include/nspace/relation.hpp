#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nspace/cubemap.hpp"
#include "nspace/cubespace.hpp"

namespace nspace {

/// A binary relation on points 0..n-1 stored as a dense matrix.
class PointRelation {
 public:
  PointRelation() = default;
  explicit PointRelation(std::size_t n) : n_(n), m_(n * n, 0) {}
  static PointRelation diagonal(std::size_t n);
  static PointRelation full(std::size_t n);
  /// Pairs (x, y) with key[x] == key[y].
  static PointRelation kernel(const std::vector<Point>& key);

  std::size_t size() const { return n_; }
  bool contains(Point x, Point y) const { return m_[x * n_ + y] != 0; }
  void add(Point x, Point y) { m_[x * n_ + y] = 1; }
  std::vector<std::pair<Point, Point>> pairs() const;
  std::size_t pair_count() const;
  PointRelation intersect(const PointRelation& o) const;
  bool subset_of(const PointRelation& o) const;

  friend bool operator==(const PointRelation&, const PointRelation&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> m_;
};

struct EquivalenceWitness {
  std::string property;  // "reflexive" | "symmetric" | "transitive"
  Point x = 0, y = 0, z = 0;
};
std::optional<EquivalenceWitness> equivalence_witness(const PointRelation& R);
inline bool is_equivalence(const PointRelation& R) { return !equivalence_witness(R); }

/// Smallest equivalence relation containing R. Never applied implicitly.
PointRelation close_relation(const PointRelation& R);

/// class_of[x] = index of x's class; classes numbered by minimal member.
std::vector<Point> class_index(const PointRelation& R);

enum class RelationStatus { Equivalence, NotEquivalence, Raw };

struct RelationResult {
  PointRelation relation;
  RelationStatus status = RelationStatus::Raw;
  bool gluing = false;
  std::optional<EquivalenceWitness> witness;
};
const char* to_string(RelationStatus s);

/// ~_k: pairs completing a common (k+1)-corner. Needs k + 1 <= max_dim.
RelationResult canonical_relation(const CubeSpace& X, int k);
/// ~_{f,k} = ~_k ∩ {f(x) = f(x')}. f must be a morphism.
RelationResult relative_canonical_relation(const CubeMap& f, int k);

struct QuotientCertificate {
  CubeSpace source;
  PointRelation relation;
  CubeSpace quotient;
  std::vector<Point> projection;
  CubeMap map() const { return CubeMap(source, quotient, projection); }
};

/// Quotient by an equivalence relation; classes are labeled by their
/// minimal member's label. Throws InvalidInput if R is not an equivalence.
QuotientCertificate quotient_cubespace(const CubeSpace& X, const PointRelation& R);

struct UrpVerdict {
  bool ok = true;
  bool gluing = true;
  int bound = 0;
  std::optional<Configuration> witness;  // a non-cube with a cube image
};
/// Universal replacement for ~_s, dimensions k <= min(s+1, max_dim).
UrpVerdict urp_check(const CubeSpace& X, int s);

struct MaximalFibration {
  QuotientCertificate quotient;  // X / ~_{f,s}
  CubeMap projection;
  CubeMap induced;  // g with f = g ∘ projection
  bool projection_fibration = false;
  bool induced_s_fibration = false;
};
MaximalFibration maximal_s_fibration(const CubeMap& f, int s);

}  // namespace nspace
