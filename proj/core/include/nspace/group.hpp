#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nspace/error.hpp"

namespace nspace {

using Elem = std::uint32_t;
using Perm = std::vector<std::uint32_t>;

/// A finite group given by a validated Cayley table.
class FiniteGroup {
 public:
  FiniteGroup();  // trivial group

  /// Validates closure, identity, inverses and associativity. Throws
  /// InvalidInput naming a witness on failure.
  static FiniteGroup from_table(std::vector<std::string> labels, std::vector<std::vector<Elem>> table);

  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  /// Upper unitriangular 3x3 matrices over Z_p, elements (a,b,c) with
  /// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
  static FiniteGroup heisenberg(std::size_t p);
  /// Symmetries of the regular n-gon, order 2n; labels r<i> and s<i>.
  static FiniteGroup dihedral(std::size_t n);
  static FiniteGroup quaternion();
  /// Group generated by permutations of {0..degree-1}. Identity first, then
  /// breadth-first in generator order. Labels are the image lists.
  static FiniteGroup from_permutations(const std::vector<Perm>& gens, std::size_t degree,
                                       std::size_t max_order);

  std::size_t order() const { return labels_.size(); }
  Elem mul(Elem a, Elem b) const { return table_[a * order() + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem identity() const { return identity_; }
  Elem commutator(Elem a, Elem b) const;  // a^-1 b^-1 a b
  Elem power(Elem a, long long n) const;
  std::size_t element_order(Elem a) const;
  const std::string& label(Elem a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(const std::string& label) const;
  bool is_abelian() const;

  /// Sorted element set of the subgroup generated by `gens`.
  std::vector<Elem> generated(const std::vector<Elem>& gens) const;
  bool is_subgroup(const std::vector<Elem>& set) const;
  bool is_normal(const std::vector<Elem>& sub) const;
  std::vector<Elem> center() const;
  /// A small generating set of a subgroup (greedy in element order).
  std::vector<Elem> generators_of(const std::vector<Elem>& sub) const;
  /// Lower central series G = Γ_1 ⊇ Γ_2 ⊇ ... until it stabilizes.
  std::vector<std::vector<Elem>> lower_central_series() const;
  /// Commutator subgroup [A, B] of two subgroups.
  std::vector<Elem> commutator_subgroup(const std::vector<Elem>& a, const std::vector<Elem>& b) const;

  /// Cayley table as rows: table()[a][b] = a*b.
  std::vector<std::vector<Elem>> table() const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  Elem identity_ = 0;
};

/// All elements of the permutation group generated by `gens`, identity
/// first, then breadth-first in generator order.
std::vector<Perm> permutation_closure(const std::vector<Perm>& gens, std::size_t degree, std::size_t max_order);

/// Invariant factors d_1 | d_2 | ... of a finite abelian group (empty for
/// the trivial group). Throws InvalidInput for non-abelian input.
std::vector<std::size_t> abelian_invariants(const FiniteGroup& A);
/// Human readable type, e.g. "Z2xZ4", "1".
std::string abelian_type_string(const std::vector<std::size_t>& invariants);

/// A ≅ ⊕ Z_{q_i} with q_i prime powers and explicit generators g_i.
struct PrimaryDecomposition {
  std::vector<std::size_t> moduli;
  std::vector<Elem> generators;
  /// coords[a][i]: coefficient of g_i in a, in [0, moduli[i]).
  std::vector<std::vector<std::size_t>> coords;
};
PrimaryDecomposition primary_decomposition(const FiniteGroup& A);

/// A degree-s filtration G = G_0 ⊇ G_1 ⊇ ... ⊇ G_{s+1} = {e}.
class Filtration {
 public:
  /// levels[i] = G_i for i = 0..s+1. Validates nesting, G_0 = G, the
  /// endpoint and the commutator condition.
  Filtration(FiniteGroup group, std::vector<std::vector<Elem>> levels);

  /// G_0 = ... = G_s = A, G_{s+1} = {0}.
  static Filtration constant(const FiniteGroup& A, int s);
  /// G_0 = G_1 = G, G_{i+1} = [G, G_i]; degree = nilpotency class.
  static Filtration lower_central(const FiniteGroup& G);

  const FiniteGroup& group() const { return group_; }
  int degree() const { return static_cast<int>(levels_.size()) - 2; }
  /// G_i, with G_i = {e} for i > s+1.
  const std::vector<Elem>& level(int i) const;
  const std::vector<std::vector<Elem>>& levels() const { return levels_; }

 private:
  FiniteGroup group_;
  std::vector<std::vector<Elem>> levels_;
  std::vector<Elem> trivial_;
};

}  // namespace nspace
