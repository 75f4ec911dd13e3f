#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nspace/cubemap.hpp"
#include "nspace/error.hpp"
#include "nspace/group.hpp"
#include "nspace/hk.hpp"

namespace nspace {

/// Configuration c of dim n with phi applied on the vertices of F.
struct FaceWitness {
  int n = 0;
  Face face;
  Configuration cube;
  Configuration modified;
};

struct TranslationVerdict {
  bool direct = false;              // face-modification definition, n <= max_dim
  std::optional<bool> criterion;    // ⌞^k(c, phi(c)) test when the subject is a nilspace
  int criterion_degree = -1;        // s used by the criterion
  bool agree = true;
  std::optional<FaceWitness> witness;
  bool holds() const { return direct; }
};

bool is_automorphism(const CubeSpace& X, const Perm& phi);
/// Throws InvalidInput when phi is not an automorphism of X.
TranslationVerdict is_k_translation(const CubeSpace& X, const Perm& phi, int k);
/// Map subjects: phi must satisfy f∘phi = f; checked fiber by fiber.
TranslationVerdict is_k_translation(const CubeMap& f, const Perm& phi, int k);

struct TranslationGroup {
  int level = 0;
  std::vector<Perm> elements;  // sorted; the identity comes first
  bool closed = false;         // composition and inverses stay inside
  bool contains(const Perm& p) const;
  std::size_t order() const { return elements.size(); }
};

/// All automorphisms, lexicographic. Throws CapExceeded if the search is cut.
TranslationGroup enumerate_automorphisms(const CubeSpace& X, const Caps& caps);
TranslationGroup translation_group(const CubeSpace& X, int k, const Caps& caps);
/// Product over fibers of the fiberwise k-translation groups.
TranslationGroup translation_group(const CubeMap& f, int k, const Caps& caps);

struct FiltrationEvidence {
  std::vector<TranslationGroup> levels;  // Aut_0 .. Aut_top
  bool nested = true;
  bool commutators = true;  // [Aut_i, Aut_j] ⊆ Aut_{min(i+j, top)}
  std::optional<std::pair<int, int>> witness;
};
FiltrationEvidence translation_filtration(const CubeSpace& X, int top, const Caps& caps);
FiltrationEvidence translation_filtration(const CubeMap& f, int top, const Caps& caps);

/// The permutations as a FiniteGroup, a*b = "apply b, then a"; element i is
/// elements[i].
FiniteGroup permutation_group(const std::vector<Perm>& elements);

struct Pushforward {
  CubeMap lower;  // g_{s-1}: Z / ~_{g,s-1} -> Y
  std::vector<Point> projection;
  Perm image;     // pi_*(phi)
  bool certified = false;
};
/// pi_*(phi)(pi(x)) = pi(phi(x)). Throws InvalidInput unless phi ∈ Aut_k(g).
Pushforward pushforward_translation(const CubeMap& g, int s, const Perm& phi, int k);

struct PushforwardReport {
  std::size_t domain_order = 0;  // |Aut_k(g)|
  std::size_t image_order = 0;
  std::size_t target_order = 0;  // |Aut_k(g_{s-1})|
  bool homomorphism = false;
  bool surjective = false;
};
PushforwardReport pushforward_report(const CubeMap& g, int s, int k, const Caps& caps);

/// omega -> phi_omega(c(omega)) for a tuple in HK^n(Aut_•(f)), where the
/// filtration is Aut_1(f) ⊇ Aut_2(f) ⊇ ... Throws InvalidInput when the tuple
/// is not in HK^n or c is not a cube inside one fiber.
Configuration evaluate_hk_on_cube(const CubeMap& f, const std::vector<Perm>& hk_elt, const Configuration& c,
                                  const Caps& caps);

/// Aut_1(f) ⊇ Aut_2(f) ⊇ ... as a Filtration over permutation_group(Aut_1).
struct TranslationFiltration {
  std::vector<Perm> elements;
  Filtration filtration;
};
TranslationFiltration translation_hk_filtration(const CubeMap& f, const Caps& caps);

}  // namespace nspace
