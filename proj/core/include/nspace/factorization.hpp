#pragma once

#include "nspace/cubemap.hpp"
#include "nspace/relation.hpp"

namespace nspace {

/// The projection pi_{g,s-1}: X -> X / ~_{g,s-1} and g_{s-1}.
struct LevelProjection {
  QuotientCertificate quotient;
  CubeMap lower;
};
LevelProjection level_projection(const CubeMap& g, int s);

/// For g = h∘phi: psi with psi∘pi_{g,s-1} = pi_{h,s-1}∘phi.
struct ShadowCertificate {
  CubeMap phi, g, h;
  int s = 0;
  LevelProjection g_level, h_level;
  CubeMap psi;
  bool psi_fibration = false;
  bool square_commutes = false;    // psi∘pi_g = pi_h∘phi
  bool triangle_commutes = false;  // h_{s-1}∘psi = g_{s-1}
  bool valid() const { return psi_fibration && square_commutes && triangle_commutes; }
};

/// Throws InvalidInput unless g = h∘phi pointwise, g and h are
/// s-fibrations and phi is a fibration.
ShadowCertificate shadow_of_fibration(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s);

struct HorizontalVerdict {
  bool injective_on_classes = false;  // phi(x) != phi(x') for x ~_{g,s-1} x', x != x'
  bool bijective_on_classes = false;  // phi: pi_g-class of x -> pi_h-class of phi(x) bijective
  bool relation_trivial = false;      // ~_{phi,s-1} = Δ
  bool consistent() const {
    return injective_on_classes == relation_trivial && bijective_on_classes == relation_trivial;
  }
};
HorizontalVerdict horizontal_conditions(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s);
/// ~_{phi,s-1} = Δ; throws InternalAlarm when the three conditions disagree.
bool is_horizontal(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s);
/// pi_h(phi(x)) = pi_h(phi(x')) implies pi_g(x) = pi_g(x').
bool is_vertical(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s);

struct VerticalHorizontal {
  QuotientCertificate W;  // X / ~_{phi,s-1}
  CubeMap phi_v;          // X -> W
  CubeMap phi_h;          // W -> Y
  CubeMap k;              // h∘phi_h
  bool phi_v_fibration = false;
  bool phi_h_fibration = false;
  bool k_s_fibration = false;
  bool vertical = false;
  bool horizontal = false;
  bool round_trip = false;  // phi_h∘phi_v = phi
  bool valid() const {
    return phi_v_fibration && phi_h_fibration && k_s_fibration && vertical && horizontal && round_trip;
  }
};
VerticalHorizontal factor_vertical_horizontal(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s);

}  // namespace nspace
