#include "nspace/factorization.hpp"

#include <algorithm>

namespace nspace {

LevelProjection level_projection(const CubeMap& g, int s) {
  if (s < 1) throw InvalidInput("level projection needs s >= 1");
  auto rel = relative_canonical_relation(g, s - 1);
  if (rel.status != RelationStatus::Equivalence) {
    throw InvalidInput(std::string("~_{g,s-1} is not an equivalence (") + to_string(rel.status) + ")");
  }
  LevelProjection L{quotient_cubespace(g.domain, rel.relation), {}};
  std::vector<Point> a(L.quotient.quotient.size(), 0);
  for (Point x = 0; x < g.domain.size(); ++x) a[L.quotient.projection[x]] = g.assign[x];
  L.lower = CubeMap(L.quotient.quotient, g.codomain, std::move(a));
  return L;
}

namespace {

void check_setup(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s) {
  if (!(phi.domain == g.domain) || !(phi.codomain == h.domain) || !(g.codomain == h.codomain)) {
    throw InvalidInput("maps do not form a triangle X -> Y -> Z");
  }
  for (Point x = 0; x < g.domain.size(); ++x) {
    if (g.assign[x] != h.assign[phi.assign[x]]) {
      throw InvalidInput("g differs from h∘phi at '" + g.domain.label(x) + "'");
    }
  }
  if (!is_ergodic(g.domain) || !is_ergodic(h.domain) || !is_ergodic(g.codomain)) {
    throw InvalidInput("shadows need ergodic spaces");
  }
  if (!is_s_fibration(g, s)) throw InvalidInput("g is not an s-fibration");
  if (!is_s_fibration(h, s)) throw InvalidInput("h is not an s-fibration");
  if (!is_fibration(phi).fibration) throw InvalidInput("phi is not a fibration");
}

}  // namespace

ShadowCertificate shadow_of_fibration(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s) {
  check_setup(phi, g, h, s);
  ShadowCertificate c;
  c.phi = phi;
  c.g = g;
  c.h = h;
  c.s = s;
  c.g_level = level_projection(g, s);
  c.h_level = level_projection(h, s);
  const auto& pg = c.g_level.quotient.projection;
  const auto& ph = c.h_level.quotient.projection;
  const std::size_t m = c.g_level.quotient.quotient.size();
  std::vector<Point> psi(m, static_cast<Point>(m));
  c.square_commutes = true;
  for (Point x = 0; x < g.domain.size(); ++x) {
    Point t = ph[phi.assign[x]];
    if (psi[pg[x]] == m) psi[pg[x]] = t;
    else if (psi[pg[x]] != t) c.square_commutes = false;
  }
  if (!c.square_commutes) throw InternalAlarm("shadow is not well defined on a ~_{g,s-1} class");
  c.psi = CubeMap(c.g_level.quotient.quotient, c.h_level.quotient.quotient, std::move(psi));
  c.psi_fibration = is_fibration(c.psi).fibration;
  c.triangle_commutes = true;
  for (Point p = 0; p < m; ++p) {
    if (c.h_level.lower.assign[c.psi.assign[p]] != c.g_level.lower.assign[p]) c.triangle_commutes = false;
  }
  if (!c.valid()) throw InternalAlarm("shadow evidence failed");
  return c;
}

HorizontalVerdict horizontal_conditions(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s) {
  check_setup(phi, g, h, s);
  const auto Rg = relative_canonical_relation(g, s - 1).relation;
  const auto Rh = relative_canonical_relation(h, s - 1).relation;
  const std::size_t n = g.domain.size();
  HorizontalVerdict v;
  v.injective_on_classes = true;
  for (auto [x, y] : Rg.pairs()) {
    if (x != y && phi.assign[x] == phi.assign[y]) v.injective_on_classes = false;
  }
  v.bijective_on_classes = true;
  for (Point x = 0; x < n && v.bijective_on_classes; ++x) {
    std::vector<Point> image;
    for (Point y = 0; y < n; ++y) {
      if (Rg.contains(x, y)) image.push_back(phi.assign[y]);
    }
    std::sort(image.begin(), image.end());
    std::vector<Point> target;
    for (Point z = 0; z < h.domain.size(); ++z) {
      if (Rh.contains(phi.assign[x], z)) target.push_back(z);
    }
    v.bijective_on_classes = image == target;
  }
  v.relation_trivial = relative_canonical_relation(phi, s - 1).relation == PointRelation::diagonal(n);
  return v;
}

bool is_horizontal(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s) {
  auto v = horizontal_conditions(phi, g, h, s);
  if (!v.consistent()) throw InternalAlarm("the three horizontality conditions disagree");
  return v.relation_trivial;
}

bool is_vertical(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s) {
  check_setup(phi, g, h, s);
  const auto Rg = relative_canonical_relation(g, s - 1).relation;
  const auto Rh = relative_canonical_relation(h, s - 1).relation;
  const std::size_t n = g.domain.size();
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (Rh.contains(phi.assign[x], phi.assign[y]) && !Rg.contains(x, y)) return false;
    }
  }
  return true;
}

VerticalHorizontal factor_vertical_horizontal(const CubeMap& phi, const CubeMap& g, const CubeMap& h, int s) {
  check_setup(phi, g, h, s);
  auto rel = relative_canonical_relation(phi, s - 1);
  if (rel.status != RelationStatus::Equivalence) throw InternalAlarm("~_{phi,s-1} is not an equivalence");
  VerticalHorizontal f;
  f.W = quotient_cubespace(phi.domain, rel.relation);
  f.phi_v = f.W.map();
  std::vector<Point> a(f.W.quotient.size(), 0);
  for (Point x = 0; x < phi.domain.size(); ++x) a[f.W.projection[x]] = phi.assign[x];
  f.phi_h = CubeMap(f.W.quotient, phi.codomain, std::move(a));
  f.k = compose(f.phi_h, h);
  f.round_trip = true;
  for (Point x = 0; x < phi.domain.size(); ++x) {
    if (f.phi_h.assign[f.phi_v.assign[x]] != phi.assign[x]) f.round_trip = false;
  }
  f.phi_v_fibration = is_fibration(f.phi_v).fibration;
  f.phi_h_fibration = is_fibration(f.phi_h).fibration;
  f.k_s_fibration = is_s_fibration(f.k, s);
  if (f.phi_v_fibration && f.phi_h_fibration && f.k_s_fibration) {
    f.vertical = is_vertical(f.phi_v, g, f.k, s);
    f.horizontal = is_horizontal(f.phi_h, f.k, h, s);
  }
  if (!f.valid()) throw InternalAlarm("vertical-horizontal factorization evidence failed");
  return f;
}

}  // namespace nspace
