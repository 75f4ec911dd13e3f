#include "nspace/structure.hpp"

#include <algorithm>
#include <map>

#include "nspace/hk.hpp"

namespace nspace {

std::optional<Elem> StructureGroupCertificate::difference(Point x, Point y) const {
  const std::size_t n = relation.size();
  if (x >= n || y >= n) return std::nullopt;
  int d = diff[x * n + y];
  if (d < 0) return std::nullopt;
  return static_cast<Elem>(d);
}

std::size_t d_s_exponent(int s, int k) {
  std::size_t total = 0, binom = 1;
  for (int j = 0; j <= std::min(s, k); ++j) {
    total += binom;
    binom = binom * static_cast<std::size_t>(k - j) / static_cast<std::size_t>(j + 1);
  }
  return total;
}

namespace {

// The unique y' with [⌞^s(x, x'), ⌞^s(y, y')] a cube and f(y') = f(y).
std::optional<Point> pair_image(const CubeMap& f, int s, Point x, Point xp, Point y) {
  const CubeSpace& X = f.domain;
  const std::size_t half = vertex_count(s);
  CubeKey corner;
  for (std::size_t v = 0; v < half; ++v) {
    corner.bytes[v] = static_cast<std::uint8_t>(v + 1 == half ? xp : x);
    corner.bytes[half + v] = static_cast<std::uint8_t>(y);
  }
  corner.bytes[2 * half - 1] = kHole;
  std::optional<Point> found;
  for (std::uint8_t c : X.completions(s + 1, corner)) {
    if (f.assign[c] != f.assign[y]) continue;
    if (found && *found != c) {
      throw InternalAlarm("relative (" + std::to_string(s + 1) + ")-uniqueness fails: two completions over '" +
                          X.label(y) + "'");
    }
    found = c;
  }
  return found;
}

std::size_t saturating_power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::size_t{1} << 40) / base) return std::size_t{1} << 40;
    r *= base;
  }
  return r;
}

void fail(StructureGroupCertificate& c, bool& flag, const std::string& why) {
  flag = false;
  if (c.failure.empty()) c.failure = why;
}

}  // namespace

StructureGroupCertificate extract_structure_group(const CubeMap& f, int s, bool strict) {
  const CubeSpace& X = f.domain;
  const std::size_t n = X.size();
  if (s < 1) throw InvalidInput("structure groups start at level 1");
  if (s + 1 > X.max_dim()) {
    throw InvalidInput("level-" + std::to_string(s) + " structure group needs max_dim >= " + std::to_string(s + 1));
  }
  if (!is_ergodic(X)) throw InvalidInput("structure group: the domain is not ergodic");
  if (!is_s_fibration(f, s)) throw InvalidInput("structure group: the map is not a " + std::to_string(s) + "-fibration");
  auto rel = relative_canonical_relation(f, s - 1);
  if (rel.status == RelationStatus::Raw) throw InvalidInput("structure group: the domain is not gluing");
  if (rel.status == RelationStatus::NotEquivalence) {
    throw InternalAlarm("~_{f," + std::to_string(s - 1) + "} is not an equivalence on an s-fibration");
  }

  StructureGroupCertificate cert;
  cert.level = s;
  cert.base = 0;
  cert.relation = rel.relation;
  cert.well_defined = cert.abelian = cert.free_action = cert.transitive = cert.cube_compatible = true;

  std::vector<Point> base_class;
  for (Point x = 0; x < n; ++x) {
    if (cert.relation.contains(cert.base, x)) base_class.push_back(x);
  }
  const std::size_t m = base_class.size();
  std::vector<int> elem_of(n, -1);
  for (std::size_t i = 0; i < m; ++i) elem_of[base_class[i]] = static_cast<int>(i);

  for (Point xp : base_class) {
    Perm sigma(n);
    std::vector<bool> hit(n, false);
    for (Point y = 0; y < n; ++y) {
      auto img = pair_image(f, s, cert.base, xp, y);
      if (!img) throw InternalAlarm("relative fibrancy fails: no completion over '" + X.label(y) + "'");
      sigma[y] = *img;
      if (hit[*img]) fail(cert, cert.well_defined, "pair class does not act bijectively");
      hit[*img] = true;
      if (!cert.relation.contains(y, *img)) fail(cert, cert.well_defined, "pair class leaves a ~ class");
    }
    if (sigma[cert.base] != xp) fail(cert, cert.well_defined, "pair class misplaces the base point");
    cert.action.push_back(std::move(sigma));
  }

  // any representative pair of a class induces the same permutation
  for (auto [z, zp] : cert.relation.pairs()) {
    const Perm* sigma = nullptr;
    for (const Perm& p : cert.action) {
      if (p[z] == zp) {
        if (sigma) fail(cert, cert.well_defined, "two classes agree at a point");
        sigma = &p;
      }
    }
    if (!sigma) {
      fail(cert, cert.transitive, "pair (" + X.label(z) + "," + X.label(zp) + ") lies in no class");
      continue;
    }
    for (Point y = 0; y < n; ++y) {
      auto img = pair_image(f, s, z, zp, y);
      if (!img || *img != (*sigma)[y]) {
        fail(cert, cert.well_defined, "permutation depends on the representative (" + X.label(z) + "," + X.label(zp) + ")");
        break;
      }
    }
  }

  std::vector<std::vector<Elem>> table(m, std::vector<Elem>(m, 0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      int c = elem_of[cert.action[a][base_class[b]]];
      if (c < 0) {
        fail(cert, cert.well_defined, "composition leaves the base class");
        c = 0;
      }
      table[a][b] = static_cast<Elem>(c);
      for (Point y = 0; y < n && cert.well_defined; ++y) {
        if (cert.action[a][cert.action[b][y]] != cert.action[c][y]) fail(cert, cert.well_defined, "classes are not closed under composition");
      }
    }
  }
  if (!cert.well_defined) {
    if (strict) throw InternalAlarm("structure group: " + cert.failure);
    return cert;
  }
  std::vector<std::string> labels;
  for (Point x : base_class) labels.push_back(X.label(x));
  cert.group = FiniteGroup::from_table(std::move(labels), std::move(table));
  const FiniteGroup& A = cert.group;

  if (!A.is_abelian()) fail(cert, cert.abelian, "structure group is not abelian");
  cert.diff.assign(n * n, -1);
  for (std::size_t a = 0; a < m; ++a) {
    for (Point y = 0; y < n; ++y) {
      Point t = cert.action[a][y];
      if (a != A.identity() && t == y) fail(cert, cert.free_action, "non-identity element fixes '" + X.label(y) + "'");
      if (cert.diff[y * n + t] >= 0) fail(cert, cert.free_action, "two elements agree at '" + X.label(y) + "'");
      cert.diff[y * n + t] = static_cast<int>(a);
    }
  }
  for (auto [y, t] : cert.relation.pairs()) {
    if (cert.diff[y * n + t] < 0) fail(cert, cert.transitive, "not transitive on the class of '" + X.label(y) + "'");
  }

  if (cert.abelian && cert.free_action && cert.transitive) {
    cert.invariants = abelian_invariants(A);
    auto cls = class_index(cert.relation);
    for (int k = 1; k <= X.max_dim() && cert.cube_compatible; ++k) {
      const std::size_t nv = vertex_count(k);
      std::map<CubeKey, std::vector<std::size_t>> groups;
      const auto& cubes = X.cubes(k);
      for (std::size_t i = 0; i < cubes.size(); ++i) {
        CubeKey img;
        for (std::size_t v = 0; v < nv; ++v) img.bytes[v] = static_cast<std::uint8_t>(cls[cubes[i].bytes[v]]);
        groups[img].push_back(i);
      }
      const std::size_t expected = saturating_power(m, d_s_exponent(s, k));
      for (const auto& [img, members] : groups) {
        if (members.size() != expected) {
          fail(cert, cert.cube_compatible,
               "a fiber of the " + std::to_string(k) + "-cubes has " + std::to_string(members.size()) +
                   " cubes, expected " + std::to_string(expected));
          break;
        }
        const CubeKey& c0 = cubes[members.front()];
        for (std::size_t i : members) {
          CubeKey beta;
          for (std::size_t v = 0; v < nv; ++v) {
            beta.bytes[v] = static_cast<std::uint8_t>(cert.diff[c0.bytes[v] * n + cubes[i].bytes[v]]);
          }
          if (!d_s_predicate(A, s, k, beta)) {
            fail(cert, cert.cube_compatible, "a difference cochain lies outside C^" + std::to_string(k) + "(D_s(A))");
            break;
          }
        }
        if (!cert.cube_compatible) break;
      }
    }
  } else {
    fail(cert, cert.cube_compatible, "cube compatibility needs a free transitive abelian action");
  }
  if (strict && !cert.valid()) throw InternalAlarm("structure group evidence failed: " + cert.failure);
  return cert;
}

bool TowerCertificate::valid() const {
  if (!chain_consistent || !bottom_isomorphic) return false;
  for (const TowerLevel& l : levels) {
    if (!l.group.valid() || !l.orbits_match) return false;
    if (l.equivariant && !*l.equivariant) return false;
  }
  return true;
}

TowerCertificate build_relative_tower(const CubeMap& f, int s) {
  if (s < 0) throw InvalidInput("tower degree must be non-negative");
  if (s + 1 > f.domain.max_dim()) throw InvalidInput("tower of degree " + std::to_string(s) + " needs max_dim >= " + std::to_string(s + 1));
  if (!is_s_fibration(f, s)) throw InvalidInput("tower: the map is not a " + std::to_string(s) + "-fibration");
  const std::size_t n = f.domain.size();
  TowerCertificate t;
  t.base = f;
  t.s = s;
  t.chain_consistent = true;
  std::vector<Point> proj(n);
  for (Point x = 0; x < n; ++x) proj[x] = x;
  CubeMap g = f;
  for (int k = s; k >= 1; --k) {
    TowerLevel level;
    level.k = k;
    level.map = g;
    if (!is_s_fibration(g, k)) throw InternalAlarm("tower level " + std::to_string(k) + " is not a " + std::to_string(k) + "-fibration");
    level.group = extract_structure_group(g, k);
    level.quotient = quotient_cubespace(g.domain, level.group.relation);
    PointRelation orbit(g.domain.size());
    for (const Perm& a : level.group.action) {
      for (Point y = 0; y < g.domain.size(); ++y) orbit.add(y, a[y]);
    }
    level.orbits_match = orbit == level.group.relation;

    std::vector<Point> below(level.quotient.quotient.size(), 0);
    for (Point y = 0; y < g.domain.size(); ++y) below[level.quotient.projection[y]] = g.assign[y];
    CubeMap next(level.quotient.quotient, f.codomain, std::move(below));
    for (Point y = 0; y < g.domain.size(); ++y) {
      if (next.assign[level.quotient.projection[y]] != g.assign[y]) throw InternalAlarm("tower: map does not factor");
    }
    for (Point x = 0; x < n; ++x) proj[x] = level.quotient.projection[proj[x]];
    auto direct = relative_canonical_relation(f, k - 1);
    if (!(PointRelation::kernel(proj) == direct.relation)) t.chain_consistent = false;
    t.levels.push_back(std::move(level));
    g = std::move(next);
  }
  t.bottom = g;
  auto iso = find_isomorphism(g.domain, f.codomain);
  t.bottom_isomorphic = iso.status == SearchStatus::Found;
  t.bottom_iso = iso.map;
  if (!t.valid()) throw InternalAlarm("tower evidence failed on a certified fibration");
  return t;
}

TowerCertificate build_tower(const CubeSpace& X, int s) {
  if (!is_ergodic(X)) throw InvalidInput("tower: the space is not ergodic");
  auto d = nilspace_degree(X);
  if (!d) throw InvalidInput("tower: the space is not a nilspace within max_dim");
  if (*d > s) throw InvalidInput("tower: nilspace degree " + std::to_string(*d) + " exceeds " + std::to_string(s));
  return build_relative_tower(map_to_point(X), s);
}

TowerCertificate dynamical_tower(const FactorMap& pi, int s, int K, std::size_t max_elements) {
  if (!is_minimal(pi.domain) || !is_minimal(pi.codomain)) throw InvalidInput("dynamical tower: actions must be minimal");
  if (s < 0 || s + 1 > K) throw InvalidInput("dynamical tower needs 0 <= s and s + 1 <= max_dim");
  const auto diag = PointRelation::diagonal(pi.domain.size());
  if (!(relative_nrp(pi, s, max_elements) == diag)) {
    std::string actual = "none within max_dim";
    for (int t = s + 1; t + 1 <= K; ++t) {
      if (relative_nrp(pi, t, max_elements) == diag) {
        actual = std::to_string(t);
        break;
      }
    }
    throw InvalidInput("dynamical tower: NRP^[" + std::to_string(s) + "](pi) is not the diagonal; minimal degree: " + actual);
  }
  CubeMap f = pi.as_cubemap(K, max_elements);
  if (!is_s_fibration(f, s)) throw InternalAlarm("factor map of degree <= s is not an s-fibration");
  TowerCertificate t = build_relative_tower(f, s);

  const std::size_t n = pi.domain.size();
  std::vector<Point> proj(n);
  for (Point x = 0; x < n; ++x) proj[x] = x;
  for (TowerLevel& level : t.levels) {
    const std::size_t nk = level.map.domain.size();
    bool ok = true;
    for (const Perm& g : pi.domain.generators()) {
      Perm ind(nk, static_cast<Point>(nk));
      for (Point x = 0; x < n; ++x) {
        Point& slot = ind[proj[x]];
        if (slot == nk) slot = proj[g[x]];
        else if (slot != proj[g[x]]) throw InternalAlarm("generator action does not descend to a tower level");
      }
      for (const Perm& a : level.group.action) {
        for (Point y = 0; y < nk; ++y) ok = ok && a[ind[y]] == ind[a[y]];
      }
      level.induced_generators.push_back(std::move(ind));
    }
    level.equivariant = ok;
    for (Point x = 0; x < n; ++x) proj[x] = level.quotient.projection[proj[x]];
  }
  if (!t.valid()) throw InternalAlarm("dynamical tower: structure group does not commute with the action");
  return t;
}

}  // namespace nspace
