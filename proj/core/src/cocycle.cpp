#include "nspace/cocycle.hpp"

#include <algorithm>
#include <functional>

#include "nspace/relation.hpp"
#include "nspace/translation.hpp"

namespace nspace {

std::optional<std::size_t> FiberCubeSet::index_of(const CubeKey& c) const {
  auto it = std::lower_bound(cubes.begin(), cubes.end(), c);
  if (it == cubes.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - cubes.begin());
}

FiberCubeSet fiber_cubes(const CubeMap& f, int k) {
  if (k < 0 || k > f.domain.max_dim()) throw InvalidInput("fiber cubes: dimension outside 0..max_dim");
  if (!is_morphism(f)) throw InvalidInput("fiber cubes: the map is not a morphism");
  FiberCubeSet S;
  S.map = f;
  S.k = k;
  if (k == 0) {
    for (Point p = 0; p < f.domain.size(); ++p) {
      CubeKey c;
      c.bytes[0] = static_cast<std::uint8_t>(p);
      S.cubes.push_back(c);
    }
    return S;
  }
  for (const CubeKey& c : f.domain.cubes(k)) {
    bool constant = true;
    for (std::size_t v = 1; v < vertex_count(k) && constant; ++v) constant = f.assign[c.bytes[v]] == f.assign[c.bytes[0]];
    if (constant) S.cubes.push_back(c);
  }
  return S;
}

namespace {

Elem alternating_sum(const FiniteGroup& A, std::size_t nv, const std::function<Elem(std::size_t)>& at) {
  Elem sum = A.identity();
  for (std::size_t v = 0; v < nv; ++v) {
    Elem x = at(v);
    sum = A.mul(sum, sign_of_vertex(v) < 0 ? A.inv(x) : x);
  }
  return sum;
}

}  // namespace

FiberCocycle coboundary(const FiberCubeSet& S, const FiniteGroup& A, const Cochain& h) {
  if (h.size() != S.map.domain.size()) throw InvalidInput("cochain has the wrong length");
  FiberCocycle rho{S, A, {}};
  const std::size_t nv = vertex_count(S.k);
  for (const CubeKey& c : S.cubes) {
    rho.values.push_back(alternating_sum(A, nv, [&](std::size_t v) { return h[c.bytes[v]]; }));
  }
  return rho;
}

std::optional<CocycleWitness> cocycle_witness(const FiberCocycle& rho) {
  const int l = rho.domain.k;
  if (l < 1) return std::nullopt;
  const FiniteGroup& A = rho.target;
  for (int axis = 1; axis <= l; ++axis) {
    const std::size_t bit = std::size_t{1} << (axis - 1);
    std::map<CubeKey, std::vector<std::pair<CubeKey, Elem>>> by_first;
    std::map<std::pair<CubeKey, CubeKey>, Elem> value;
    for (std::size_t i = 0; i < rho.domain.cubes.size(); ++i) {
      const CubeKey& c = rho.domain.cubes[i];
      CubeKey lo, hi;
      std::size_t pos = 0;
      for (std::size_t v = 0; v < vertex_count(l); ++v) {
        if (v & bit) continue;
        lo.bytes[pos] = c.bytes[v];
        hi.bytes[pos] = c.bytes[v | bit];
        ++pos;
      }
      by_first[lo].emplace_back(hi, rho.values[i]);
      value[{lo, hi}] = rho.values[i];
    }
    for (const auto& [a, list] : by_first) {
      for (const auto& [b, v1] : list) {
        auto next = by_first.find(b);
        if (next == by_first.end()) continue;
        for (const auto& [c, v2] : next->second) {
          auto it = value.find({a, c});
          if (it != value.end() && it->second != A.mul(v1, v2)) {
            return CocycleWitness{axis, a.unpack(l - 1), b.unpack(l - 1), c.unpack(l - 1)};
          }
        }
      }
    }
  }
  return std::nullopt;
}

CoboundarySolution solve_coboundary(const FiberCocycle& rho, const std::vector<Point>* unknown_of) {
  const FiniteGroup& A = rho.target;
  if (!A.is_abelian()) throw InvalidInput("coboundary equations need an abelian target");
  const std::size_t n = rho.domain.map.domain.size();
  std::vector<Point> unk(n);
  for (Point x = 0; x < n; ++x) unk[x] = unknown_of ? (*unknown_of)[x] : x;
  if (unknown_of && unknown_of->size() != n) throw InvalidInput("unknown map has the wrong length");
  const std::size_t U = n ? *std::max_element(unk.begin(), unk.end()) + 1 : 0;
  const std::size_t m = rho.domain.cubes.size();
  const std::size_t nv = vertex_count(rho.domain.k);

  std::vector<std::vector<std::int64_t>> coeff(m, std::vector<std::int64_t>(U, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v = 0; v < nv; ++v) coeff[i][unk[rho.domain.cubes[i].bytes[v]]] += sign_of_vertex(v);
  }
  auto pd = primary_decomposition(A);
  std::vector<std::vector<std::size_t>> coords(U, std::vector<std::size_t>(pd.moduli.size(), 0));
  CoboundarySolution out;
  for (std::size_t f = 0; f < pd.moduli.size() && m > 0; ++f) {
    const auto q = static_cast<std::int64_t>(pd.moduli[f]);
    auto pe = prime_power(q);
    if (!pe) throw InternalAlarm("primary decomposition produced a non prime power");
    std::vector<std::int64_t> b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = static_cast<std::int64_t>(pd.coords[rho.values[i]][f]);
    auto sol = solve_mod_prime_power(coeff, b, pe->first, pe->second);
    if (!sol.x) {
      UnsolvableCertificate cert;
      cert.modulus = pd.moduli[f];
      for (Elem a = 0; a < A.order(); ++a) cert.character.push_back(static_cast<std::int64_t>(pd.coords[a][f]));
      cert.combination = sol.obstruction;
      std::int64_t c = 0;
      for (auto [i, u] : cert.combination) c = (c + u * b[i]) % q;
      cert.constant = c;
      cert.unknown_of = unk;
      if (!verify_certificate(rho, cert)) throw InternalAlarm("unsolvable certificate fails its own check");
      out.certificate = std::move(cert);
      return out;
    }
    for (std::size_t u = 0; u < U; ++u) coords[u][f] = static_cast<std::size_t>((*sol.x)[u]);
  }
  std::map<std::vector<std::size_t>, Elem> elem_of;
  for (Elem a = 0; a < A.order(); ++a) elem_of[pd.coords[a]] = a;
  Cochain h(n, A.identity());
  if (m > 0) {
    for (Point x = 0; x < n; ++x) h[x] = elem_of.at(coords[unk[x]]);
  }
  if (coboundary(rho.domain, A, h).values != rho.values) throw InternalAlarm("coboundary solution does not reproduce rho");
  out.h = std::move(h);
  return out;
}

bool verify_certificate(const FiberCocycle& rho, const UnsolvableCertificate& cert) {
  const FiniteGroup& A = rho.target;
  const auto q = static_cast<std::int64_t>(cert.modulus);
  if (q < 2 || cert.character.size() != A.order()) return false;
  auto md = [q](std::int64_t a) { return ((a % q) + q) % q; };
  for (Elem a = 0; a < A.order(); ++a) {
    for (Elem b = 0; b < A.order(); ++b) {
      if (md(cert.character[A.mul(a, b)]) != md(cert.character[a] + cert.character[b])) return false;
    }
  }
  const std::size_t n = rho.domain.map.domain.size();
  if (cert.unknown_of.size() != n) return false;
  std::map<Point, std::int64_t> acc;
  std::int64_t total = 0;
  for (auto [i, u] : cert.combination) {
    if (i >= rho.domain.cubes.size()) return false;
    const CubeKey& c = rho.domain.cubes[i];
    for (std::size_t v = 0; v < vertex_count(rho.domain.k); ++v) {
      acc[cert.unknown_of[c.bytes[v]]] += u * sign_of_vertex(v);
    }
    total += u * cert.character[rho.values[i]];
  }
  for (auto [x, s] : acc) {
    if (md(s) != 0) return false;
  }
  return md(total) != 0 && md(total) == md(cert.constant);
}

LevelData level_data(const CubeMap& g, int s) {
  LevelData L;
  L.g = g;
  L.s = s;
  L.A = extract_structure_group(g, s);
  auto q = quotient_cubespace(g.domain, L.A.relation);
  L.projection = q.projection;
  std::vector<Point> a(q.quotient.size(), 0);
  for (Point x = 0; x < g.domain.size(); ++x) a[q.projection[x]] = g.assign[x];
  L.lower = CubeMap(q.quotient, g.codomain, std::move(a));
  for (const CubeKey& c : g.domain.cubes(s + 1)) {
    CubeKey img;
    for (std::size_t v = 0; v < vertex_count(s + 1); ++v) img.bytes[v] = static_cast<std::uint8_t>(L.projection[c.bytes[v]]);
    L.base_cubes[img].push_back(c);
  }
  return L;
}

namespace {

const std::vector<CubeKey>& bases_for(const LevelData& L, const Configuration& c) {
  if (c.dim != L.s + 1) throw InvalidInput("discrepancy needs a configuration of dimension s+1");
  CubeKey img;
  for (std::size_t v = 0; v < c.values.size(); ++v) {
    if (c.values[v] >= L.projection.size()) throw InvalidInput("configuration uses an unknown point");
    img.bytes[v] = static_cast<std::uint8_t>(L.projection[c.values[v]]);
  }
  auto it = L.base_cubes.find(img);
  if (it == L.base_cubes.end()) throw InvalidInput("discrepancy: the projection is not a cube of the quotient");
  return it->second;
}

Elem discrepancy_against(const LevelData& L, const CubeKey& c0, const Configuration& c) {
  const FiniteGroup& A = L.A.group;
  return alternating_sum(A, c.values.size(), [&](std::size_t v) {
    auto d = L.A.difference(c0.bytes[v], c.values[v]);
    if (!d) throw InternalAlarm("discrepancy: vertex difference is not a structure group element");
    return *d;
  });
}

}  // namespace

Elem discrepancy(const LevelData& L, const Configuration& c) {
  return discrepancy_against(L, bases_for(L, c).front(), c);
}

std::vector<Elem> discrepancy_all_bases(const LevelData& L, const Configuration& c) {
  std::vector<Elem> out;
  for (const CubeKey& c0 : bases_for(L, c)) out.push_back(discrepancy_against(L, c0, c));
  return out;
}

RepairResult repair_lift(const LevelData& L, const Perm& psi, int k) {
  const int s = L.s;
  if (k < 1 || k > s) throw InvalidInput("repair needs 1 <= k <= s");
  const CubeMap& g = L.g;
  const std::size_t n = g.domain.size();
  RepairResult r;
  r.lift = psi;
  {
    std::vector<bool> seen(n, false);
    if (psi.size() != n) throw InvalidInput("lift has the wrong length");
    for (auto v : psi) {
      if (v >= n || seen[v]) throw InvalidInput("lift is not a permutation");
      seen[v] = true;
    }
  }
  for (Point x = 0; x < n; ++x) {
    if (g.assign[psi[x]] != g.assign[x]) throw InvalidInput("lift does not preserve the fibers of g");
  }
  const std::size_t nq = L.lower.domain.size();
  r.induced.assign(nq, static_cast<std::uint32_t>(nq));
  for (Point x = 0; x < n; ++x) {
    auto& slot = r.induced[L.projection[x]];
    if (slot == nq) slot = L.projection[psi[x]];
    else if (slot != L.projection[psi[x]]) throw InvalidInput("lift does not descend to the quotient level");
  }
  if (!is_k_translation(L.lower, r.induced, k).direct) {
    throw InvalidInput("the induced map is not in Aut_" + std::to_string(k) + "(g_{s-1})");
  }

  const int l = s + 1 - k;
  FiberCubeSet S = fiber_cubes(g, l);
  r.rho = FiberCocycle{S, L.A.group, {}};
  for (const CubeKey& key : S.cubes) {
    Configuration c = key.unpack(l);
    std::vector<Point> moved(c.values.size());
    for (std::size_t v = 0; v < moved.size(); ++v) moved[v] = psi[c.values[v]];
    Configuration corner = generalized_corner(c, Configuration(l, moved), k);
    try {
      r.rho.values.push_back(discrepancy(L, corner));
    } catch (const InvalidInput& e) {
      throw InternalAlarm(std::string("repair: corner over a translation has no base cube: ") + e.what());
    }
  }
  r.cocycle_failure = cocycle_witness(r.rho);
  if (r.cocycle_failure) {
    r.note = "rho_psi is not a fiber cocycle";
    return r;
  }
  const FiniteGroup& A = L.A.group;
  auto cls = class_index(L.A.relation);
  auto sol = solve_coboundary(r.rho, &cls);
  r.invariant_solution = sol.h.has_value();
  if (!sol.h) {
    sol = solve_coboundary(r.rho);
    if (!sol.h) {
      r.certificate = sol.certificate;
      r.note = "rho_psi is not a coboundary";
      return r;
    }
  }
  // ∂h = (-1)^{k+1} rho
  r.h = *sol.h;
  if (k % 2 == 0) {
    for (auto& e : r.h) e = A.inv(e);
  }
  r.repaired_map.resize(n);
  std::vector<bool> hit(n, false);
  for (Point z = 0; z < n; ++z) {
    Point t = L.A.action[r.h[z]][psi[z]];
    r.repaired_map[z] = t;
    if (hit[t]) {
      r.note = "h.psi is not a bijection";
      return r;
    }
    hit[t] = true;
  }
  if (!is_k_translation(g, r.repaired_map, k).direct) throw InternalAlarm("repaired lift is not a k-translation");
  r.repaired = true;
  return r;
}

}  // namespace nspace
