#include "nspace/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace nspace {

GroupAction::GroupAction(std::vector<std::string> points, std::vector<std::string> generator_names,
                         std::vector<Perm> generators) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidInput("action on an empty point set");
  if (generator_names.size() != generators.size()) throw InvalidInput("generator names and permutations differ in number");
  for (const Perm& g : generators) {
    if (g.size() != n) throw InvalidInput("generator permutation has the wrong length");
    std::vector<bool> seen(n, false);
    for (auto v : g) {
      if (v >= n || seen[v]) throw InvalidInput("generator is not a permutation of the points");
      seen[v] = true;
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<std::uint32_t> remap(n);
  for (std::size_t i = 0; i < n; ++i) remap[order[i]] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < n; ++i) {
    points_.push_back(points[order[i]]);
    if (i > 0 && points_[i - 1] == points_[i]) throw InvalidInput("duplicate point label '" + points_[i] + "'");
  }
  names_ = std::move(generator_names);
  for (const Perm& g : generators) {
    Perm h(n);
    for (std::size_t x = 0; x < n; ++x) h[remap[x]] = remap[g[x]];
    gens_.push_back(std::move(h));
  }
}

GroupAction GroupAction::regular(const FiniteGroup& G, const std::vector<Elem>& gens) {
  std::vector<std::string> names;
  std::vector<Perm> perms;
  for (Elem g : gens) {
    names.push_back(G.label(g));
    Perm p(G.order());
    for (Elem x = 0; x < G.order(); ++x) p[x] = G.mul(g, x);
    perms.push_back(std::move(p));
  }
  return GroupAction(G.labels(), std::move(names), std::move(perms));
}

namespace {

std::vector<std::string> coset_labels(const FiniteGroup& G, const std::vector<Elem>& H) {
  std::vector<std::string> lab(G.order());
  for (Elem g = 0; g < G.order(); ++g) {
    std::string best;
    for (Elem h : H) {
      const std::string& l = G.label(G.mul(g, h));
      if (best.empty() || l < best) best = l;
    }
    lab[g] = best;
  }
  return lab;
}

}  // namespace

std::vector<Point> GroupAction::coset_projection(const FiniteGroup& G, const std::vector<Elem>& H) {
  if (!G.is_subgroup(H)) throw InvalidInput("coset action: not a subgroup");
  auto lab = coset_labels(G, H);
  std::vector<std::string> uniq = lab;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<Point> proj(G.order());
  for (Elem g = 0; g < G.order(); ++g) {
    proj[g] = static_cast<Point>(std::lower_bound(uniq.begin(), uniq.end(), lab[g]) - uniq.begin());
  }
  return proj;
}

GroupAction GroupAction::on_cosets(const FiniteGroup& G, const std::vector<Elem>& H, const std::vector<Elem>& gens) {
  auto proj = coset_projection(G, H);
  auto lab = coset_labels(G, H);
  const std::size_t n = *std::max_element(proj.begin(), proj.end()) + 1;
  std::vector<std::string> points(n);
  std::vector<Elem> rep(n);
  for (Elem g = G.order(); g-- > 0;) {
    points[proj[g]] = lab[g];
    rep[proj[g]] = g;
  }
  std::vector<std::string> names;
  std::vector<Perm> perms;
  for (Elem g : gens) {
    names.push_back(G.label(g));
    Perm p(n);
    for (std::size_t c = 0; c < n; ++c) p[c] = proj[G.mul(g, rep[c])];
    perms.push_back(std::move(p));
  }
  return GroupAction(std::move(points), std::move(names), std::move(perms));
}

CubeSpace dynamical_cubes(const GroupAction& S, int K, std::size_t max_elements) {
  if (K > Caps::kHardMaxDim) throw CapExceeded("max_dim above the hard cap");
  const std::size_t n = S.size();
  std::vector<std::vector<CubeKey>> keys(K + 1);
  for (int k = 1; k <= K; ++k) {
    const auto faces = enumerate_faces_of_dim(k, k - 1);
    std::unordered_set<CubeKey, CubeKeyHash> seen;
    std::vector<CubeKey> queue;
    for (Point p = 0; p < n; ++p) {
      CubeKey c;
      for (std::size_t v = 0; v < vertex_count(k); ++v) c.bytes[v] = static_cast<std::uint8_t>(p);
      if (seen.insert(c).second) queue.push_back(c);
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (const Face& F : faces) {
        for (const Perm& g : S.generators()) {
          CubeKey next = queue[h];
          for (std::size_t v = 0; v < vertex_count(k); ++v) {
            if ((v & F.fixed_mask) == F.fixed_values) next.bytes[v] = static_cast<std::uint8_t>(g[next.bytes[v]]);
          }
          if (seen.insert(next).second) {
            queue.push_back(next);
            if (queue.size() > max_elements) {
              throw CapExceeded("dynamical " + std::to_string(k) + "-cubes exceed the cap " + std::to_string(max_elements));
            }
          }
        }
      }
    }
    keys[k] = std::move(queue);
  }
  return CubeSpace::from_keys(S.points(), K, std::move(keys));
}

bool is_minimal(const GroupAction& S) {
  std::vector<bool> seen(S.size(), false);
  std::vector<Point> queue{0};
  seen[0] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const Perm& g : S.generators()) {
      Point y = g[queue[h]];
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return queue.size() == S.size();
}

FactorMap::FactorMap(GroupAction d, GroupAction c, std::vector<Point> a)
    : domain(std::move(d)), codomain(std::move(c)), assign(std::move(a)) {
  if (domain.generator_names() != codomain.generator_names()) {
    throw InvalidInput("factor map: actions use different generators");
  }
  if (assign.size() != domain.size()) throw InvalidInput("factor map: assignment has the wrong length");
  std::vector<bool> hit(codomain.size(), false);
  for (Point y : assign) {
    if (y >= codomain.size()) throw InvalidInput("factor map: value outside the codomain");
    hit[y] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw InvalidInput("factor map is not surjective");
  for (std::size_t i = 0; i < domain.generators().size(); ++i) {
    const Perm& g = domain.generators()[i];
    const Perm& h = codomain.generators()[i];
    for (Point x = 0; x < domain.size(); ++x) {
      if (assign[g[x]] != h[assign[x]]) {
        throw InvalidInput("factor map is not equivariant for generator '" + domain.generator_names()[i] +
                           "' at point '" + domain.points()[x] + "'");
      }
    }
  }
}

CubeMap FactorMap::as_cubemap(int K, std::size_t max_elements) const {
  return CubeMap(dynamical_cubes(domain, K, max_elements), dynamical_cubes(codomain, K, max_elements), assign);
}

PointRelation nrp_relation(const GroupAction& S, const CubeSpace& cubes, int k) {
  if (k < 0 || k + 1 > cubes.max_dim()) throw InvalidInput("NRP^[k] needs max_dim >= k + 1");
  PointRelation r(S.size());
  for (Point x = 0; x < S.size(); ++x) {
    for (Point y = 0; y < S.size(); ++y) {
      if (cubes.contains(corner_configuration(k + 1, x, y))) r.add(x, y);
    }
  }
  if (is_minimal(S)) {
    if (auto w = equivalence_witness(r)) {
      throw InternalAlarm("NRP of a minimal action is not " + w->property);
    }
    for (const Perm& g : S.generators()) {
      for (auto [x, y] : r.pairs()) {
        if (!r.contains(g[x], g[y])) throw InternalAlarm("NRP of a minimal action is not invariant");
      }
    }
  }
  return r;
}

PointRelation nrp_relation(const GroupAction& S, int k, std::size_t max_elements) {
  return nrp_relation(S, dynamical_cubes(S, k + 1, max_elements), k);
}

PointRelation relative_nrp(const FactorMap& pi, int k, std::size_t max_elements) {
  return nrp_relation(pi.domain, k, max_elements).intersect(PointRelation::kernel(pi.assign));
}

GroupExtensionVerdict group_extension_check(const FactorMap& pi, const std::vector<Perm>& k_generators, int K,
                                            std::size_t max_elements) {
  const std::size_t n = pi.domain.size();
  GroupExtensionVerdict v;
  for (const Perm& a : k_generators) {
    if (a.size() != n) throw InvalidInput("K generator has the wrong length");
    for (const Perm& g : pi.domain.generators()) {
      for (Point x = 0; x < n; ++x) {
        if (a[g[x]] != g[a[x]]) throw InvalidInput("K does not commute with the acting group");
      }
    }
  }
  std::vector<Perm> Kperms = permutation_closure(k_generators, n, max_elements);
  PointRelation orbit(n);
  for (Point x = 0; x < n; ++x) {
    for (const Perm& a : Kperms) orbit.add(x, a[x]);
  }
  PointRelation fibers = PointRelation::kernel(pi.assign);
  v.group_extension = orbit == fibers;
  if (!v.group_extension) {
    for (auto [x, y] : fibers.pairs()) {
      if (!orbit.contains(x, y)) {
        v.witness = {x, y};
        break;
      }
    }
    if (!v.witness) {
      for (auto [x, y] : orbit.pairs()) {
        if (!fibers.contains(x, y)) {
          v.witness = {x, y};
          break;
        }
      }
    }
  }
  bool free_action = true;
  for (std::size_t i = 1; i < Kperms.size() && free_action; ++i) {
    for (Point x = 0; x < n && free_action; ++x) free_action = Kperms[i][x] != x;
  }
  bool abelian = true;
  for (const Perm& a : k_generators) {
    for (const Perm& b : k_generators) {
      for (Point x = 0; x < n && abelian; ++x) abelian = a[b[x]] == b[a[x]];
    }
  }
  v.principal_abelian = v.group_extension && abelian && free_action;
  if (K >= 1) {
    CubeSpace cubes = dynamical_cubes(pi.domain, K, max_elements);
    v.nrp_bound = K - 1;
    for (int l = 0; l + 1 <= K; ++l) {
      PointRelation r(n);
      for (Point x = 0; x < n; ++x) {
        for (Point y = 0; y < n; ++y) {
          if (cubes.contains(corner_configuration(l + 1, x, y))) r.add(x, y);
        }
      }
      for (const Perm& a : k_generators) {
        for (auto [x, y] : r.pairs()) {
          if (!r.contains(a[x], a[y])) v.k_invariant = false;
        }
      }
    }
  }
  return v;
}

}  // namespace nspace
