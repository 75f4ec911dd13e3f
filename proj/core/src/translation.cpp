#include "nspace/translation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nspace/relation.hpp"

namespace nspace {

namespace {

Perm compose_perm(const Perm& a, const Perm& b) {  // a ∘ b
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm inverse_perm(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<std::uint32_t>(i);
  return c;
}

bool is_permutation(const Perm& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto v : p) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::optional<FaceWitness> face_check(const CubeSpace& X, const Perm& phi, int k) {
  for (int n = std::max(k, 1); n <= X.max_dim(); ++n) {
    const auto faces = enumerate_faces_of_dim(n, n - k);
    for (const CubeKey& c : X.cubes(n)) {
      for (const Face& F : faces) {
        CubeKey m = c;
        for (std::size_t v = 0; v < vertex_count(n); ++v) {
          if ((v & F.fixed_mask) == F.fixed_values) m.bytes[v] = static_cast<std::uint8_t>(phi[c.bytes[v]]);
        }
        if (!X.contains(n, m)) return FaceWitness{n, F, c.unpack(n), m.unpack(n)};
      }
    }
  }
  return std::nullopt;
}

// ⌞^k(c, phi(c)) ∈ C^{s+1} for every c ∈ C^{s+1-k}.
bool criterion_check(const CubeSpace& X, const Perm& phi, int k, int s) {
  const int m = s + 1 - k;
  const std::size_t nv = vertex_count(s + 1);
  const std::size_t low = vertex_count(m) - 1;
  const std::size_t ones = vertex_count(k) - 1;
  auto test = [&](const CubeKey& c) {
    CubeKey out;
    for (std::size_t v = 0; v < nv; ++v) {
      Point p = c.bytes[v & low];
      out.bytes[v] = static_cast<std::uint8_t>((v >> m) == ones ? phi[p] : p);
    }
    return X.contains(s + 1, out);
  };
  if (m == 0) {
    for (Point p = 0; p < X.size(); ++p) {
      CubeKey c;
      c.bytes[0] = static_cast<std::uint8_t>(p);
      if (!test(c)) return false;
    }
    return true;
  }
  for (const CubeKey& c : X.cubes(m)) {
    if (!test(c)) return false;
  }
  return true;
}

TranslationVerdict space_verdict(const CubeSpace& X, const Perm& phi, int k, std::optional<int> degree, bool with_criterion) {
  TranslationVerdict v;
  v.witness = face_check(X, phi, k);
  v.direct = !v.witness;
  if (with_criterion && degree && k <= *degree + 1 && *degree + 1 <= X.max_dim()) {
    v.criterion_degree = *degree;
    v.criterion = criterion_check(X, phi, k, *degree);
    v.agree = *v.criterion == v.direct;
  }
  return v;
}

struct FiberData {
  std::vector<Point> points;
  CubeSpace space;
  std::optional<int> degree;
};

std::vector<FiberData> fibers_of(const CubeMap& f, bool with_degree) {
  std::vector<FiberData> out;
  for (Point y = 0; y < f.codomain.size(); ++y) {
    auto pts = fiber_points(f, y);
    if (pts.empty()) continue;
    FiberData d{pts, subcubespace(f.domain, pts), std::nullopt};
    if (with_degree) d.degree = nilspace_degree(d.space);
    out.push_back(std::move(d));
  }
  return out;
}

Perm restrict_to(const FiberData& F, const Perm& phi) {
  Perm local(F.points.size());
  for (std::size_t i = 0; i < F.points.size(); ++i) {
    auto it = std::lower_bound(F.points.begin(), F.points.end(), phi[F.points[i]]);
    if (it == F.points.end() || *it != phi[F.points[i]]) throw InvalidInput("permutation does not preserve the fibers of the map");
    local[i] = static_cast<std::uint32_t>(it - F.points.begin());
  }
  return local;
}

TranslationVerdict map_verdict(const CubeMap& f, const std::vector<FiberData>& fibers, const Perm& phi, int k,
                               bool with_criterion) {
  if (!is_permutation(phi, f.domain.size())) throw InvalidInput("not a permutation of the domain");
  TranslationVerdict v;
  v.direct = true;
  bool criterion_all = true, criterion_ok = true;
  for (const FiberData& F : fibers) {
    Perm local = restrict_to(F, phi);
    bool fiber_direct;
    if (!is_automorphism(F.space, local)) {
      fiber_direct = false;
    } else {
      auto w = face_check(F.space, local, k);
      fiber_direct = !w;
      if (w && !v.witness) {
        // report the witness in domain points
        for (auto& p : w->cube.values) p = F.points[p];
        for (auto& p : w->modified.values) p = F.points[p];
        v.witness = w;
      }
    }
    v.direct = v.direct && fiber_direct;
    if (with_criterion && F.degree && k <= *F.degree + 1 && *F.degree + 1 <= F.space.max_dim()) {
      v.criterion_degree = std::max(v.criterion_degree, *F.degree);
      criterion_ok = criterion_ok && criterion_check(F.space, local, k, *F.degree);
    } else {
      criterion_all = false;
    }
  }
  if (with_criterion && criterion_all) {
    v.criterion = criterion_ok;
    v.agree = criterion_ok == v.direct;
  }
  return v;
}

bool closure_holds(const std::vector<Perm>& sorted) {
  for (const Perm& a : sorted) {
    if (!std::binary_search(sorted.begin(), sorted.end(), inverse_perm(a))) return false;
    for (const Perm& b : sorted) {
      if (!std::binary_search(sorted.begin(), sorted.end(), compose_perm(a, b))) return false;
    }
  }
  return !sorted.empty();
}

TranslationGroup finish_group(int k, std::vector<Perm> elems) {
  std::sort(elems.begin(), elems.end());
  TranslationGroup g;
  g.level = k;
  g.elements = std::move(elems);
  g.closed = closure_holds(g.elements);
  return g;
}

FiltrationEvidence filtration_evidence(std::vector<TranslationGroup> levels) {
  FiltrationEvidence e;
  e.levels = std::move(levels);
  const int top = static_cast<int>(e.levels.size()) - 1;
  for (int i = 1; i <= top; ++i) {
    for (const Perm& p : e.levels[i].elements) {
      if (!e.levels[i - 1].contains(p)) e.nested = false;
    }
  }
  for (int i = 0; i <= top && e.commutators; ++i) {
    for (int j = i; j <= top && e.commutators; ++j) {
      const TranslationGroup& target = e.levels[std::min(i + j, top)];
      for (const Perm& a : e.levels[i].elements) {
        const Perm ai = inverse_perm(a);
        for (const Perm& b : e.levels[j].elements) {
          Perm c = compose_perm(compose_perm(ai, inverse_perm(b)), compose_perm(a, b));
          if (!target.contains(c)) {
            e.commutators = false;
            e.witness = {i, j};
            break;
          }
        }
        if (!e.commutators) break;
      }
    }
  }
  return e;
}

}  // namespace

bool TranslationGroup::contains(const Perm& p) const { return std::binary_search(elements.begin(), elements.end(), p); }

bool is_automorphism(const CubeSpace& X, const Perm& phi) {
  if (!is_permutation(phi, X.size())) return false;
  for (int k = 1; k <= X.max_dim(); ++k) {
    for (const CubeKey& c : X.cubes(k)) {
      CubeKey m;
      for (std::size_t v = 0; v < vertex_count(k); ++v) m.bytes[v] = static_cast<std::uint8_t>(phi[c.bytes[v]]);
      if (!X.contains(k, m)) return false;
    }
  }
  return true;
}

TranslationVerdict is_k_translation(const CubeSpace& X, const Perm& phi, int k) {
  if (k < 0) throw InvalidInput("translation level must be non-negative");
  if (!is_automorphism(X, phi)) throw InvalidInput("the permutation is not an automorphism");
  return space_verdict(X, phi, k, nilspace_degree(X), true);
}

TranslationVerdict is_k_translation(const CubeMap& f, const Perm& phi, int k) {
  if (k < 0) throw InvalidInput("translation level must be non-negative");
  return map_verdict(f, fibers_of(f, true), phi, k, true);
}

TranslationGroup enumerate_automorphisms(const CubeSpace& X, const Caps& caps) {
  auto e = enumerate_isomorphisms(X, X, caps.max_search_nodes, caps.max_enumeration);
  if (!e.complete) throw CapExceeded("automorphism search exceeded its cap");
  return finish_group(0, std::move(e.maps));
}

TranslationGroup translation_group(const CubeSpace& X, int k, const Caps& caps) {
  auto all = enumerate_automorphisms(X, caps);
  if (k == 0) return all;
  std::vector<Perm> keep;
  for (const Perm& p : all.elements) {
    if (!face_check(X, p, k)) keep.push_back(p);
  }
  return finish_group(k, std::move(keep));
}

TranslationGroup translation_group(const CubeMap& f, int k, const Caps& caps) {
  auto fibers = fibers_of(f, false);
  std::vector<std::vector<Perm>> local;
  std::size_t total = 1;
  for (const FiberData& F : fibers) {
    local.push_back(translation_group(F.space, k, caps).elements);
    total *= local.back().size();
    if (total > caps.max_enumeration) throw CapExceeded("translation group of the map exceeds the enumeration cap");
  }
  std::vector<Perm> elems;
  std::vector<std::size_t> idx(fibers.size(), 0);
  while (true) {
    Perm p(f.domain.size());
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      const Perm& q = local[i][idx[i]];
      for (std::size_t j = 0; j < q.size(); ++j) p[fibers[i].points[j]] = fibers[i].points[q[j]];
    }
    elems.push_back(std::move(p));
    std::size_t i = fibers.size();
    while (i > 0 && ++idx[i - 1] == local[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return finish_group(k, std::move(elems));
}

FiltrationEvidence translation_filtration(const CubeSpace& X, int top, const Caps& caps) {
  auto all = enumerate_automorphisms(X, caps);
  std::vector<TranslationGroup> levels{all};
  for (int k = 1; k <= top; ++k) {
    std::vector<Perm> keep;
    for (const Perm& p : levels.back().elements) {
      if (!face_check(X, p, k)) keep.push_back(p);
    }
    levels.push_back(finish_group(k, std::move(keep)));
  }
  return filtration_evidence(std::move(levels));
}

FiltrationEvidence translation_filtration(const CubeMap& f, int top, const Caps& caps) {
  std::vector<TranslationGroup> levels;
  for (int k = 0; k <= top; ++k) levels.push_back(translation_group(f, k, caps));
  return filtration_evidence(std::move(levels));
}

FiniteGroup permutation_group(const std::vector<Perm>& elements) {
  std::map<Perm, Elem> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<Elem>(i);
  const std::size_t n = elements.size();
  const std::size_t width = std::to_string(n).size();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    std::string d = std::to_string(i);
    labels.push_back("t" + std::string(width - d.size(), '0') + d);
  }
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(compose_perm(elements[a], elements[b]));
      if (it == index.end()) throw InvalidInput("permutations are not closed under composition");
      t[a][b] = it->second;
    }
  }
  return FiniteGroup::from_table(std::move(labels), std::move(t));
}

namespace {

struct LowerLevel {
  CubeMap lower;
  std::vector<Point> projection;
};

LowerLevel lower_level(const CubeMap& g, int s) {
  if (s < 1) throw InvalidInput("pushforward needs s >= 1");
  if (!is_s_fibration(g, s)) throw InvalidInput("pushforward: the map is not an " + std::to_string(s) + "-fibration");
  auto rel = relative_canonical_relation(g, s - 1);
  if (rel.status != RelationStatus::Equivalence) throw InternalAlarm("~_{g,s-1} is not an equivalence on an s-fibration");
  auto q = quotient_cubespace(g.domain, rel.relation);
  std::vector<Point> a(q.quotient.size(), 0);
  for (Point x = 0; x < g.domain.size(); ++x) a[q.projection[x]] = g.assign[x];
  return {CubeMap(q.quotient, g.codomain, std::move(a)), q.projection};
}

Perm push(const LowerLevel& L, const Perm& phi) {
  const std::size_t m = L.lower.domain.size();
  Perm img(m, static_cast<std::uint32_t>(m));
  for (Point x = 0; x < phi.size(); ++x) {
    auto& slot = img[L.projection[x]];
    Point t = L.projection[phi[x]];
    if (slot == m) slot = t;
    else if (slot != t) throw InternalAlarm("pushforward is not well defined across a fiber");
  }
  return img;
}

}  // namespace

Pushforward pushforward_translation(const CubeMap& g, int s, const Perm& phi, int k) {
  if (!is_k_translation(g, phi, k).direct) throw InvalidInput("the permutation is not in Aut_" + std::to_string(k) + "(g)");
  LowerLevel L = lower_level(g, s);
  Pushforward out;
  out.image = push(L, phi);
  out.certified = is_k_translation(L.lower, out.image, k).direct;
  if (!out.certified) throw InternalAlarm("pushforward of a translation is not a translation");
  out.lower = std::move(L.lower);
  out.projection = std::move(L.projection);
  return out;
}

PushforwardReport pushforward_report(const CubeMap& g, int s, int k, const Caps& caps) {
  LowerLevel L = lower_level(g, s);
  auto domain = translation_group(g, k, caps);
  auto target = translation_group(L.lower, k, caps);
  PushforwardReport r;
  r.domain_order = domain.order();
  r.target_order = target.order();
  std::vector<Perm> images;
  for (const Perm& p : domain.elements) images.push_back(push(L, p));
  std::set<Perm> distinct(images.begin(), images.end());
  r.image_order = distinct.size();
  bool inside = std::all_of(distinct.begin(), distinct.end(), [&](const Perm& p) { return target.contains(p); });
  if (!inside) throw InternalAlarm("pushforward leaves Aut_k(g_{s-1})");
  r.surjective = r.image_order == r.target_order;
  r.homomorphism = true;
  for (std::size_t a = 0; a < domain.order() && r.homomorphism; ++a) {
    for (std::size_t b = 0; b < domain.order(); ++b) {
      if (push(L, compose_perm(domain.elements[a], domain.elements[b])) != compose_perm(images[a], images[b])) {
        r.homomorphism = false;
        break;
      }
    }
  }
  return r;
}

TranslationFiltration translation_hk_filtration(const CubeMap& f, const Caps& caps) {
  auto aut1 = translation_group(f, 1, caps);
  if (aut1.order() > caps.max_group_order) throw CapExceeded("Aut_1 exceeds the group order cap");
  const std::vector<Perm>& elements = aut1.elements;
  FiniteGroup G = permutation_group(elements);
  std::vector<Elem> all(G.order());
  for (Elem i = 0; i < G.order(); ++i) all[i] = i;
  std::vector<std::vector<Elem>> levels{all, all};
  for (int k = 2; levels.back().size() > 1; ++k) {
    if (k > f.domain.max_dim()) throw InvalidInput("translation filtration does not reach the trivial group within max_dim");
    std::vector<Elem> lvl;
    for (const Perm& p : translation_group(f, k, caps).elements) {
      auto it = std::lower_bound(elements.begin(), elements.end(), p);
      lvl.push_back(static_cast<Elem>(it - elements.begin()));
    }
    levels.push_back(std::move(lvl));
  }
  try {
    return TranslationFiltration{elements, Filtration(std::move(G), std::move(levels))};
  } catch (const InvalidInput& e) {
    throw InternalAlarm(std::string("translation groups do not form a filtration: ") + e.what());
  }
}

Configuration evaluate_hk_on_cube(const CubeMap& f, const std::vector<Perm>& hk_elt, const Configuration& c,
                                  const Caps& caps) {
  const int n = c.dim;
  if (hk_elt.size() != vertex_count(n)) throw InvalidInput("HK tuple length does not match the cube dimension");
  if (!f.domain.contains(c)) throw InvalidInput("configuration is not a cube");
  for (Point p : c.values) {
    if (f.assign[p] != f.assign[c.values[0]]) throw InvalidInput("cube does not lie in a single fiber");
  }
  auto tf = translation_hk_filtration(f, caps);
  CubeKey key;
  for (std::size_t v = 0; v < hk_elt.size(); ++v) {
    auto it = std::lower_bound(tf.elements.begin(), tf.elements.end(), hk_elt[v]);
    if (it == tf.elements.end() || *it != hk_elt[v]) throw InvalidInput("HK tuple entry is not a 1-translation");
    key.bytes[v] = static_cast<std::uint8_t>(it - tf.elements.begin());
  }
  auto hk = hk_cube_group(tf.filtration, n, caps.max_hk_elements);
  if (!std::binary_search(hk.elements.begin(), hk.elements.end(), key)) throw InvalidInput("tuple is not in HK^n(Aut(f))");
  std::vector<Point> out(c.values.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = hk_elt[v][c.values[v]];
  Configuration r(n, std::move(out));
  if (!f.domain.contains(r)) throw InternalAlarm("HK evaluation left the cube set");
  for (Point p : r.values) {
    if (f.assign[p] != f.assign[c.values[0]]) throw InternalAlarm("HK evaluation left the fiber");
  }
  return r;
}

}  // namespace nspace
