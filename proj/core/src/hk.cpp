#include "nspace/hk.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

namespace nspace {

CubeKey face_element(const FiniteGroup& G, int k, const Face& F, Elem x) {
  CubeKey key;
  for (std::size_t v = 0; v < vertex_count(k); ++v) {
    bool on = (v & F.fixed_mask) == (F.fixed_values & F.fixed_mask);
    key.bytes[v] = static_cast<std::uint8_t>(on ? x : G.identity());
  }
  return key;
}

HKCubeGroup hk_cube_group(const Filtration& F, int k, std::size_t max_elements) {
  const FiniteGroup& G = F.group();
  if (k < 0 || k > kMaxCubeDim) throw CapExceeded("cube dimension above the hard cap");
  if (G.order() >= kHole) throw CapExceeded("group too large for packed cubes");
  HKCubeGroup out;
  out.k = k;
  for (const Face& face : enumerate_faces(k)) {
    const auto& lvl = F.level(k - face.dim);
    for (Elem x : G.generators_of(lvl)) out.generators.push_back(face_element(G, k, face, x));
  }
  const std::size_t n = vertex_count(k);
  CubeKey id;
  for (std::size_t v = 0; v < n; ++v) id.bytes[v] = static_cast<std::uint8_t>(G.identity());
  std::unordered_set<CubeKey, CubeKeyHash> seen{id};
  std::vector<CubeKey> queue{id};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const CubeKey& g : out.generators) {
      CubeKey next;
      for (std::size_t v = 0; v < n; ++v) next.bytes[v] = static_cast<std::uint8_t>(G.mul(queue[h].bytes[v], g.bytes[v]));
      if (seen.insert(next).second) {
        queue.push_back(next);
        if (queue.size() > max_elements) {
          throw CapExceeded("HK^" + std::to_string(k) + " exceeds the element cap " + std::to_string(max_elements));
        }
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  out.elements = std::move(queue);
  return out;
}

std::vector<Point> hk_points(const FiniteGroup& G) {
  std::vector<Elem> order(G.order());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return G.label(a) < G.label(b); });
  std::vector<Point> pt(G.order());
  for (std::size_t i = 0; i < order.size(); ++i) pt[order[i]] = static_cast<Point>(i);
  return pt;
}

CubeSpace hk_cubespace(const Filtration& F, int K, std::size_t max_elements) {
  const FiniteGroup& G = F.group();
  auto pt = hk_points(G);
  std::vector<std::string> labels(G.order());
  for (Elem a = 0; a < G.order(); ++a) labels[pt[a]] = G.label(a);
  std::vector<std::vector<CubeKey>> keys(K + 1);
  for (int k = 1; k <= K; ++k) {
    for (const CubeKey& t : hk_cube_group(F, k, max_elements).elements) {
      CubeKey c;
      for (std::size_t v = 0; v < vertex_count(k); ++v) c.bytes[v] = static_cast<std::uint8_t>(pt[t.bytes[v]]);
      keys[k].push_back(c);
    }
  }
  return CubeSpace::from_keys(std::move(labels), K, std::move(keys));
}

bool d_s_predicate(const FiniteGroup& A, int s, int k, const CubeKey& tuple) {
  if (s + 1 > k) return true;
  for (const Face& f : enumerate_faces_of_dim(k, s + 1)) {
    Elem sum = A.identity();
    std::size_t pos = 0;
    for (std::size_t v : face_vertices(k, f.fixed_mask, f.fixed_values)) {
      Elem x = tuple.bytes[v];
      sum = A.mul(sum, (popcount(pos) & 1) ? A.inv(x) : x);
      ++pos;
    }
    if (sum != A.identity()) return false;
  }
  return true;
}

CubeSpace d_s_cubespace(const FiniteGroup& A, int s, int K, std::size_t max_elements) {
  if (!A.is_abelian()) throw InvalidInput("D_s(A) needs an abelian group");
  Filtration F = Filtration::constant(A, s);
  auto pt = hk_points(A);
  std::vector<Elem> elem_of(A.order());
  for (Elem a = 0; a < A.order(); ++a) elem_of[pt[a]] = a;
  CubeSpace X = hk_cubespace(F, K, max_elements);
  // cross-check the closure against the face predicate
  for (int k = 1; k <= K; ++k) {
    std::size_t count = 0;
    std::size_t total = 1;
    for (std::size_t v = 0; v < vertex_count(k); ++v) total *= A.order();
    if (total <= max_elements) {
      for (std::size_t idx = 0; idx < total; ++idx) {
        CubeKey t;
        std::size_t r = idx;
        for (std::size_t v = 0; v < vertex_count(k); ++v) {
          t.bytes[v] = static_cast<std::uint8_t>(r % A.order());
          r /= A.order();
        }
        if (d_s_predicate(A, s, k, t)) ++count;
      }
      if (count != X.cubes(k).size()) {
        throw InternalAlarm("D_s(A): BFS closure and face predicate disagree in dimension " + std::to_string(k));
      }
    }
    for (const CubeKey& c : X.cubes(k)) {
      CubeKey t;
      for (std::size_t v = 0; v < vertex_count(k); ++v) t.bytes[v] = static_cast<std::uint8_t>(elem_of[c.bytes[v]]);
      if (!d_s_predicate(A, s, k, t)) throw InternalAlarm("D_s(A): BFS produced a tuple outside the face predicate");
    }
  }
  return X;
}

HKQuotient hk_quotient_cubespace(const Filtration& F, const std::vector<Elem>& gamma, int K,
                                 std::size_t max_elements) {
  const FiniteGroup& G = F.group();
  std::vector<Elem> sub = gamma;
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  if (!G.is_subgroup(sub)) throw InvalidInput("quotient: the given set is not a subgroup");
  // coset gΓ, labeled by the minimal label among its elements
  std::vector<std::string> coset_label(G.order());
  for (Elem g = 0; g < G.order(); ++g) {
    std::string best;
    for (Elem y : sub) {
      const std::string& l = G.label(G.mul(g, y));
      if (best.empty() || l < best) best = l;
    }
    coset_label[g] = best;
  }
  std::vector<std::string> labels = coset_label;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  HKQuotient q;
  q.projection.resize(G.order());
  for (Elem g = 0; g < G.order(); ++g) {
    q.projection[g] = static_cast<Point>(std::lower_bound(labels.begin(), labels.end(), coset_label[g]) - labels.begin());
  }
  std::vector<std::vector<CubeKey>> keys(K + 1);
  for (int k = 1; k <= K; ++k) {
    for (const CubeKey& t : hk_cube_group(F, k, max_elements).elements) {
      CubeKey c;
      for (std::size_t v = 0; v < vertex_count(k); ++v) c.bytes[v] = static_cast<std::uint8_t>(q.projection[t.bytes[v]]);
      keys[k].push_back(c);
    }
  }
  for (const auto& lvl : F.levels()) {
    std::vector<Elem> both;
    std::set_intersection(lvl.begin(), lvl.end(), sub.begin(), sub.end(), std::back_inserter(both));
    q.compatibility.push_back(both.size());
  }
  q.space = CubeSpace::from_keys(std::move(labels), K, std::move(keys));
  return q;
}

}  // namespace nspace
