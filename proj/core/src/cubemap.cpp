#include "nspace/cubemap.hpp"

#include <algorithm>
#include <map>

namespace nspace {

CubeMap::CubeMap(CubeSpace d, CubeSpace c, std::vector<Point> a)
    : domain(std::move(d)), codomain(std::move(c)), assign(std::move(a)) {
  if (assign.size() != domain.size()) {
    throw InvalidInput("map assigns " + std::to_string(assign.size()) + " points but the domain has " +
                       std::to_string(domain.size()));
  }
  for (Point p : assign) {
    if (p >= codomain.size()) throw InvalidInput("map value outside the codomain");
  }
  if (domain.max_dim() != codomain.max_dim()) throw InvalidInput("map between spaces of different max_dim");
}

CubeKey CubeMap::image(const CubeKey& c, int k) const {
  CubeKey out;
  for (std::size_t v = 0; v < vertex_count(k); ++v) out.bytes[v] = static_cast<std::uint8_t>(assign[c.bytes[v]]);
  return out;
}

Configuration CubeMap::image(const Configuration& c) const {
  Configuration out = c;
  for (Point& p : out.values) p = assign.at(p);
  return out;
}

CubeMap identity_map(const CubeSpace& X) {
  std::vector<Point> a(X.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<Point>(i);
  return CubeMap(X, X, std::move(a));
}

CubeSpace point_space(int max_dim) {
  std::vector<std::vector<CubeKey>> keys(max_dim + 1);
  for (int k = 1; k <= max_dim; ++k) {
    CubeKey c;
    for (std::size_t v = 0; v < vertex_count(k); ++v) c.bytes[v] = 0;
    keys[k].push_back(c);
  }
  return CubeSpace::from_keys({"*"}, max_dim, std::move(keys));
}

CubeMap map_to_point(const CubeSpace& X) {
  return CubeMap(X, point_space(X.max_dim()), std::vector<Point>(X.size(), 0));
}

CubeMap compose(const CubeMap& f, const CubeMap& g) {
  if (!(f.codomain == g.domain)) throw InvalidInput("compose: codomain and domain differ");
  std::vector<Point> a(f.domain.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g.assign[f.assign[i]];
  return CubeMap(f.domain, g.codomain, std::move(a));
}

std::optional<MorphismWitness> morphism_witness(const CubeMap& f) {
  for (int k = 1; k <= f.domain.max_dim(); ++k) {
    for (const CubeKey& c : f.domain.cubes(k)) {
      CubeKey img = f.image(c, k);
      if (!f.codomain.contains(k, img)) return MorphismWitness{k, c.unpack(k), img.unpack(k)};
    }
  }
  return std::nullopt;
}

CubeKey Corner::key() const {
  if (values.size() + 1 != vertex_count(dim)) throw InvalidInput("corner needs 2^k - 1 values");
  return CubeKey::pack(values);
}

void validate_corner(const CubeSpace& X, const Corner& c) {
  if (c.dim < 0 || c.dim > X.max_dim()) throw InvalidInput("corner dimension outside 0..max_dim");
  if (c.values.size() + 1 != vertex_count(c.dim)) throw InvalidInput("corner needs 2^k - 1 values");
  for (Point p : c.values) {
    if (p >= X.size()) throw InvalidInput("corner refers to an unknown point");
  }
  for (int i = 0; i < c.dim; ++i) {
    std::vector<Point> face;
    for (std::size_t v = 0; v + 1 < vertex_count(c.dim); ++v) {
      if (!((v >> i) & 1u)) face.push_back(c.values[v]);
    }
    if (!X.contains(Configuration(c.dim - 1, face))) {
      throw InvalidInput("corner's lower face along coordinate " + std::to_string(i + 1) + " is not a cube");
    }
  }
}

std::vector<Point> complete_corner(const CubeSpace& X, const Corner& c) {
  validate_corner(X, c);
  auto s = X.completions(c.dim, c.key());
  return std::vector<Point>(s.begin(), s.end());
}

FibrancyReport is_fibrant(const CubeSpace& X) {
  FibrancyReport rep;
  rep.bound = X.max_dim();
  for (int k = 0; k <= X.max_dim() && rep.ok; ++k) {
    for_each_corner(X, k, [&](const CubeKey& corner) {
      if (!X.completions(k, corner).empty()) return true;
      CubeKey shown = corner;
      shown.bytes[vertex_count(k) - 1] = shown.bytes[0];
      rep.ok = false;
      rep.witness = CornerWitness{k, shown.unpack(k)};
      return false;
    });
  }
  return rep;
}

namespace {

bool same_corner(const CubeKey& a, const CubeKey& b, int k) {
  for (std::size_t v = 0; v + 1 < vertex_count(k); ++v) {
    if (a.bytes[v] != b.bytes[v]) return false;
  }
  return true;
}

}  // namespace

std::optional<UniquenessWitness> uniqueness_witness(const CubeSpace& X, int k) {
  if (k < 0 || k > X.max_dim()) throw InvalidInput("uniqueness: dimension outside 0..max_dim");
  const auto& cubes = X.cubes(k);
  for (std::size_t i = 1; i < cubes.size(); ++i) {
    if (same_corner(cubes[i - 1], cubes[i], k)) return UniquenessWitness{k, cubes[i - 1].unpack(k), cubes[i].unpack(k)};
  }
  return std::nullopt;
}

std::optional<UniquenessWitness> uniqueness_witness(const CubeMap& f, int k) {
  if (k < 0 || k > f.domain.max_dim()) throw InvalidInput("uniqueness: dimension outside 0..max_dim");
  const auto& cubes = f.domain.cubes(k);
  const std::size_t last = vertex_count(k) - 1;
  for (std::size_t i = 0; i < cubes.size();) {
    std::size_t j = i + 1;
    while (j < cubes.size() && same_corner(cubes[i], cubes[j], k)) ++j;
    for (std::size_t a = i; a < j; ++a) {
      for (std::size_t b = a + 1; b < j; ++b) {
        if (f.assign[cubes[a].bytes[last]] == f.assign[cubes[b].bytes[last]]) {
          return UniquenessWitness{k, cubes[a].unpack(k), cubes[b].unpack(k)};
        }
      }
    }
    i = j;
  }
  return std::nullopt;
}

std::optional<int> nilspace_degree(const CubeSpace& X) {
  if (!is_fibrant(X).ok) return std::nullopt;
  for (int s = 0; s + 1 <= X.max_dim(); ++s) {
    if (has_k_uniqueness(X, s + 1)) return s;
  }
  return std::nullopt;
}

bool is_relatively_k_ergodic(const CubeMap& f, int k) {
  if (k < 0 || k > f.domain.max_dim()) throw InvalidInput("relative ergodicity: dimension outside 0..max_dim");
  std::vector<std::size_t> fiber(f.codomain.size(), 0);
  for (Point p : f.assign) ++fiber[p];
  std::map<CubeKey, std::size_t> count;
  for (const CubeKey& c : f.domain.cubes(k)) ++count[f.image(c, k)];
  for (const CubeKey& c : f.codomain.cubes(k)) {
    std::size_t prod = 1;
    for (std::size_t v = 0; v < vertex_count(k); ++v) prod *= fiber[c.bytes[v]];
    auto it = count.find(c);
    if ((it == count.end() ? 0 : it->second) != prod) return false;
  }
  return true;
}

FibrationCertificate is_fibration(const CubeMap& f) {
  FibrationCertificate cert;
  const int K = f.domain.max_dim();
  cert.bound = K;
  if (!is_morphism(f)) {
    cert.morphism = false;
    cert.fibration = false;
    return cert;
  }
  for (int k = 0; k <= K; ++k) {
    bool ok = true;
    for_each_corner(f.domain, k, [&](const CubeKey& corner) {
      const CubeKey image = f.image(corner, static_cast<int>(k));
      CubeKey img_corner = image;
      if (k > 0) img_corner.bytes[vertex_count(k) - 1] = kHole;
      auto targets = f.codomain.completions(k, img_corner);
      auto lifts = f.domain.completions(k, corner);
      std::vector<bool> hit(f.codomain.size(), false);
      for (std::uint8_t x : lifts) hit[f.assign[x]] = true;
      for (std::uint8_t y : targets) {
        if (!hit[y]) {
          ok = false;
          if (!cert.witness) {
            CubeKey shown = corner;
            shown.bytes[vertex_count(k) - 1] = k > 0 ? shown.bytes[0] : 0;
            cert.witness = FibrationWitness{k, shown.unpack(k), y};
          }
          return false;
        }
      }
      return true;
    });
    cert.completion.push_back(ok);
    if (!ok) cert.fibration = false;
  }
  for (int k = 0; k <= K; ++k) cert.uniqueness.push_back(has_k_uniqueness(f, k));
  for (int s = 0; s + 1 <= K; ++s) {
    if (cert.uniqueness[s + 1]) {
      cert.degree = s;
      break;
    }
  }
  return cert;
}

bool is_s_fibration(const CubeMap& f, int s) {
  auto cert = is_fibration(f);
  return cert.fibration && cert.degree && *cert.degree <= s;
}

UniversalPropertyVerdict universal_property_check(const CubeMap& f, const CubeMap& g) {
  UniversalPropertyVerdict v;
  v.f_fibration = is_fibration(f).fibration;
  v.g_fibration = is_fibration(g).fibration;
  v.gf_fibration = is_fibration(compose(f, g)).fibration;
  v.consistent = !(v.f_fibration && v.gf_fibration && !v.g_fibration);
  return v;
}

std::vector<Point> fiber_points(const CubeMap& f, Point y) {
  std::vector<Point> out;
  for (std::size_t x = 0; x < f.assign.size(); ++x) {
    if (f.assign[x] == y) out.push_back(static_cast<Point>(x));
  }
  return out;
}

CubeSpace fiber_subcubespace(const CubeMap& f, Point y) {
  if (y >= f.codomain.size()) throw InvalidInput("fiber over an unknown codomain point");
  auto pts = fiber_points(f, y);
  if (pts.empty()) throw InvalidInput("empty fiber over '" + f.codomain.label(y) + "'");
  return subcubespace(f.domain, pts);
}

namespace {

struct IsoSearch {
  const CubeSpace& X;
  const CubeSpace& Y;
  const std::vector<std::uint32_t>* cx;
  const std::vector<std::uint32_t>* cy;
  std::size_t node_cap;
  std::size_t max_solutions;
  std::size_t n;
  std::vector<std::vector<std::size_t>> sig_x, sig_y;
  std::vector<std::vector<std::pair<int, CubeKey>>> bucket;
  std::vector<Point> map;
  std::vector<bool> used;
  std::size_t nodes = 0;
  bool capped = false;
  std::vector<std::vector<Point>> found;

  IsoSearch(const CubeSpace& x, const CubeSpace& y, const std::vector<std::uint32_t>* a,
            const std::vector<std::uint32_t>* b, std::size_t cap, std::size_t max_sol)
      : X(x), Y(y), cx(a), cy(b), node_cap(cap), max_solutions(max_sol), n(x.size()) {
    sig_x = signatures(X);
    sig_y = signatures(Y);
    bucket.resize(n);
    for (int k = 1; k <= X.max_dim(); ++k) {
      for (const CubeKey& c : X.cubes(k)) {
        std::uint8_t m = 0;
        for (std::size_t v = 0; v < vertex_count(k); ++v) m = std::max(m, c.bytes[v]);
        bucket[m].push_back({k, c});
      }
    }
    map.assign(n, 0);
    used.assign(n, false);
  }

  static std::vector<std::vector<std::size_t>> signatures(const CubeSpace& S) {
    std::vector<std::vector<std::size_t>> sig(S.size(), std::vector<std::size_t>(2 * S.max_dim(), 0));
    for (int k = 1; k <= S.max_dim(); ++k) {
      for (const CubeKey& c : S.cubes(k)) {
        ++sig[c.bytes[0]][2 * (k - 1)];
        ++sig[c.bytes[vertex_count(k) - 1]][2 * (k - 1) + 1];
      }
    }
    return sig;
  }

  // returns false to abort the whole search
  bool dfs(std::size_t i) {
    if (i == n) {
      found.push_back(map);
      return found.size() < max_solutions;
    }
    for (Point y = 0; y < n; ++y) {
      if (used[y] || sig_x[i] != sig_y[y]) continue;
      if (cx && (*cx)[i] != (*cy)[y]) continue;
      if (++nodes > node_cap) {
        capped = true;
        return false;
      }
      map[i] = y;
      bool ok = true;
      for (const auto& [k, c] : bucket[i]) {
        CubeKey img;
        for (std::size_t v = 0; v < vertex_count(k); ++v) img.bytes[v] = static_cast<std::uint8_t>(map[c.bytes[v]]);
        if (!Y.contains(k, img)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[y] = true;
      bool go = dfs(i + 1);
      used[y] = false;
      if (!go) return false;
    }
    return true;
  }
};

bool comparable(const CubeSpace& X, const CubeSpace& Y) {
  if (X.size() != Y.size() || X.max_dim() != Y.max_dim()) return false;
  for (int k = 1; k <= X.max_dim(); ++k) {
    if (X.cubes(k).size() != Y.cubes(k).size()) return false;
  }
  return true;
}

}  // namespace

IsoResult find_isomorphism(const CubeSpace& X, const CubeSpace& Y, std::size_t node_cap,
                           const std::vector<std::uint32_t>* color_x, const std::vector<std::uint32_t>* color_y) {
  IsoResult r;
  if (!comparable(X, Y)) return r;
  IsoSearch s(X, Y, color_x, color_y, node_cap, 1);
  s.dfs(0);
  r.nodes = s.nodes;
  if (!s.found.empty()) {
    r.status = SearchStatus::Found;
    r.map = s.found.front();
  } else {
    r.status = s.capped ? SearchStatus::CapExceeded : SearchStatus::None;
  }
  return r;
}

IsoEnumeration enumerate_isomorphisms(const CubeSpace& X, const CubeSpace& Y, std::size_t node_cap,
                                      std::size_t max_solutions, const std::vector<std::uint32_t>* color_x,
                                      const std::vector<std::uint32_t>* color_y) {
  IsoEnumeration e;
  if (!comparable(X, Y)) return e;
  IsoSearch s(X, Y, color_x, color_y, node_cap, max_solutions + 1);
  s.dfs(0);
  e.nodes = s.nodes;
  e.maps = std::move(s.found);
  if (s.capped || e.maps.size() > max_solutions) {
    e.complete = false;
    if (e.maps.size() > max_solutions) e.maps.resize(max_solutions);
  }
  return e;
}

}  // namespace nspace
