#include "nspace/relation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace nspace {

PointRelation PointRelation::diagonal(std::size_t n) {
  PointRelation r(n);
  for (Point i = 0; i < n; ++i) r.add(i, i);
  return r;
}

PointRelation PointRelation::full(std::size_t n) {
  PointRelation r(n);
  std::fill(r.m_.begin(), r.m_.end(), 1);
  return r;
}

PointRelation PointRelation::kernel(const std::vector<Point>& key) {
  PointRelation r(key.size());
  for (Point i = 0; i < key.size(); ++i) {
    for (Point j = 0; j < key.size(); ++j) {
      if (key[i] == key[j]) r.add(i, j);
    }
  }
  return r;
}

std::vector<std::pair<Point, Point>> PointRelation::pairs() const {
  std::vector<std::pair<Point, Point>> out;
  for (Point i = 0; i < n_; ++i) {
    for (Point j = 0; j < n_; ++j) {
      if (contains(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t PointRelation::pair_count() const { return std::count(m_.begin(), m_.end(), 1); }

PointRelation PointRelation::intersect(const PointRelation& o) const {
  if (o.n_ != n_) throw InvalidInput("relations on different point sets");
  PointRelation r(n_);
  for (std::size_t i = 0; i < m_.size(); ++i) r.m_[i] = m_[i] & o.m_[i];
  return r;
}

bool PointRelation::subset_of(const PointRelation& o) const {
  if (o.n_ != n_) return false;
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (m_[i] && !o.m_[i]) return false;
  }
  return true;
}

std::optional<EquivalenceWitness> equivalence_witness(const PointRelation& R) {
  const Point n = static_cast<Point>(R.size());
  for (Point x = 0; x < n; ++x) {
    if (!R.contains(x, x)) return EquivalenceWitness{"reflexive", x, x, x};
  }
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (R.contains(x, y) && !R.contains(y, x)) return EquivalenceWitness{"symmetric", x, y, x};
    }
  }
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (!R.contains(x, y)) continue;
      for (Point z = 0; z < n; ++z) {
        if (R.contains(y, z) && !R.contains(x, z)) return EquivalenceWitness{"transitive", x, y, z};
      }
    }
  }
  return std::nullopt;
}

PointRelation close_relation(const PointRelation& R) {
  const Point n = static_cast<Point>(R.size());
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [x, y] : R.pairs()) {
    Point a = find(x), b = find(y);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<Point> key(n);
  for (Point x = 0; x < n; ++x) key[x] = find(x);
  return PointRelation::kernel(key);
}

std::vector<Point> class_index(const PointRelation& R) {
  const Point n = static_cast<Point>(R.size());
  std::vector<Point> cls(n, n);
  Point next = 0;
  for (Point x = 0; x < n; ++x) {
    if (cls[x] != n) continue;
    for (Point y = x; y < n; ++y) {
      if (cls[y] == n && R.contains(x, y)) cls[y] = next;
    }
    ++next;
  }
  return cls;
}

const char* to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::Equivalence: return "EQUIVALENCE";
    case RelationStatus::NotEquivalence: return "NOT_EQUIVALENCE";
    case RelationStatus::Raw: return "RAW";
  }
  return "?";
}

namespace {

RelationResult finish(PointRelation rel, bool gluing) {
  RelationResult r;
  r.gluing = gluing;
  r.witness = equivalence_witness(rel);
  r.relation = std::move(rel);
  if (!gluing) r.status = RelationStatus::Raw;
  else r.status = r.witness ? RelationStatus::NotEquivalence : RelationStatus::Equivalence;
  return r;
}

}  // namespace

RelationResult canonical_relation(const CubeSpace& X, int k) {
  if (k < 0 || k + 1 > X.max_dim()) {
    throw InvalidInput("canonical relation ~_" + std::to_string(k) + " needs max_dim >= " + std::to_string(k + 1));
  }
  PointRelation rel(X.size());
  const auto& cubes = X.cubes(k + 1);
  const std::size_t last = vertex_count(k + 1) - 1;
  for (std::size_t i = 0; i < cubes.size();) {
    std::size_t j = i + 1;
    while (j < cubes.size() && std::equal(cubes[i].bytes.begin(), cubes[i].bytes.begin() + last, cubes[j].bytes.begin())) ++j;
    for (std::size_t a = i; a < j; ++a) {
      for (std::size_t b = i; b < j; ++b) rel.add(cubes[a].bytes[last], cubes[b].bytes[last]);
    }
    i = j;
  }
  return finish(std::move(rel), X.gluing());
}

RelationResult relative_canonical_relation(const CubeMap& f, int k) {
  if (auto w = morphism_witness(f)) throw InvalidInput("relative canonical relation: the map is not a morphism");
  auto base = canonical_relation(f.domain, k);
  return finish(base.relation.intersect(PointRelation::kernel(f.assign)), base.gluing);
}

QuotientCertificate quotient_cubespace(const CubeSpace& X, const PointRelation& R) {
  if (R.size() != X.size()) throw InvalidInput("quotient: relation on a different point set");
  if (auto w = equivalence_witness(R)) {
    throw InvalidInput("quotient: relation is not " + w->property + " at (" + X.label(w->x) + "," + X.label(w->y) + ")");
  }
  QuotientCertificate q;
  q.source = X;
  q.relation = R;
  q.projection = class_index(R);
  // class representatives are minimal members, and indices follow label order
  std::vector<std::string> labels;
  for (Point x = 0; x < X.size(); ++x) {
    if (q.projection[x] == labels.size()) labels.push_back(X.label(x));
  }
  std::vector<std::vector<CubeKey>> keys(X.max_dim() + 1);
  for (int k = 1; k <= X.max_dim(); ++k) {
    for (const CubeKey& c : X.cubes(k)) {
      CubeKey img;
      for (std::size_t v = 0; v < vertex_count(k); ++v) img.bytes[v] = static_cast<std::uint8_t>(q.projection[c.bytes[v]]);
      keys[k].push_back(img);
    }
  }
  q.quotient = CubeSpace::from_keys(std::move(labels), X.max_dim(), std::move(keys));
  return q;
}

namespace {

// First configuration over the classes of q that is not a cube of X.
std::optional<Configuration> find_unlifted(const CubeSpace& X, const std::vector<std::vector<Point>>& members,
                                           const CubeKey& q, int k) {
  const std::size_t n = vertex_count(k);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Point> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = members[q.bytes[i]][idx[i]];
    Configuration c(k, v);
    if (!X.contains(c)) return c;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++idx[i] < members[q.bytes[i]].size()) break;
      idx[i] = 0;
      if (i == 0) return std::nullopt;
    }
  }
}

}  // namespace

UrpVerdict urp_check(const CubeSpace& X, int s) {
  UrpVerdict v;
  v.gluing = X.gluing();
  if (!v.gluing) {
    v.ok = false;
    return v;
  }
  const int top = std::min(s + 1, X.max_dim());
  v.bound = top;
  auto rel = canonical_relation(X, s).relation;
  auto cls = class_index(rel);
  std::size_t nclass = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::vector<Point>> members(nclass);
  for (Point x = 0; x < X.size(); ++x) members[cls[x]].push_back(x);
  for (int k = 1; k <= top; ++k) {
    std::map<CubeKey, std::size_t> count;
    for (const CubeKey& c : X.cubes(k)) {
      CubeKey img;
      for (std::size_t i = 0; i < vertex_count(k); ++i) img.bytes[i] = static_cast<std::uint8_t>(cls[c.bytes[i]]);
      ++count[img];
    }
    for (const auto& [q, cnt] : count) {
      std::size_t prod = 1;
      for (std::size_t i = 0; i < vertex_count(k); ++i) prod *= members[q.bytes[i]].size();
      if (prod != cnt) {
        v.ok = false;
        v.witness = find_unlifted(X, members, q, k);
        return v;
      }
    }
  }
  return v;
}

MaximalFibration maximal_s_fibration(const CubeMap& f, int s) {
  if (!is_fibration(f).fibration) throw InvalidInput("maximal s-fibration: the map is not a fibration");
  auto rel = relative_canonical_relation(f, s);
  if (rel.status != RelationStatus::Equivalence) {
    throw InternalAlarm("relative canonical relation is not an equivalence on a fibration");
  }
  MaximalFibration m{quotient_cubespace(f.domain, rel.relation), {}, {}, false, false};
  m.projection = m.quotient.map();
  std::vector<Point> g(m.quotient.quotient.size(), 0);
  for (Point x = 0; x < f.domain.size(); ++x) g[m.quotient.projection[x]] = f.assign[x];
  m.induced = CubeMap(m.quotient.quotient, f.codomain, std::move(g));
  for (Point x = 0; x < f.domain.size(); ++x) {
    if (m.induced.assign[m.quotient.projection[x]] != f.assign[x]) {
      throw InternalAlarm("maximal s-fibration: f does not factor through the quotient");
    }
  }
  m.projection_fibration = is_fibration(m.projection).fibration;
  m.induced_s_fibration = is_s_fibration(m.induced, s);
  return m;
}

}  // namespace nspace
