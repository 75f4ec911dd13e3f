#include "nspace/cubespace.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace nspace {

namespace {

using KeySet = std::unordered_set<CubeKey, CubeKeyHash>;
using PrefixIndex = std::unordered_map<CubeKey, std::vector<std::uint8_t>, CubeKeyHash>;

CubeKey masked(const CubeKey& key, int len) {
  CubeKey out;
  for (int i = 0; i < len; ++i) out.bytes[i] = key.bytes[i];
  return out;
}

}  // namespace

struct CubeSpace::Impl {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Point> index;
  int max_dim = 0;
  std::vector<std::vector<CubeKey>> cubes;
  std::vector<KeySet> sets;

  mutable std::vector<std::once_flag> prefix_once;
  mutable std::vector<PrefixIndex> prefix;
  mutable std::once_flag gluing_once;
  mutable bool gluing = false;

  const PrefixIndex& prefix_index(int k) const {
    std::call_once(prefix_once[k], [&] {
      PrefixIndex& idx = prefix[k];
      const int n = static_cast<int>(vertex_count(k));
      for (const CubeKey& c : cubes[k]) {
        CubeKey p;
        for (int len = 0; len < n; ++len) {
          auto& list = idx[p];
          if (list.empty() || list.back() != c.bytes[len]) list.push_back(c.bytes[len]);
          p.bytes[len] = c.bytes[len];
        }
      }
    });
    return prefix[k];
  }
};

CubeSpace::CubeSpace() : CubeSpace(from_keys({"0"}, 0, {})) {}

CubeSpace::CubeSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

CubeSpace CubeSpace::from_keys(std::vector<std::string> sorted_labels, int max_dim,
                               std::vector<std::vector<CubeKey>> keys) {
  if (max_dim < 0) throw InvalidInput("max_dim must be non-negative");
  if (max_dim > Caps::kHardMaxDim) {
    throw CapExceeded("max_dim " + std::to_string(max_dim) + " exceeds the hard cap " +
                      std::to_string(Caps::kHardMaxDim));
  }
  if (sorted_labels.empty()) throw InvalidInput("cubespace needs at least one point");
  if (sorted_labels.size() > Caps::kHardMaxPoints) {
    throw CapExceeded("cubespace has " + std::to_string(sorted_labels.size()) +
                      " points; the cap is " + std::to_string(Caps::kHardMaxPoints));
  }
  for (std::size_t i = 1; i < sorted_labels.size(); ++i) {
    if (!(sorted_labels[i - 1] < sorted_labels[i])) {
      throw InvalidInput("point labels must be sorted and unique near '" + sorted_labels[i] + "'");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->labels = std::move(sorted_labels);
  for (std::size_t i = 0; i < impl->labels.size(); ++i) impl->index[impl->labels[i]] = static_cast<Point>(i);
  impl->max_dim = max_dim;
  impl->cubes.resize(max_dim + 1);
  impl->sets.resize(max_dim + 1);
  impl->prefix_once = std::vector<std::once_flag>(max_dim + 1);
  impl->prefix.resize(max_dim + 1);
  const std::size_t n = impl->labels.size();
  for (std::size_t p = 0; p < n; ++p) {
    CubeKey k;
    k.bytes[0] = static_cast<std::uint8_t>(p);
    impl->cubes[0].push_back(k);
  }
  for (int k = 1; k <= max_dim && k < static_cast<int>(keys.size()); ++k) {
    auto& v = keys[k];
    for (const CubeKey& key : v) {
      for (std::size_t i = 0; i < vertex_count(k); ++i) {
        if (key.bytes[i] >= n) throw InvalidInput("cube refers to an unknown point index");
      }
      for (std::size_t i = vertex_count(k); i < kMaxVertices; ++i) {
        if (key.bytes[i] != kHole) throw InvalidInput("cube key has stray bytes beyond its dimension");
      }
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    impl->cubes[k] = std::move(v);
  }
  for (int k = 0; k <= max_dim; ++k) {
    impl->sets[k].reserve(impl->cubes[k].size() * 2);
    impl->sets[k].insert(impl->cubes[k].begin(), impl->cubes[k].end());
  }
  return CubeSpace(std::move(impl));
}

CubeSpace CubeSpace::create(std::vector<std::string> labels, int max_dim,
                            const std::vector<std::vector<Configuration>>& cubes) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  std::vector<Point> remap(labels.size());
  std::vector<std::string> sorted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = static_cast<Point>(i);
    if (!sorted.empty() && sorted.back() == labels[order[i]]) {
      throw InvalidInput("duplicate point label '" + labels[order[i]] + "'");
    }
    sorted.push_back(labels[order[i]]);
  }
  if (max_dim > Caps::kHardMaxDim) {
    throw CapExceeded("max_dim " + std::to_string(max_dim) + " exceeds the hard cap");
  }
  std::vector<std::vector<CubeKey>> keys(max_dim + 1);
  for (int k = 1; k <= max_dim && k < static_cast<int>(cubes.size()); ++k) {
    for (const Configuration& c : cubes[k]) {
      if (c.dim != k) {
        throw InvalidInput("a " + std::to_string(k) + "-cube entry has dimension " + std::to_string(c.dim));
      }
      std::vector<Point> v(c.values.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (c.values[i] >= labels.size()) throw InvalidInput("cube refers to an unknown point");
        v[i] = remap[c.values[i]];
      }
      keys[k].push_back(CubeKey::pack(v));
    }
  }
  return from_keys(std::move(sorted), max_dim, std::move(keys));
}

std::size_t CubeSpace::size() const { return impl_->labels.size(); }
int CubeSpace::max_dim() const { return impl_->max_dim; }
const std::string& CubeSpace::label(Point p) const { return impl_->labels.at(p); }
const std::vector<std::string>& CubeSpace::labels() const { return impl_->labels; }

std::optional<Point> CubeSpace::find(const std::string& label) const {
  auto it = impl_->index.find(label);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

const std::vector<CubeKey>& CubeSpace::cubes(int k) const {
  if (k < 0 || k > impl_->max_dim) {
    throw InvalidInput("cube dimension " + std::to_string(k) + " outside 0.." + std::to_string(impl_->max_dim));
  }
  return impl_->cubes[k];
}

bool CubeSpace::contains(int k, const CubeKey& key) const {
  if (k < 0 || k > impl_->max_dim) return false;
  return impl_->sets[k].count(key) != 0;
}

bool CubeSpace::contains(const Configuration& c) const {
  for (Point p : c.values) {
    if (p >= size()) return false;
  }
  return contains(c.dim, CubeKey::pack(c));
}

std::span<const std::uint8_t> CubeSpace::next_values(int k, const CubeKey& prefix, int len) const {
  if (k < 0 || k > impl_->max_dim) throw InvalidInput("next_values: dimension out of range");
  const PrefixIndex& idx = impl_->prefix_index(k);
  auto it = idx.find(masked(prefix, len));
  if (it == idx.end()) return {};
  return it->second;
}

std::span<const std::uint8_t> CubeSpace::completions(int k, const CubeKey& corner) const {
  return next_values(k, corner, static_cast<int>(vertex_count(k)) - 1);
}

bool CubeSpace::gluing() const {
  std::call_once(impl_->gluing_once, [&] { impl_->gluing = !gluing_witness(*this).has_value(); });
  return impl_->gluing;
}

bool operator==(const CubeSpace& a, const CubeSpace& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->labels == b.impl_->labels && a.impl_->max_dim == b.impl_->max_dim &&
         a.impl_->cubes == b.impl_->cubes;
}

ValidationReport validate_cubespace(const CubeSpace& X) {
  ValidationReport rep;
  const int K = X.max_dim();
  rep.bound = K;
  for (int l = 0; l <= K; ++l) {
    for (const CubeKey& c : X.cubes(l)) {
      for (int k = 0; k <= K; ++k) {
        const auto& tables = cube_morphism_tables(k, l);
        for (std::size_t m = 0; m < tables.size(); ++m) {
          CubeKey img;
          const auto& t = tables[m];
          for (std::size_t v = 0; v < t.size(); ++v) img.bytes[v] = c.bytes[t[v]];
          if (!X.contains(k, img)) {
            rep.ok = false;
            rep.violation = ClosureViolation{l, c.unpack(l), enumerate_cube_morphisms(k, l)[m], img.unpack(k)};
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

bool is_ergodic(const CubeSpace& X) {
  if (X.max_dim() < 1) return X.size() == 1;
  return X.cubes(1).size() == X.size() * X.size();
}

std::optional<GluingWitness> gluing_witness(const CubeSpace& X) {
  for (int k = 0; k + 1 <= X.max_dim(); ++k) {
    const std::size_t half = vertex_count(k);
    std::map<CubeKey, std::vector<CubeKey>> left, right;  // c2 -> {c1}, c2 -> {c3}
    for (const CubeKey& d : X.cubes(k + 1)) {
      CubeKey lo, hi;
      for (std::size_t i = 0; i < half; ++i) {
        lo.bytes[i] = d.bytes[i];
        hi.bytes[i] = d.bytes[half + i];
      }
      left[hi].push_back(lo);
      right[lo].push_back(hi);
    }
    for (const auto& [c2, firsts] : left) {
      auto r = right.find(c2);
      if (r == right.end()) continue;
      for (const CubeKey& c1 : firsts) {
        for (const CubeKey& c3 : r->second) {
          CubeKey joined = c1;
          for (std::size_t i = 0; i < half; ++i) joined.bytes[half + i] = c3.bytes[i];
          if (!X.contains(k + 1, joined)) {
            return GluingWitness{k, c1.unpack(k), c2.unpack(k), c3.unpack(k)};
          }
        }
      }
    }
  }
  return std::nullopt;
}

CubeSpace close_under_morphisms(std::vector<std::string> labels, int max_dim,
                                const std::vector<Configuration>& generators) {
  std::vector<Configuration> seeds = generators;
  for (std::size_t p = 0; p < labels.size(); ++p) seeds.push_back(Configuration::constant(0, static_cast<Point>(p)));
  std::vector<std::unordered_set<CubeKey, CubeKeyHash>> found(max_dim + 1);
  for (const Configuration& g : seeds) {
    if (g.dim > max_dim) throw InvalidInput("generator dimension exceeds max_dim");
    const CubeKey gk = CubeKey::pack(g);
    for (int k = 1; k <= max_dim; ++k) {
      for (const auto& t : cube_morphism_tables(k, g.dim)) {
        CubeKey img;
        for (std::size_t v = 0; v < t.size(); ++v) img.bytes[v] = gk.bytes[t[v]];
        found[k].insert(img);
      }
    }
  }
  std::vector<std::vector<Configuration>> cubes(max_dim + 1);
  for (int k = 1; k <= max_dim; ++k) {
    for (const CubeKey& key : found[k]) cubes[k].push_back(key.unpack(k));
  }
  return CubeSpace::create(std::move(labels), max_dim, cubes);
}

CubeSpace product(const CubeSpace& X, const CubeSpace& Y) {
  if (X.max_dim() != Y.max_dim()) throw InvalidInput("product: max_dim mismatch");
  const std::size_t n = X.size() * Y.size();
  if (n > Caps::kHardMaxPoints) throw CapExceeded("product has too many points");
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < X.size(); ++x) {
    for (std::size_t y = 0; y < Y.size(); ++y) {
      labels.push_back("(" + X.label(static_cast<Point>(x)) + "," + Y.label(static_cast<Point>(y)) + ")");
    }
  }
  const int K = X.max_dim();
  std::vector<std::vector<Configuration>> cubes(K + 1);
  for (int k = 1; k <= K; ++k) {
    for (const CubeKey& a : X.cubes(k)) {
      for (const CubeKey& b : Y.cubes(k)) {
        std::vector<Point> v(vertex_count(k));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.bytes[i] * static_cast<Point>(Y.size()) + b.bytes[i];
        cubes[k].emplace_back(k, std::move(v));
      }
    }
  }
  return CubeSpace::create(std::move(labels), K, cubes);
}

CubeSpace subcubespace(const CubeSpace& X, const std::vector<Point>& subset) {
  if (subset.empty()) throw InvalidInput("subcubespace of an empty subset");
  std::vector<Point> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> remap(X.size(), -1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= X.size()) throw InvalidInput("subcubespace: point outside the space");
    remap[sorted[i]] = static_cast<int>(i);
    labels.push_back(X.label(sorted[i]));
  }
  std::vector<std::vector<CubeKey>> keys(X.max_dim() + 1);
  for (int k = 1; k <= X.max_dim(); ++k) {
    for (const CubeKey& c : X.cubes(k)) {
      CubeKey out;
      bool inside = true;
      for (std::size_t i = 0; i < vertex_count(k) && inside; ++i) {
        int r = remap[c.bytes[i]];
        if (r < 0) inside = false;
        else out.bytes[i] = static_cast<std::uint8_t>(r);
      }
      if (inside) keys[k].push_back(out);
    }
  }
  return CubeSpace::from_keys(std::move(labels), X.max_dim(), std::move(keys));
}

namespace {

bool corner_dfs(const CubeSpace& X, int k, std::size_t v, CubeKey& cur,
                const std::function<bool(const CubeKey&)>& fn) {
  const std::size_t last = vertex_count(k) - 1;
  if (v == last) return fn(cur);
  // candidates: intersection over lower faces {w_i = 0} containing v
  std::vector<std::uint8_t> cand;
  bool first = true;
  for (int i = 0; i < k; ++i) {
    if ((v >> i) & 1u) continue;
    // face vertices in order: drop coordinate i
    CubeKey prefix;
    std::size_t pos = 0;
    for (std::size_t u = 0; u < v; ++u) {
      if ((u >> i) & 1u) continue;
      prefix.bytes[pos++] = cur.bytes[u];
    }
    auto next = X.next_values(k - 1, prefix, static_cast<int>(pos));
    if (first) {
      cand.assign(next.begin(), next.end());
      first = false;
    } else {
      std::vector<std::uint8_t> tmp;
      std::set_intersection(cand.begin(), cand.end(), next.begin(), next.end(), std::back_inserter(tmp));
      cand.swap(tmp);
    }
    if (cand.empty()) return true;
  }
  for (std::uint8_t p : cand) {
    cur.bytes[v] = p;
    if (!corner_dfs(X, k, v + 1, cur, fn)) return false;
  }
  cur.bytes[v] = kHole;
  return true;
}

}  // namespace

bool for_each_corner(const CubeSpace& X, int k, const std::function<bool(const CubeKey&)>& fn) {
  if (k < 0 || k > X.max_dim()) throw InvalidInput("for_each_corner: dimension out of range");
  CubeKey cur;
  if (k == 0) return fn(cur);
  return corner_dfs(X, k, 0, cur, fn);
}

std::string describe(const CubeSpace& X) {
  std::ostringstream os;
  os << X.size() << " points, max_dim " << X.max_dim();
  for (int k = 1; k <= X.max_dim(); ++k) os << ", |C^" << k << "|=" << X.cubes(k).size();
  return os.str();
}

}  // namespace nspace
