#include "nspace/cube.hpp"

#include <cstring>
#include <map>
#include <mutex>
#include <sstream>

#include "nspace/error.hpp"

namespace nspace {

Configuration::Configuration(int d, std::vector<Point> v) : dim(d), values(std::move(v)) {
  if (d < 0 || values.size() != vertex_count(d)) {
    throw InvalidInput("configuration of dim " + std::to_string(d) + " needs " +
                       std::to_string(vertex_count(d < 0 ? 0 : d)) + " values, got " +
                       std::to_string(values.size()));
  }
}

Configuration Configuration::constant(int dim, Point p) {
  return Configuration(dim, std::vector<Point>(vertex_count(dim), p));
}

CubeKey CubeKey::pack(std::span<const Point> values) {
  if (values.size() > kMaxVertices) {
    throw CapExceeded("configuration exceeds the dimension cap of " + std::to_string(kMaxCubeDim));
  }
  CubeKey key;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= kHole) throw CapExceeded("point index exceeds 254");
    key.bytes[i] = static_cast<std::uint8_t>(values[i]);
  }
  return key;
}

CubeKey CubeKey::pack(const Configuration& c) { return pack(std::span<const Point>(c.values)); }

Configuration CubeKey::unpack(int dim) const {
  std::vector<Point> v(vertex_count(dim));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = bytes[i];
  return Configuration(dim, std::move(v));
}

std::size_t CubeKeyHash::operator()(const CubeKey& k) const noexcept {
  std::uint64_t a, b;
  std::memcpy(&a, k.bytes.data(), 8);
  std::memcpy(&b, k.bytes.data() + 8, 8);
  std::uint64_t h = a * 0x9E3779B97F4A7C15ull ^ (b + 0x632BE59BD9B4E019ull + (a << 6) + (a >> 2));
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ull;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

bool CubeSymbol::eval(std::size_t source_vertex) const {
  switch (kind) {
    case Kind::Const0: return false;
    case Kind::Const1: return true;
    case Kind::Var: return vertex_bit(source_vertex, index);
    case Kind::NegVar: return !vertex_bit(source_vertex, index);
  }
  return false;
}

std::size_t CubeMorphismSpec::image_of(std::size_t source_vertex) const {
  std::size_t out = 0;
  for (int j = 0; j < l; ++j) {
    if (coords[j].eval(source_vertex)) out |= std::size_t{1} << j;
  }
  return out;
}

std::string CubeMorphismSpec::to_string() const {
  std::ostringstream os;
  os << "{0,1}^" << k << "->{0,1}^" << l << " [";
  for (int j = 0; j < l; ++j) {
    if (j) os << ",";
    switch (coords[j].kind) {
      case CubeSymbol::Kind::Const0: os << "0"; break;
      case CubeSymbol::Kind::Const1: os << "1"; break;
      case CubeSymbol::Kind::Var: os << "w" << coords[j].index; break;
      case CubeSymbol::Kind::NegVar: os << "1-w" << coords[j].index; break;
    }
  }
  os << "]";
  return os.str();
}

namespace {

struct MorphismTableEntry {
  std::vector<CubeMorphismSpec> specs;
  std::vector<std::vector<std::uint8_t>> tables;
};

const MorphismTableEntry& morphism_entry(int k, int l) {
  if (k < 0 || l < 0 || k > kMaxCubeDim || l > kMaxCubeDim) {
    throw CapExceeded("morphism enumeration is capped at dimension " + std::to_string(kMaxCubeDim));
  }
  static std::mutex mu;
  static std::map<std::pair<int, int>, MorphismTableEntry> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({k, l});
  if (it != cache.end()) return it->second;

  std::vector<CubeSymbol> alphabet{{CubeSymbol::Kind::Const0, 0}, {CubeSymbol::Kind::Const1, 0}};
  for (int i = 1; i <= k; ++i) {
    alphabet.push_back({CubeSymbol::Kind::Var, i});
    alphabet.push_back({CubeSymbol::Kind::NegVar, i});
  }
  MorphismTableEntry entry;
  std::vector<std::size_t> digits(l, 0);
  while (true) {
    CubeMorphismSpec spec{k, l, {}};
    for (int j = 0; j < l; ++j) spec.coords.push_back(alphabet[digits[j]]);
    std::vector<std::uint8_t> table(vertex_count(k));
    for (std::size_t v = 0; v < table.size(); ++v) {
      table[v] = static_cast<std::uint8_t>(spec.image_of(v));
    }
    entry.specs.push_back(std::move(spec));
    entry.tables.push_back(std::move(table));
    // odometer, last coordinate fastest
    int j = l - 1;
    while (j >= 0 && ++digits[j] == alphabet.size()) digits[j--] = 0;
    if (j < 0) break;
  }
  return cache.emplace(std::make_pair(k, l), std::move(entry)).first->second;
}

}  // namespace

const std::vector<CubeMorphismSpec>& enumerate_cube_morphisms(int k, int l) {
  return morphism_entry(k, l).specs;
}

const std::vector<std::vector<std::uint8_t>>& cube_morphism_tables(int k, int l) {
  return morphism_entry(k, l).tables;
}

Configuration apply_morphism(const Configuration& c, const CubeMorphismSpec& rho) {
  if (rho.l != c.dim) {
    throw InvalidInput("apply_morphism: morphism targets dim " + std::to_string(rho.l) +
                       " but configuration has dim " + std::to_string(c.dim));
  }
  std::vector<Point> out(vertex_count(rho.k));
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = c.values[rho.image_of(v)];
  return Configuration(rho.k, std::move(out));
}

CubeMorphismSpec compose_morphisms(const CubeMorphismSpec& outer, const CubeMorphismSpec& inner) {
  if (outer.k != inner.l) throw InvalidInput("compose_morphisms: dimension mismatch");
  CubeMorphismSpec out{inner.k, outer.l, {}};
  for (const CubeSymbol& s : outer.coords) {
    if (s.kind == CubeSymbol::Kind::Const0 || s.kind == CubeSymbol::Kind::Const1) {
      out.coords.push_back(s);
      continue;
    }
    CubeSymbol base = inner.coords[s.index - 1];
    if (s.kind == CubeSymbol::Kind::NegVar) {
      switch (base.kind) {
        case CubeSymbol::Kind::Const0: base.kind = CubeSymbol::Kind::Const1; break;
        case CubeSymbol::Kind::Const1: base.kind = CubeSymbol::Kind::Const0; break;
        case CubeSymbol::Kind::Var: base.kind = CubeSymbol::Kind::NegVar; break;
        case CubeSymbol::Kind::NegVar: base.kind = CubeSymbol::Kind::Var; break;
      }
    }
    out.coords.push_back(base);
  }
  return out;
}

Configuration concatenate(const Configuration& c1, const Configuration& c2, int axis) {
  if (c1.dim != c2.dim) throw InvalidInput("concatenate: dimension mismatch");
  const int n = c1.dim + 1;
  if (axis < 1 || axis > n) throw InvalidInput("concatenate: axis out of range");
  std::vector<Point> out(vertex_count(n));
  const std::size_t low_mask = (std::size_t{1} << (axis - 1)) - 1;
  for (std::size_t v = 0; v < out.size(); ++v) {
    std::size_t rest = (v & low_mask) | ((v >> axis) << (axis - 1));
    out[v] = vertex_bit(v, axis) ? c2.values[rest] : c1.values[rest];
  }
  return Configuration(n, std::move(out));
}

Configuration generalized_corner(const Configuration& c1, const Configuration& c2, int l) {
  if (c1.dim != c2.dim) throw InvalidInput("generalized_corner: dimension mismatch");
  if (l < 0) throw InvalidInput("generalized_corner: negative corner dimension");
  const int n = c1.dim;
  std::vector<Point> out(vertex_count(n + l));
  const std::size_t low = vertex_count(n) - 1;
  const std::size_t high_ones = vertex_count(l) - 1;
  for (std::size_t v = 0; v < out.size(); ++v) {
    out[v] = ((v >> n) == high_ones) ? c2.values[v & low] : c1.values[v & low];
  }
  return Configuration(n + l, std::move(out));
}

Configuration corner_configuration(int k, Point x, Point x_prime) {
  Configuration c = Configuration::constant(k, x);
  c.values.back() = x_prime;
  return c;
}

std::vector<std::size_t> face_vertices(int dim, std::size_t fixed_mask, std::size_t fixed_values) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertex_count(dim); ++v) {
    if ((v & fixed_mask) == (fixed_values & fixed_mask)) out.push_back(v);
  }
  return out;
}

std::vector<Face> enumerate_faces_of_dim(int dim, int face_dim) {
  std::vector<Face> out;
  const int fixed = dim - face_dim;
  for (std::size_t mask = 0; mask < vertex_count(dim); ++mask) {
    if (popcount(mask) != fixed) continue;
    for (std::size_t val = 0; val < vertex_count(dim); ++val) {
      if ((val & ~mask) != 0) continue;
      out.push_back({mask, val, face_dim});
    }
  }
  return out;
}

std::vector<Face> enumerate_faces(int dim) {
  std::vector<Face> out;
  for (int d = dim; d >= 0; --d) {
    auto f = enumerate_faces_of_dim(dim, d);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::string to_string(const Configuration& c) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c.values.size(); ++i) os << (i ? "," : "") << c.values[i];
  os << ")";
  return os.str();
}

}  // namespace nspace
