#pragma once

// Discrete cubes {0,1}^k, configurations, and morphisms of discrete cubes.
//
// Vertex indexing is fixed throughout the library: the vertex
// w = (w_1, ..., w_k) lives at index sum_j w_j * 2^(j-1), so w_1 is the least
// significant bit.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nspace {

using Point = std::uint32_t;

inline constexpr int kMaxCubeDim = 4;
inline constexpr std::size_t kMaxVertices = std::size_t{1} << kMaxCubeDim;
// Byte used for "unassigned" vertices in packed keys; real points are < 255.
inline constexpr std::uint8_t kHole = 0xFF;

constexpr std::size_t vertex_count(int dim) { return std::size_t{1} << dim; }
constexpr int popcount(std::size_t v) { return __builtin_popcountll(v); }
constexpr int sign_of_vertex(std::size_t v) { return (popcount(v) & 1) ? -1 : 1; }
constexpr bool vertex_bit(std::size_t v, int coord /* 1-based */) {
  return (v >> (coord - 1)) & 1u;
}

/// A map {0,1}^dim -> points, stored in vertex-index order.
struct Configuration {
  int dim = 0;
  std::vector<Point> values;

  Configuration() = default;
  Configuration(int d, std::vector<Point> v);
  static Configuration constant(int dim, Point p);

  Point operator[](std::size_t vertex) const { return values[vertex]; }
  Point top() const { return values.back(); }
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Packed configuration of dimension <= 4: one byte per vertex, unused
/// bytes hold kHole. Lexicographic byte order is the canonical cube order.
struct CubeKey {
  std::array<std::uint8_t, kMaxVertices> bytes;

  CubeKey() { bytes.fill(kHole); }
  static CubeKey pack(const Configuration& c);
  static CubeKey pack(std::span<const Point> values);
  Configuration unpack(int dim) const;

  std::uint8_t operator[](std::size_t v) const { return bytes[v]; }
  std::uint8_t& operator[](std::size_t v) { return bytes[v]; }

  friend auto operator<=>(const CubeKey&, const CubeKey&) = default;
  friend bool operator==(const CubeKey&, const CubeKey&) = default;
};

struct CubeKeyHash {
  std::size_t operator()(const CubeKey& k) const noexcept;
};

/// Output-coordinate symbol of a morphism of discrete cubes.
struct CubeSymbol {
  enum class Kind : std::uint8_t { Const0, Const1, Var, NegVar };
  Kind kind = Kind::Const0;
  int index = 0;  // 1-based input coordinate for Var/NegVar

  bool eval(std::size_t source_vertex) const;
  friend bool operator==(const CubeSymbol&, const CubeSymbol&) = default;
};

/// A morphism rho: {0,1}^k -> {0,1}^l given coordinate-wise.
struct CubeMorphismSpec {
  int k = 0;  // source dimension
  int l = 0;  // target dimension
  std::vector<CubeSymbol> coords;  // size l

  std::size_t image_of(std::size_t source_vertex) const;
  std::string to_string() const;
  friend bool operator==(const CubeMorphismSpec&, const CubeMorphismSpec&) = default;
};

/// All (2+2k)^l morphisms {0,1}^k -> {0,1}^l in a fixed order; memoized.
const std::vector<CubeMorphismSpec>& enumerate_cube_morphisms(int k, int l);

/// For each morphism of enumerate_cube_morphisms(k, l), the table
/// source vertex -> target vertex. Memoized alongside the specs.
const std::vector<std::vector<std::uint8_t>>& cube_morphism_tables(int k, int l);

/// c o rho. Throws InvalidInput when rho.l != c.dim.
Configuration apply_morphism(const Configuration& c, const CubeMorphismSpec& rho);

/// rho1 o rho2 where rho2: {0,1}^a -> {0,1}^b and rho1: {0,1}^b -> {0,1}^c.
CubeMorphismSpec compose_morphisms(const CubeMorphismSpec& outer, const CubeMorphismSpec& inner);

/// [c1, c2]_axis: vertices with w_axis = 0 read c1, the others read c2.
/// axis = dim + 1 is the plain concatenation.
Configuration concatenate(const Configuration& c1, const Configuration& c2, int axis);

/// The generalized l-corner: c2 on vertices (w, 1, ..., 1), c1 elsewhere.
Configuration generalized_corner(const Configuration& c1, const Configuration& c2, int l);

/// The (k)-configuration equal to x everywhere except x' at the all-ones vertex.
Configuration corner_configuration(int k, Point x, Point x_prime);

/// Vertices of the face obtained by fixing the coordinates in fixed_mask
/// (bit j-1 <-> coordinate j) to the bits of fixed_values; listed in
/// increasing vertex order, which is also the face's own vertex order.
std::vector<std::size_t> face_vertices(int dim, std::size_t fixed_mask, std::size_t fixed_values);

struct Face {
  std::size_t fixed_mask = 0;
  std::size_t fixed_values = 0;
  int dim = 0;  // number of free coordinates
};

/// Faces of {0,1}^dim ordered by (dimension desc, fixed mask asc, fixed value asc).
std::vector<Face> enumerate_faces(int dim);
/// Faces of a single dimension, same order.
std::vector<Face> enumerate_faces_of_dim(int dim, int face_dim);

std::string to_string(const Configuration& c);

}  // namespace nspace
