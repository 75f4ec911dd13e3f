#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nspace {

// Malformed or contract-violating input (bad schema, dimension mismatch, ...).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A resource cap was hit. Never silently truncates.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A guarantee of the theory failed on a certified input. Indicates a bug in
// this library (or in the inputs' certification), never a user error.
class InternalAlarm : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Resource limits shared by all enumeration kernels.
struct Caps {
  int max_dim = 4;                         // cube dimension cap, hard limit 4
  std::size_t max_points = 255;            // point ids must fit in one byte
  std::size_t max_group_order = 64;
  std::size_t max_hk_elements = std::size_t{1} << 20;
  std::size_t max_search_nodes = 1'000'000;
  std::size_t max_enumeration = std::size_t{1} << 24;

  static constexpr int kHardMaxDim = 4;
  static constexpr std::size_t kHardMaxPoints = 255;

  // Parses "key=value,key=value" (keys: max_dim, points, group_order,
  // hk_elements, search_nodes, enumeration) over the given base.
  static Caps parse(const std::string& spec, Caps base);
  static Caps defaults();
};

}  // namespace nspace
