#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace nspace {

/// Sparse row combination: (equation index, integer coefficient).
using Combination = std::vector<std::pair<std::size_t, std::int64_t>>;

struct ModularSolution {
  std::optional<std::vector<std::int64_t>> x;  // A x = b (mod p^e)
  Combination obstruction;                     // u with u·A = 0, u·b != 0
};

/// Solves A x = b over Z/p^e by diagonalizing with row and column
/// operations, pivoting on an entry of least p-adic valuation. Every result
/// is re-checked: a solution against A and b, an obstruction via
/// check_obstruction.
ModularSolution solve_mod_prime_power(const std::vector<std::vector<std::int64_t>>& A,
                                      const std::vector<std::int64_t>& b, std::int64_t p, int e);

/// u·A = 0 (mod q) and u·b != 0 (mod q).
bool check_obstruction(const std::vector<std::vector<std::int64_t>>& A, const std::vector<std::int64_t>& b,
                       std::int64_t q, const Combination& u);

/// (p, e) with q = p^e, or nullopt when q is not a prime power > 1.
std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q);

}  // namespace nspace
