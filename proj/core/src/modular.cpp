#include "nspace/modular.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "nspace/error.hpp"

namespace nspace {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t q) {
  a %= q;
  return a < 0 ? a + q : a;
}

int valuation(std::int64_t a, std::int64_t p, int e) {
  if (a == 0) return e;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t q) {
  std::int64_t t = 0, nt = 1, r = q, nr = mod(a, q);
  while (nr != 0) {
    std::int64_t k = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - k * nt);
    std::tie(r, nr) = std::make_pair(nr, r - k * nr);
  }
  if (r != 1) throw InternalAlarm("inverting a non-unit modulo " + std::to_string(q));
  return mod(t, q);
}

using Row = std::map<std::size_t, std::int64_t>;

void axpy(Row& dst, const Row& src, std::int64_t f, std::int64_t q) {
  for (auto [i, c] : src) {
    auto& slot = dst[i];
    slot = mod(slot + f * c, q);
    if (slot == 0) dst.erase(i);
  }
}

}  // namespace

std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q) {
  if (q < 2) return std::nullopt;
  std::int64_t p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, e);
}

bool check_obstruction(const std::vector<std::vector<std::int64_t>>& A, const std::vector<std::int64_t>& b,
                       std::int64_t q, const Combination& u) {
  if (A.empty()) return false;
  const std::size_t n = A.front().size();
  std::vector<std::int64_t> acc(n, 0);
  std::int64_t rhs = 0;
  for (auto [i, c] : u) {
    if (i >= A.size()) return false;
    for (std::size_t j = 0; j < n; ++j) acc[j] = mod(acc[j] + c * A[i][j], q);
    rhs = mod(rhs + c * b[i], q);
  }
  for (auto v : acc) {
    if (v != 0) return false;
  }
  return rhs != 0;
}

ModularSolution solve_mod_prime_power(const std::vector<std::vector<std::int64_t>>& A,
                                      const std::vector<std::int64_t>& b, std::int64_t p, int e) {
  std::int64_t q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  const std::size_t m = A.size();
  const std::size_t n = m ? A.front().size() : 0;
  if (b.size() != m) throw InvalidInput("right-hand side has the wrong length");

  std::vector<std::vector<std::int64_t>> M(m, std::vector<std::int64_t>(n));
  std::vector<std::int64_t> rhs(m);
  std::vector<Row> comb(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (A[i].size() != n) throw InvalidInput("ragged coefficient matrix");
    for (std::size_t j = 0; j < n; ++j) M[i][j] = mod(A[i][j], q);
    rhs[i] = mod(b[i], q);
    comb[i][i] = 1;
  }
  // V tracks the column operations: x = V y
  std::vector<std::vector<std::int64_t>> V(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) V[j][j] = 1;
  std::vector<int> pivot_val;

  std::size_t r = 0;
  for (; r < std::min(m, n); ++r) {
    int best = e;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = r; i < m && best > 0; ++i) {
      for (std::size_t j = r; j < n; ++j) {
        int v = valuation(M[i][j], p, e);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (best == e) break;
    std::swap(M[r], M[bi]);
    std::swap(rhs[r], rhs[bi]);
    std::swap(comb[r], comb[bi]);
    if (bj != r) {
      for (std::size_t i = 0; i < m; ++i) std::swap(M[i][r], M[i][bj]);
      for (std::size_t i = 0; i < n; ++i) std::swap(V[i][r], V[i][bj]);
    }
    std::int64_t pv = 1;
    for (int i = 0; i < best; ++i) pv *= p;
    const std::int64_t unit_inv = inverse_mod(M[r][r] / pv, q);
    for (std::size_t j = r; j < n; ++j) M[r][j] = mod(M[r][j] * unit_inv, q);
    rhs[r] = mod(rhs[r] * unit_inv, q);
    for (auto& [i, c] : comb[r]) c = mod(c * unit_inv, q);

    for (std::size_t i = r + 1; i < m; ++i) {
      if (M[i][r] == 0) continue;
      const std::int64_t t = M[i][r] / pv;
      for (std::size_t j = r; j < n; ++j) M[i][j] = mod(M[i][j] - t * M[r][j], q);
      rhs[i] = mod(rhs[i] - t * rhs[r], q);
      axpy(comb[i], comb[r], q - t, q);
    }
    for (std::size_t j = r + 1; j < n; ++j) {
      if (M[r][j] == 0) continue;
      const std::int64_t t = M[r][j] / pv;
      M[r][j] = 0;
      for (std::size_t i = 0; i < n; ++i) V[i][j] = mod(V[i][j] - t * V[i][r], q);
    }
    pivot_val.push_back(best);
  }

  ModularSolution out;
  auto obstruct = [&](std::size_t i, std::int64_t scale) {
    for (auto [k, c] : comb[i]) {
      std::int64_t v = mod(c * scale, q);
      if (v != 0) out.obstruction.emplace_back(k, v);
    }
    if (!check_obstruction(A, b, q, out.obstruction)) throw InternalAlarm("modular solver produced an invalid obstruction");
    return out;
  };
  for (std::size_t i = r; i < m; ++i) {
    if (rhs[i] != 0) return obstruct(i, 1);
  }
  std::vector<std::int64_t> y(n, 0);
  for (std::size_t i = 0; i < r; ++i) {
    std::int64_t pv = 1;
    for (int k = 0; k < pivot_val[i]; ++k) pv *= p;
    if (rhs[i] % pv != 0) return obstruct(i, q / pv);
    y[i] = rhs[i] / pv;
  }
  std::vector<std::int64_t> x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) x[i] = mod(x[i] + V[i][j] * y[j], q);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s = mod(s + A[i][j] * x[j], q);
    if (s != mod(b[i], q)) throw InternalAlarm("modular solver produced a wrong solution");
  }
  out.x = std::move(x);
  return out;
}

}  // namespace nspace
