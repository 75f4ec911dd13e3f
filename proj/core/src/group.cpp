#include "nspace/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace nspace {

namespace {

std::string padded(std::size_t i, std::size_t n) {
  std::string s = std::to_string(i);
  std::string w = std::to_string(n - 1);
  if (n >= 10 && s.size() < w.size()) s.insert(0, w.size() - s.size(), '0');
  return s;
}

}  // namespace

FiniteGroup::FiniteGroup() : labels_{"e"}, table_{0}, inv_{0}, identity_(0) {}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> labels, std::vector<std::vector<Elem>> table) {
  const std::size_t n = labels.size();
  if (n == 0) throw InvalidInput("group has no elements");
  if (table.size() != n) throw InvalidInput("Cayley table has " + std::to_string(table.size()) + " rows for " + std::to_string(n) + " elements");
  {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != n) throw InvalidInput("group element labels are not unique");
  }
  FiniteGroup g;
  g.labels_ = std::move(labels);
  g.table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw InvalidInput("Cayley table row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) throw InvalidInput("Cayley table entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
      g.table_[a * n + b] = table[a][b];
    }
  }
  std::optional<Elem> id;
  for (Elem e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) id = e;
  }
  if (!id) throw InvalidInput("Cayley table has no identity element");
  g.identity_ = *id;
  g.inv_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    bool found = false;
    for (Elem b = 0; b < n; ++b) {
      if (g.mul(a, b) == g.identity_ && g.mul(b, a) == g.identity_) {
        g.inv_[a] = b;
        found = true;
        break;
      }
    }
    if (!found) throw InvalidInput("element '" + g.labels_[a] + "' has no inverse");
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      const Elem ab = g.mul(a, b);
      for (Elem c = 0; c < n; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
          throw InvalidInput("Cayley table is not associative: (" + g.labels_[a] + "," + g.labels_[b] + "," + g.labels_[c] + ")");
        }
      }
    }
  }
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw InvalidInput("cyclic group of order 0");
  std::vector<std::string> labels;
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(padded(a, n));
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Elem>((a + b) % n);
  }
  return from_table(std::move(labels), std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::string> labels;
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("(" + a.label(static_cast<Elem>(i / nb)) + "," + b.label(static_cast<Elem>(i % nb)) + ")");
    for (std::size_t j = 0; j < n; ++j) {
      Elem x = a.mul(static_cast<Elem>(i / nb), static_cast<Elem>(j / nb));
      Elem y = b.mul(static_cast<Elem>(i % nb), static_cast<Elem>(j % nb));
      t[i][j] = static_cast<Elem>(x * nb + y);
    }
  }
  return from_table(std::move(labels), std::move(t));
}

FiniteGroup FiniteGroup::heisenberg(std::size_t p) {
  if (p < 2) throw InvalidInput("heisenberg group needs p >= 2");
  const std::size_t n = p * p * p;
  auto enc = [p](std::size_t a, std::size_t b, std::size_t c) { return static_cast<Elem>((a * p + b) * p + c); };
  std::vector<std::string> labels(n);
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t a = x / (p * p), b = (x / p) % p, c = x % p;
    labels[x] = "(" + padded(a, p) + "," + padded(b, p) + "," + padded(c, p) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      t[x][y] = enc((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
    }
  }
  return from_table(std::move(labels), std::move(t));
}

FiniteGroup FiniteGroup::dihedral(std::size_t m) {
  if (m < 1) throw InvalidInput("dihedral group needs n >= 1");
  // element x is r^(x mod m) s^(x div m)
  const std::size_t n = 2 * m;
  std::vector<std::string> labels(n);
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t x = 0; x < n; ++x) {
    labels[x] = (x < m ? "r" : "s") + padded(x % m, m);
    for (std::size_t y = 0; y < n; ++y) {
      // r^a s^e * r^b s^f = r^(a + (-1)^e b) s^(e+f)
      std::size_t a = x % m, e = x / m, b = y % m, f = y / m;
      std::size_t r = e ? (a + m - b) % m : (a + b) % m;
      t[x][y] = static_cast<Elem>(((e + f) % 2) * m + r);
    }
  }
  return from_table(std::move(labels), std::move(t));
}

FiniteGroup FiniteGroup::quaternion() {
  // basis index: 0=1, 1=i, 2=j, 3=k; sign bit
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const char* names[4] = {"1", "i", "j", "k"};
  std::vector<std::string> labels(8);
  std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
  for (int x = 0; x < 8; ++x) {
    labels[x] = std::string(x >= 4 ? "-" : "+") + names[x % 4];
    for (int y = 0; y < 8; ++y) {
      int u = unit_mul[x % 4][y % 4];
      int sign = unit_sign[x % 4][y % 4] * (x >= 4 ? -1 : 1) * (y >= 4 ? -1 : 1);
      t[x][y] = static_cast<Elem>(u + (sign < 0 ? 4 : 0));
    }
  }
  return from_table(std::move(labels), std::move(t));
}

std::vector<Perm> permutation_closure(const std::vector<Perm>& gens, std::size_t degree, std::size_t max_order) {
  for (const Perm& g : gens) {
    if (g.size() != degree) throw InvalidInput("generator permutation has wrong degree");
    std::vector<bool> seen(degree, false);
    for (auto v : g) {
      if (v >= degree || seen[v]) throw InvalidInput("generator is not a permutation");
      seen[v] = true;
    }
  }
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::vector<Perm> elems{id};
  std::set<Perm> seen{id};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const Perm& g : gens) {
      Perm next(degree);
      for (std::size_t i = 0; i < degree; ++i) next[i] = g[elems[head][i]];  // apply elems[head] then g
      if (seen.insert(next).second) {
        elems.push_back(std::move(next));
        if (elems.size() > max_order) {
          throw CapExceeded("permutation group exceeds order cap " + std::to_string(max_order));
        }
      }
    }
  }
  return elems;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<Perm>& gens, std::size_t degree, std::size_t max_order) {
  std::vector<Perm> elems = permutation_closure(gens, degree, max_order);
  std::map<Perm, Elem> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<Elem>(i);
  const std::size_t n = elems.size();
  std::vector<std::string> labels;
  for (const Perm& p : elems) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    labels.push_back(s + "]");
  }
  // a*b = "apply a, then b"
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Perm c(degree);
      for (std::size_t i = 0; i < degree; ++i) c[i] = elems[b][elems[a][i]];
      t[a][b] = index.at(c);
    }
  }
  return from_table(std::move(labels), std::move(t));
}

Elem FiniteGroup::commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

Elem FiniteGroup::power(Elem a, long long n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  Elem r = identity_;
  for (long long i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::optional<Elem> FiniteGroup::find(const std::string& label) const {
  for (Elem i = 0; i < order(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < order(); ++a) {
    for (Elem b = a + 1; b < order(); ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::vector<Elem> FiniteGroup::generated(const std::vector<Elem>& gens) const {
  std::vector<bool> in(order(), false);
  std::vector<Elem> out{identity_};
  in[identity_] = true;
  for (std::size_t h = 0; h < out.size(); ++h) {
    for (Elem g : gens) {
      Elem x = mul(out[h], g);
      if (!in[x]) {
        in[x] = true;
        out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteGroup::is_subgroup(const std::vector<Elem>& set) const {
  if (set.empty()) return false;
  std::vector<bool> in(order(), false);
  for (Elem a : set) {
    if (a >= order()) return false;
    in[a] = true;
  }
  if (!in[identity_]) return false;
  for (Elem a : set) {
    if (!in[inv(a)]) return false;
    for (Elem b : set) {
      if (!in[mul(a, b)]) return false;
    }
  }
  return true;
}

bool FiniteGroup::is_normal(const std::vector<Elem>& sub) const {
  std::vector<bool> in(order(), false);
  for (Elem a : sub) in[a] = true;
  for (Elem g = 0; g < order(); ++g) {
    for (Elem a : sub) {
      if (!in[mul(mul(inv(g), a), g)]) return false;
    }
  }
  return true;
}

std::vector<Elem> FiniteGroup::center() const {
  std::vector<Elem> out;
  for (Elem a = 0; a < order(); ++a) {
    bool central = true;
    for (Elem b = 0; b < order() && central; ++b) central = mul(a, b) == mul(b, a);
    if (central) out.push_back(a);
  }
  return out;
}

std::vector<Elem> FiniteGroup::generators_of(const std::vector<Elem>& sub) const {
  std::vector<Elem> gens;
  std::vector<Elem> cur{identity_};
  for (Elem a : sub) {
    if (std::binary_search(cur.begin(), cur.end(), a)) continue;
    gens.push_back(a);
    cur = generated(gens);
  }
  return gens;
}

std::vector<Elem> FiniteGroup::commutator_subgroup(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
  std::vector<Elem> gens;
  for (Elem x : a) {
    for (Elem y : b) gens.push_back(commutator(x, y));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return generated(gens);
}

std::vector<std::vector<Elem>> FiniteGroup::lower_central_series() const {
  std::vector<Elem> all(order());
  for (Elem i = 0; i < order(); ++i) all[i] = i;
  std::vector<std::vector<Elem>> series{all};
  while (series.back().size() > 1) {
    auto next = commutator_subgroup(all, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  std::vector<std::vector<Elem>> t(order(), std::vector<Elem>(order()));
  for (Elem a = 0; a < order(); ++a) {
    for (Elem b = 0; b < order(); ++b) t[a][b] = mul(a, b);
  }
  return t;
}

namespace {

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> ps;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Prime-power cyclic factors of an abelian group, by counting elements
// killed by p^i: log_p #{a : p^i a = 0} = sum_j min(lambda_j, i).
std::vector<std::size_t> primary_moduli(const FiniteGroup& A) {
  if (!A.is_abelian()) throw InvalidInput("group is not abelian");
  std::vector<std::size_t> moduli;
  for (std::size_t p : prime_factors(A.order())) {
    std::vector<std::size_t> ranks;  // ranks[i-1] = #{j : lambda_j >= i}
    std::size_t prev_log = 0;
    std::size_t pi = 1;
    for (int i = 1;; ++i) {
      pi *= p;
      std::size_t cnt = 0;
      for (Elem a = 0; a < A.order(); ++a) cnt += A.power(a, static_cast<long long>(pi)) == A.identity();
      std::size_t lg = 0;
      for (std::size_t c = cnt; c > 1; c /= p) ++lg;
      if (lg == prev_log) break;
      ranks.push_back(lg - prev_log);
      prev_log = lg;
    }
    // exponent i appears ranks[i-1] - ranks[i] times
    for (std::size_t i = ranks.size(); i >= 1; --i) {
      std::size_t mult = ranks[i - 1] - (i < ranks.size() ? ranks[i] : 0);
      std::size_t q = 1;
      for (std::size_t e = 0; e < i; ++e) q *= p;
      for (std::size_t m = 0; m < mult; ++m) moduli.push_back(q);
    }
  }
  return moduli;
}

}  // namespace

std::vector<std::size_t> abelian_invariants(const FiniteGroup& A) {
  auto moduli = primary_moduli(A);
  std::map<std::size_t, std::vector<std::size_t>> by_prime;
  for (std::size_t q : moduli) by_prime[prime_factors(q)[0]].push_back(q);
  std::size_t len = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.rbegin(), v.rend());
    len = std::max(len, v.size());
  }
  std::vector<std::size_t> inv(len, 1);
  for (auto& [p, v] : by_prime) {
    for (std::size_t i = 0; i < v.size(); ++i) inv[i] *= v[i];
  }
  std::sort(inv.begin(), inv.end());
  return inv;
}

std::string abelian_type_string(const std::vector<std::size_t>& invariants) {
  if (invariants.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < invariants.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(invariants[i]);
  return s;
}

PrimaryDecomposition primary_decomposition(const FiniteGroup& A) {
  PrimaryDecomposition d;
  d.moduli = primary_moduli(A);
  const std::size_t r = d.moduli.size();
  std::vector<Elem> chosen;
  // backtracking: g_i of order q_i with |<g_1..g_i>| = q_1...q_i
  std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t i, std::size_t size) -> bool {
    if (i == r) return true;
    for (Elem g = 0; g < A.order(); ++g) {
      if (A.element_order(g) != d.moduli[i]) continue;
      chosen.push_back(g);
      if (A.generated(chosen).size() == size * d.moduli[i] && search(i + 1, size * d.moduli[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(0, 1)) throw InternalAlarm("no generating tuple for the computed abelian type");
  d.generators = chosen;
  d.coords.assign(A.order(), std::vector<std::size_t>(r, 0));
  std::vector<std::size_t> c(r, 0);
  while (true) {
    Elem x = A.identity();
    for (std::size_t i = 0; i < r; ++i) x = A.mul(x, A.power(d.generators[i], static_cast<long long>(c[i])));
    d.coords[x] = c;
    std::size_t i = 0;
    while (i < r && ++c[i] == d.moduli[i]) c[i++] = 0;
    if (i == r) break;
  }
  return d;
}

Filtration::Filtration(FiniteGroup group, std::vector<std::vector<Elem>> levels)
    : group_(std::move(group)), levels_(std::move(levels)), trivial_{group_.identity()} {
  if (levels_.size() < 2) throw InvalidInput("filtration needs at least G_0 and G_{s+1}");
  for (auto& l : levels_) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    if (!group_.is_subgroup(l)) throw InvalidInput("filtration level is not a subgroup");
  }
  if (levels_[0].size() != group_.order()) throw InvalidInput("filtration must start with G_0 = G");
  if (levels_.back().size() != 1) throw InvalidInput("filtration must end with the trivial subgroup");
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (!std::includes(levels_[i - 1].begin(), levels_[i - 1].end(), levels_[i].begin(), levels_[i].end())) {
      throw InvalidInput("filtration levels are not nested at G_" + std::to_string(i));
    }
  }
  const int top = static_cast<int>(levels_.size()) - 1;
  for (int i = 0; i <= top; ++i) {
    for (int j = i; j <= top; ++j) {
      const auto& target = level(std::min(i + j, top));
      for (Elem a : levels_[i]) {
        for (Elem b : levels_[j]) {
          Elem c = group_.commutator(a, b);
          if (!std::binary_search(target.begin(), target.end(), c)) {
            throw InvalidInput("commutator condition fails: [" + group_.label(a) + "," + group_.label(b) + "] not in G_" +
                               std::to_string(std::min(i + j, top)));
          }
        }
      }
    }
  }
}

Filtration Filtration::constant(const FiniteGroup& A, int s) {
  if (s < 0) throw InvalidInput("filtration degree must be non-negative");
  std::vector<Elem> all(A.order());
  for (Elem i = 0; i < A.order(); ++i) all[i] = i;
  std::vector<std::vector<Elem>> levels(s + 1, all);
  levels.push_back({A.identity()});
  return Filtration(A, std::move(levels));
}

Filtration Filtration::lower_central(const FiniteGroup& G) {
  auto series = G.lower_central_series();
  if (series.back().size() != 1) throw InvalidInput("group is not nilpotent");
  std::vector<std::vector<Elem>> levels{series[0]};
  levels.insert(levels.end(), series.begin(), series.end());
  return Filtration(G, std::move(levels));
}

const std::vector<Elem>& Filtration::level(int i) const {
  if (i < 0) throw InvalidInput("negative filtration index");
  if (i >= static_cast<int>(levels_.size())) return trivial_;
  return levels_[i];
}

}  // namespace nspace
