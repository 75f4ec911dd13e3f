#include "nspace/fixtures.hpp"

#include <algorithm>
#include <random>

namespace nspace::fixtures {

FiniteGroup z2xz2() { return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)); }

Filtration z4_two_step() {
  FiniteGroup Z4 = FiniteGroup::cyclic(4);
  return Filtration(Z4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 2}, {0}});
}

FiniteGroup symmetric3() { return FiniteGroup::dihedral(3); }

Filtration s3_a3() {
  FiniteGroup S3 = symmetric3();
  return Filtration(S3, {{0, 1, 2, 3, 4, 5}, {0, 1, 2}, {0}});
}

CubeSpace d_s(const FiniteGroup& A, int s, int K, const Caps& caps) { return d_s_cubespace(A, s, K, caps.max_hk_elements); }

CubeSpace heisenberg_space(std::size_t p, int K, const Caps& caps) {
  return hk_cubespace(Filtration::lower_central(FiniteGroup::heisenberg(p)), K, caps.max_hk_elements);
}

CubeMap heisenberg_central_quotient(int K, const Caps& caps) {
  Filtration F = Filtration::lower_central(FiniteGroup::heisenberg(2));
  const FiniteGroup& H = F.group();
  CubeSpace X = hk_cubespace(F, K, caps.max_hk_elements);
  HKQuotient q = hk_quotient_cubespace(F, H.center(), K, caps.max_hk_elements);
  auto pt = hk_points(H);
  std::vector<Point> assign(H.order());
  for (Elem g = 0; g < H.order(); ++g) assign[pt[g]] = q.projection[g];
  return CubeMap(X, q.space, std::move(assign));
}

namespace {

std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

// hom: elements of A -> elements of B, inducing D_s(A) -> D_s(B)
CubeMap d_s_hom(const FiniteGroup& A, const FiniteGroup& B, const std::vector<Elem>& hom, int s, int K,
                const Caps& caps) {
  auto pa = hk_points(A);
  auto pb = hk_points(B);
  std::vector<Point> assign(A.order());
  for (Elem a = 0; a < A.order(); ++a) assign[pa[a]] = pb[hom[a]];
  return CubeMap(d_s(A, s, K, caps), d_s(B, s, K, caps), std::move(assign));
}

CubeMap projection_map(const CubeSpace& X, const CubeSpace& Y, bool second) {
  CubeSpace P = product(X, Y);
  std::vector<Point> assign(P.size());
  for (Point i = 0; i < P.size(); ++i) {
    // product points are (x,y) in index order x * |Y| + y
    assign[i] = second ? i % static_cast<Point>(Y.size()) : i / static_cast<Point>(Y.size());
  }
  return CubeMap(P, second ? Y : X, std::move(assign));
}

}  // namespace

CubeSpace free_triangle(int K) {
  std::vector<Configuration> gens;
  for (Point a = 0; a < 3; ++a) {
    for (Point b = 0; b < 3; ++b) gens.emplace_back(1, std::vector<Point>{a, b});
  }
  return close_under_morphisms(numbered(3), K, gens);
}

CubeSpace path3(int K) {
  return close_under_morphisms(numbered(3), K, {Configuration(1, {0, 1}), Configuration(1, {1, 2})});
}

CubeSpace random_closure(std::size_t n, int K, std::uint64_t seed) {
  if (n == 0 || n > Caps::kHardMaxPoints) throw InvalidInput("random closure: bad point count");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Point> pick(0, static_cast<Point>(n - 1));
  std::uniform_int_distribution<int> dim(1, std::max(1, K));
  std::vector<Configuration> gens;
  const std::size_t count = 2 + rng() % 4;
  for (std::size_t i = 0; i < count; ++i) {
    int d = dim(rng);
    std::vector<Point> v(vertex_count(d));
    for (auto& x : v) x = pick(rng);
    gens.emplace_back(d, std::move(v));
  }
  return close_under_morphisms(numbered(n), K, gens);
}

CubeMap broken_map(int K) { return map_to_point(free_triangle(K)); }

FactorMap coset_factor(const FiniteGroup& G, const std::vector<Elem>& H, const std::vector<Elem>& Hp) {
  std::vector<Elem> all(G.order());
  for (Elem g = 0; g < G.order(); ++g) all[g] = g;
  auto gens = G.generators_of(all);
  auto ph = GroupAction::coset_projection(G, H);
  auto php = GroupAction::coset_projection(G, Hp);
  GroupAction d = GroupAction::on_cosets(G, H, gens);
  GroupAction c = GroupAction::on_cosets(G, Hp, gens);
  std::vector<Point> assign(d.size());
  for (Elem g = 0; g < G.order(); ++g) assign[ph[g]] = php[g];
  return FactorMap(std::move(d), std::move(c), std::move(assign));
}

FactorMap rotation(std::size_t n, std::size_t d) {
  if (d == 0 || n % d != 0) throw InvalidInput("rotation factor must divide the order");
  FiniteGroup G = FiniteGroup::cyclic(n);
  return coset_factor(G, {0}, G.generated({static_cast<Elem>(d % n)}));
}

FactorMap z2xz2_rotation() {
  FiniteGroup G = z2xz2();
  // (a,b) -> a; the kernel is {(0,0),(0,1)}
  return coset_factor(G, {0}, {0, 1});
}

std::vector<SpaceFixture> space_corpus(const Caps& caps) {
  std::vector<SpaceFixture> out;
  const int K = 3;
  out.push_back({"point", point_space(K), 0});
  for (std::size_t n = 2; n <= 8; ++n) out.push_back({"d1_z" + std::to_string(n), d_s(FiniteGroup::cyclic(n), 1, K, caps), 1});
  for (std::size_t n = 2; n <= 4; ++n) out.push_back({"d2_z" + std::to_string(n), d_s(FiniteGroup::cyclic(n), 2, K, caps), 2});
  out.push_back({"d0_z2", d_s(FiniteGroup::cyclic(2), 0, K, caps), 0});
  out.push_back({"d0_z3", d_s(FiniteGroup::cyclic(3), 0, K, caps), 0});
  out.push_back({"d3_z2", d_s(FiniteGroup::cyclic(2), 3, K, caps), std::nullopt});
  out.push_back({"d1_z2xz2", d_s(z2xz2(), 1, K, caps), 1});
  out.push_back({"d2_z2xz2", d_s(z2xz2(), 2, K, caps), 2});
  out.push_back({"d1_z2xz4", d_s(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)), 1, K, caps), 1});
  out.push_back({"d1_z3xz3", d_s(FiniteGroup::direct_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)), 1, K, caps), 1});
  out.push_back({"heisenberg2", heisenberg_space(2, K, caps), 2});
  out.push_back({"heisenberg3_k2", heisenberg_space(3, 2, caps), std::nullopt});
  out.push_back({"hk_z4_two_step", hk_cubespace(z4_two_step(), K, caps.max_hk_elements), 2});
  out.push_back({"hk_d4", hk_cubespace(Filtration::lower_central(FiniteGroup::dihedral(4)), K, caps.max_hk_elements), 2});
  out.push_back({"hk_q8", hk_cubespace(Filtration::lower_central(FiniteGroup::quaternion()), K, caps.max_hk_elements), 2});
  out.push_back({"hk_d8_k2", hk_cubespace(Filtration::lower_central(FiniteGroup::dihedral(8)), 2, caps.max_hk_elements), std::nullopt});
  out.push_back({"hk_s3_a3", hk_cubespace(s3_a3(), K, caps.max_hk_elements), std::nullopt});
  {
    Filtration F = Filtration::lower_central(FiniteGroup::heisenberg(2));
    out.push_back({"heisenberg2_mod_center", hk_quotient_cubespace(F, F.group().center(), K, caps.max_hk_elements).space, 1});
    out.push_back({"heisenberg2_mod_x", hk_quotient_cubespace(F, F.group().generated({4}), K, caps.max_hk_elements).space, std::nullopt});
  }
  out.push_back({"hk_z4_two_step_mod_2", hk_quotient_cubespace(z4_two_step(), {0, 2}, K, caps.max_hk_elements).space, 1});
  {
    Filtration F = Filtration::lower_central(FiniteGroup::dihedral(4));
    out.push_back({"hk_d4_mod_s", hk_quotient_cubespace(F, {0, 4}, K, caps.max_hk_elements).space, std::nullopt});
    Filtration Q = Filtration::lower_central(FiniteGroup::quaternion());
    out.push_back({"hk_q8_mod_center", hk_quotient_cubespace(Q, Q.group().center(), K, caps.max_hk_elements).space, 1});
  }
  {
    CubeSpace D = d_s(FiniteGroup::cyclic(4), 2, K, caps);
    out.push_back({"d2_z4_mod_1", quotient_cubespace(D, canonical_relation(D, 1).relation).quotient, 0});
    CubeSpace H = heisenberg_space(2, K, caps);
    out.push_back({"heisenberg2_mod_1", quotient_cubespace(H, canonical_relation(H, 1).relation).quotient, 1});
    out.push_back({"heisenberg2_mod_0", quotient_cubespace(H, canonical_relation(H, 0).relation).quotient, 0});
  }
  out.push_back({"d1_z2_x_d1_z3", product(d_s(FiniteGroup::cyclic(2), 1, K, caps), d_s(FiniteGroup::cyclic(3), 1, K, caps)), 1});
  out.push_back({"d1_z2_x_d2_z2", product(d_s(FiniteGroup::cyclic(2), 1, K, caps), d_s(FiniteGroup::cyclic(2), 2, K, caps)), 2});
  out.push_back({"free_triangle", free_triangle(K), std::nullopt});
  out.push_back({"path3", path3(K), std::nullopt});
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    out.push_back({"random_closure_" + std::to_string(seed), random_closure(4, 2, seed), std::nullopt});
  }
  for (const ActionFixture& a : action_corpus()) {
    out.push_back({"dyn_" + a.name, dynamical_cubes(a.factor.domain, a.max_dim, caps.max_hk_elements), std::nullopt});
  }
  return out;
}

std::vector<MapFixture> map_corpus(const Caps& caps) {
  std::vector<MapFixture> out;
  const int K = 3;
  out.push_back({"heisenberg2_central_quotient", heisenberg_central_quotient(K, caps), 2});
  out.push_back({"identity_d1_z2", identity_map(d_s(FiniteGroup::cyclic(2), 1, K, caps)), 0});
  out.push_back({"identity_d2_z2", identity_map(d_s(FiniteGroup::cyclic(2), 2, K, caps)), 0});
  out.push_back({"d1_z2_to_point", map_to_point(d_s(FiniteGroup::cyclic(2), 1, K, caps)), 1});
  out.push_back({"d1_z3_to_point", map_to_point(d_s(FiniteGroup::cyclic(3), 1, K, caps)), 1});
  out.push_back({"d2_z2_to_point", map_to_point(d_s(FiniteGroup::cyclic(2), 2, K, caps)), 2});
  out.push_back({"heisenberg2_to_point", map_to_point(heisenberg_space(2, K, caps)), 2});
  out.push_back({"d1_z4_mod_2", d_s_hom(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), {0, 1, 0, 1}, 1, K, caps), 1});
  out.push_back({"d2_z4_mod_2", d_s_hom(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), {0, 1, 0, 1}, 2, K, caps), 2});
  out.push_back({"d1_z6_mod_3", d_s_hom(FiniteGroup::cyclic(6), FiniteGroup::cyclic(3), {0, 1, 2, 0, 1, 2}, 1, K, caps), 1});
  {
    Filtration F = z4_two_step();
    auto q = hk_quotient_cubespace(F, {0, 2}, K, caps.max_hk_elements);
    auto pt = hk_points(F.group());
    std::vector<Point> assign(4);
    for (Elem g = 0; g < 4; ++g) assign[pt[g]] = q.projection[g];
    out.push_back({"hk_z4_two_step_mod_2", CubeMap(hk_cubespace(F, K, caps.max_hk_elements), q.space, std::move(assign)), 2});
  }
  out.push_back({"d1_z2xz3_to_z3", projection_map(d_s(FiniteGroup::cyclic(2), 1, K, caps), d_s(FiniteGroup::cyclic(3), 1, K, caps), true), 1});
  out.push_back({"d1_z2xd2_z2_to_d2", projection_map(d_s(FiniteGroup::cyclic(2), 1, K, caps), d_s(FiniteGroup::cyclic(2), 2, K, caps), true), 1});
  out.push_back({"broken_map", broken_map(K), std::nullopt});
  out.push_back({"rotation_4_2", rotation(4, 2).as_cubemap(K, caps.max_hk_elements), 1});
  out.push_back({"z2xz2_rotation", z2xz2_rotation().as_cubemap(K, caps.max_hk_elements), 1});
  return out;
}

std::vector<ActionFixture> action_corpus() {
  std::vector<ActionFixture> out;
  auto cyc = [&](std::size_t n, std::size_t d) {
    out.push_back({"z" + std::to_string(n) + "_to_z" + std::to_string(d), rotation(n, d), n <= 8 ? 3 : 2});
  };
  cyc(4, 2);
  cyc(6, 3);
  cyc(6, 2);
  cyc(8, 4);
  cyc(8, 2);
  cyc(9, 3);
  cyc(12, 4);
  cyc(12, 6);
  cyc(16, 8);
  cyc(15, 5);
  cyc(5, 5);
  out.push_back({"z2xz2_to_z2", z2xz2_rotation(), 3});
  {
    FiniteGroup G = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    // (a,b) -> b, kernel {(0,0),(1,0)}
    out.push_back({"z2xz4_to_z4", coset_factor(G, {0}, {0, 4}), 3});
    FiniteGroup G2 = FiniteGroup::direct_product(FiniteGroup::cyclic(4), FiniteGroup::cyclic(4));
    out.push_back({"z4xz4_to_z4", coset_factor(G2, {0}, G2.generated({4})), 2});
  }
  {
    FiniteGroup S3 = symmetric3();
    out.push_back({"s3_to_z2", coset_factor(S3, {0}, {0, 1, 2}), 3});
    out.push_back({"s3_to_s3_mod_s", coset_factor(S3, {0}, {0, 3}), 3});
  }
  {
    FiniteGroup D4 = FiniteGroup::dihedral(4);
    out.push_back({"d4_to_d4_mod_center", coset_factor(D4, {0}, D4.center()), 3});
    out.push_back({"d4_to_z2", coset_factor(D4, {0}, {0, 1, 2, 3}), 3});
    out.push_back({"d4_mod_s_to_d4_mod_s_r2", coset_factor(D4, {0, 4}, D4.generated({2, 4})), 3});
    FiniteGroup D5 = FiniteGroup::dihedral(5);
    out.push_back({"d5_to_z2", coset_factor(D5, {0}, D5.generated({1})), 2});
    FiniteGroup D8 = FiniteGroup::dihedral(8);
    out.push_back({"d8_to_d8_mod_r4", coset_factor(D8, {0}, D8.generated({4})), 2});
  }
  {
    FiniteGroup Q = FiniteGroup::quaternion();
    out.push_back({"q8_to_q8_mod_center", coset_factor(Q, {0}, Q.center()), 3});
    out.push_back({"q8_to_q8_mod_i", coset_factor(Q, {0}, Q.generated({*Q.find("+i")})), 3});
    FiniteGroup H = FiniteGroup::heisenberg(2);
    out.push_back({"heisenberg2_to_center_quotient", coset_factor(H, {0}, H.center()), 3});
  }
  return out;
}

}  // namespace nspace::fixtures
