// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "nspace/cocycle.hpp"
#include "nspace/fixtures.hpp"
#include "nspace/io.hpp"
#include "nspace/structure.hpp"
#include "nspace/translation.hpp"

using namespace nspace;
namespace fx = nspace::fixtures;

namespace {

struct Tally {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first;
  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) fail(what);
  }
};

int g_failed = 0;

void report(int n, const std::string& title, const std::function<std::string(Tally&)>& body) {
  Tally t;
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  try {
    detail = body(t);
  } catch (const std::exception& e) {
    t.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = t.failures == 0 && t.checked > 0;
  if (!ok) ++g_failed;
  std::printf("criterion %2d %s: %s  [%zu checks, %zu failures%s%s] (%.1fs)\n", n, ok ? "PASS" : "FAIL", title.c_str(),
              t.checked, t.failures, detail.empty() ? "" : "; ", detail.c_str(), secs);
  if (!ok && !t.first.empty()) std::printf("    first failure: %s\n", t.first.c_str());
  std::fflush(stdout);
}

const std::vector<fx::SpaceFixture>& spaces() {
  static const auto v = fx::space_corpus();
  return v;
}
const std::vector<fx::MapFixture>& maps() {
  static const auto v = fx::map_corpus();
  return v;
}
const std::vector<fx::ActionFixture>& actions() {
  static const auto v = fx::action_corpus();
  return v;
}

// Ergodic nilspaces in the corpus with degree s >= 1 and max_dim >= s + 1.
struct Nil {
  std::string name;
  CubeSpace X;
  int s;
};
const std::vector<Nil>& nilspaces() {
  static const auto v = [] {
    std::vector<Nil> out;
    for (const auto& f : spaces()) {
      if (f.space.size() > 64 || !is_ergodic(f.space)) continue;
      auto d = nilspace_degree(f.space);
      if (d && *d >= 1 && *d + 1 <= f.space.max_dim()) out.push_back({f.name, f.space, *d});
    }
    return out;
  }();
  return v;
}

// Fibrations in the corpus (maps and factor maps) with their degree.
struct Fib {
  std::string name;
  CubeMap f;
  int s;
};
const std::vector<Fib>& fibrations() {
  static const auto v = [] {
    std::vector<Fib> out;
    auto consider = [&](const std::string& name, const CubeMap& f) {
      if (!is_ergodic(f.domain)) return;
      auto c = is_fibration(f);
      if (c.fibration && c.degree && *c.degree >= 1 && *c.degree + 1 <= f.domain.max_dim()) {
        out.push_back({name, f, *c.degree});
      }
    };
    for (const auto& m : maps()) consider(m.name, m.map);
    for (const auto& a : actions()) {
      if (a.factor.domain.size() <= 8) consider(a.name, a.factor.as_cubemap(a.max_dim, Caps::defaults().max_hk_elements));
    }
    return out;
  }();
  return v;
}

// c with g applied on the vertices of a face: the brute-force face check.
bool translation_by_definition(const CubeSpace& X, const Perm& phi, int k) {
  for (int n = std::max(k, 1); n <= X.max_dim(); ++n) {
    for (const Face& F : enumerate_faces_of_dim(n, n - k)) {
      auto verts = face_vertices(n, F.fixed_mask, F.fixed_values);
      for (const CubeKey& c : X.cubes(n)) {
        Configuration m = c.unpack(n);
        for (auto v : verts) m.values[v] = phi[m.values[v]];
        if (!X.contains(m)) return false;
      }
    }
  }
  return true;
}

std::vector<Elem> abelian_oracle_orders(const FiniteGroup& H) {
  // |H / Z(H)| and |Z(H)| straight from the Cayley table
  std::size_t z = 0;
  for (Elem a = 0; a < H.order(); ++a) {
    bool central = true;
    for (Elem b = 0; b < H.order() && central; ++b) central = H.mul(a, b) == H.mul(b, a);
    z += central;
  }
  return {static_cast<Elem>(H.order() / z), static_cast<Elem>(z)};
}

std::string summary(std::size_t a, const char* what) { return std::to_string(a) + " " + what; }

}  // namespace

int main() {
  std::printf("nspace acceptance run\n");

  report(1, "constructor outputs satisfy the cubespace axioms", [](Tally& t) {
    for (const auto& f : spaces()) {
      auto v = validate_cubespace(f.space);
      t.expect(v.ok, f.name + ": " + v.problem);
    }
    // quotient constructor over ~_s for every fibrant corpus space
    std::size_t quotients = 0;
    for (const auto& f : spaces()) {
      if (!is_fibrant(f.space).ok) continue;
      for (int s = 0; s + 1 <= f.space.max_dim(); ++s) {
        auto r = canonical_relation(f.space, s);
        if (r.status != RelationStatus::Equivalence) continue;
        auto v = validate_cubespace(quotient_cubespace(f.space, r.relation).quotient);
        t.expect(v.ok, f.name + "/~_" + std::to_string(s));
        ++quotients;
      }
    }
    if (spaces().size() < 50) t.fail("corpus has fewer than 50 spaces");
    return summary(spaces().size(), "fixtures") + ", " + summary(quotients, "quotients");
  });

  report(2, "fibrant implies gluing", [](Tally& t) {
    std::size_t fibrant = 0;
    for (const auto& f : spaces()) {
      if (!is_fibrant(f.space).ok) continue;
      ++fibrant;
      t.expect(!gluing_witness(f.space) && f.space.gluing(), f.name);
    }
    return summary(fibrant, "fibrant fixtures");
  });

  report(3, "quotients by ~_s are nilspaces of degree <= s", [](Tally& t) {
    for (const auto& f : spaces()) {
      if (!is_fibrant(f.space).ok) continue;
      for (int s = 0; s + 1 <= f.space.max_dim(); ++s) {
        auto r = canonical_relation(f.space, s);
        t.expect(r.status == RelationStatus::Equivalence, f.name + ": ~_" + std::to_string(s) + " not an equivalence");
        if (r.status != RelationStatus::Equivalence) continue;
        auto d = nilspace_degree(quotient_cubespace(f.space, r.relation).quotient);
        t.expect(d && *d <= s, f.name + "/~_" + std::to_string(s));
      }
    }
    auto d1 = nilspace_degree(fx::d_s(FiniteGroup::cyclic(2), 1, 3));
    auto h = nilspace_degree(fx::heisenberg_space(2, 3));
    t.expect(d1 == 1, "degree of D_1(Z2) is not 1");
    t.expect(h == 2, "degree of the Heisenberg space is not 2");
    return std::string("D_1(Z2) -> 1, Heisenberg mod 2 -> 2");
  });

  report(4, "structure groups and bundle evidence", [](Tally& t) {
    auto d2 = build_tower(fx::d_s(FiniteGroup::cyclic(2), 2, 3), 2);
    t.expect(d2.levels.size() == 2 && d2.levels[0].group.type() == "Z2" && d2.levels[1].group.group.order() == 1,
             "D_2(Z2): expected A_2 = Z2, A_1 = 1");
    FiniteGroup H = FiniteGroup::heisenberg(2);
    auto oracle = abelian_oracle_orders(H);
    auto ht = build_tower(fx::heisenberg_space(2, 3), 2);
    t.expect(ht.levels.size() == 2 && ht.levels[1].group.group.order() == oracle[0] &&
                 ht.levels[0].group.group.order() == oracle[1],
             "Heisenberg: |A_1|, |A_2| differ from |H/Z|, |Z|");
    std::size_t towers = 2, levels = 0;
    auto flags = [&](const TowerCertificate& tc, const std::string& name) {
      for (const auto& L : tc.levels) {
        ++levels;
        t.expect(L.group.well_defined && L.group.free_action && L.group.transitive && L.group.cube_compatible &&
                     L.group.abelian && L.orbits_match,
                 name + " level " + std::to_string(L.k));
      }
      t.expect(tc.valid(), name + ": tower evidence");
    };
    for (const auto& n : nilspaces()) {
      flags(build_tower(n.X, n.s), n.name);
      ++towers;
    }
    for (const auto& f : fibrations()) {
      flags(build_relative_tower(f.f, f.s), f.name);
      ++towers;
    }
    return summary(towers, "towers") + ", " + summary(levels, "levels");
  });

  report(5, "relative NRP equals the relative canonical relation", [](Tally& t) {
    for (const auto& a : actions()) {
      const int K = a.max_dim;
      CubeMap f = a.factor.as_cubemap(K, Caps::defaults().max_hk_elements);
      for (int k = 1; k + 1 <= K; ++k) {
        auto nrp = relative_nrp(a.factor, k, Caps::defaults().max_hk_elements);
        t.expect(nrp == relative_canonical_relation(f, k).relation, a.name + " k=" + std::to_string(k));
      }
    }
    return summary(actions().size(), "factor maps");
  });

  report(6, "factor maps of minimal actions are fibrations", [](Tally& t) {
    std::size_t max_order = 0;
    for (const auto& a : actions()) {
      t.expect(is_minimal(a.factor.domain), a.name + " is not minimal");
      auto c = is_fibration(a.factor.as_cubemap(a.max_dim, Caps::defaults().max_hk_elements));
      t.expect(c.fibration, a.name);
      max_order = std::max(max_order, a.factor.domain.size());
    }
    if (actions().size() < 20) t.fail("fewer than 20 factor maps");
    return summary(actions().size(), "factor maps") + ", largest domain " + std::to_string(max_order);
  });

  report(7, "translation definition agrees with the criterion", [](Tally& t) {
    std::size_t autos = 0;
    for (const auto& n : nilspaces()) {
      auto aut = enumerate_automorphisms(n.X, Caps::defaults());
      for (const Perm& phi : aut.elements) {
        ++autos;
        for (int k = 1; k <= n.s + 1; ++k) {
          auto v = is_k_translation(n.X, phi, k);
          t.expect(v.criterion.has_value() && v.agree, n.name + " k=" + std::to_string(k));
          t.expect(v.direct == translation_by_definition(n.X, phi, k), n.name + ": direct check differs from brute force");
        }
      }
    }
    return summary(nilspaces().size(), "nilspaces") + ", " + summary(autos, "automorphisms");
  });

  report(8, "structure group elements are translations at their level", [](Tally& t) {
    std::size_t perms = 0;
    auto check = [&](const TowerCertificate& tc, const std::string& name) {
      for (const auto& L : tc.levels) {
        for (const Perm& p : L.group.action) {
          ++perms;
          t.expect(is_k_translation(L.map, p, L.k).holds(), name + " level " + std::to_string(L.k));
        }
      }
    };
    for (const auto& n : nilspaces()) check(build_tower(n.X, n.s), n.name);
    for (const auto& f : fibrations()) check(build_relative_tower(f.f, f.s), f.name);
    return summary(perms, "permutations");
  });

  report(9, "discrepancy vanishes exactly on cubes and ignores the base", [](Tally& t) {
    std::size_t configs = 0, fixtures = 0;
    for (const auto& f : fibrations()) {
      LevelData L = level_data(f.f, f.s);
      const std::size_t a = L.A.group.order();
      const std::size_t nv = vertex_count(f.s + 1);
      if (a > 4 || std::pow(double(a), double(nv)) > 70000) continue;
      ++fixtures;
      for (const auto& [proj, bases] : L.base_cubes) {
        Configuration c0 = bases.front().unpack(f.s + 1);
        std::vector<std::size_t> digit(nv, 0);
        while (true) {
          Configuration c = c0;
          for (std::size_t v = 0; v < nv; ++v) c.values[v] = L.A.action[digit[v]][c0.values[v]];
          ++configs;
          auto all = discrepancy_all_bases(L, c);
          bool same = std::all_of(all.begin(), all.end(), [&](Elem e) { return e == all.front(); });
          t.expect(same, f.name + ": base dependence");
          t.expect((all.front() == L.A.group.identity()) == f.f.domain.contains(c), f.name + ": zero iff cube");
          std::size_t i = 0;
          while (i < nv && ++digit[i] == a) digit[i++] = 0;
          if (i == nv) break;
        }
      }
    }
    return summary(fixtures, "fibrations") + ", " + summary(configs, "configurations");
  });

  report(10, "coboundary solver round trip", [](Tally& t) {
    std::mt19937_64 rng(2024);
    std::vector<FiniteGroup> targets = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                        fx::z2xz2(), FiniteGroup::cyclic(6)};
    std::vector<CubeMap> subjects;
    for (const auto& m : maps()) {
      if (m.map.domain.size() <= 16 && is_morphism(m.map)) subjects.push_back(m.map);
    }
    std::size_t solved = 0, certificates = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const CubeMap& f = subjects[rng() % subjects.size()];
      const FiniteGroup& A = targets[rng() % targets.size()];
      int k = 1 + static_cast<int>(rng() % std::min(3, f.domain.max_dim()));
      Cochain h(f.domain.size());
      for (auto& v : h) v = static_cast<Elem>(rng() % A.order());
      FiberCocycle rho = coboundary(fiber_cubes(f, k), A, h);
      auto sol = solve_coboundary(rho);
      t.expect(sol.h.has_value(), "coboundary reported unsolvable");
      if (sol.h) {
        ++solved;
        t.expect(coboundary(rho.domain, A, *sol.h).values == rho.values, "solution does not reproduce rho");
      }
      // perturbed copy: either solvable with a checked solution or a verified certificate
      if (!rho.values.empty()) {
        FiberCocycle bad = rho;
        bad.values[rng() % bad.values.size()] = static_cast<Elem>(1 + rng() % (A.order() - 1));
        auto s2 = solve_coboundary(bad);
        if (s2.h) {
          t.expect(coboundary(bad.domain, A, *s2.h).values == bad.values, "perturbed solution wrong");
        } else {
          ++certificates;
          t.expect(s2.certificate && verify_certificate(bad, *s2.certificate), "certificate does not verify");
        }
      }
    }
    return summary(solved, "solved") + ", " + summary(certificates, "certificates verified");
  });

  report(11, "repair of twisted lifts", [](Tally& t) {
    std::mt19937_64 rng(7);
    std::size_t repaired = 0, brute = 0;
    for (const auto& f : fibrations()) {
      if (f.f.domain.size() > 16) continue;
      LevelData L = level_data(f.f, f.s);
      for (int k = 1; k <= f.s; ++k) {
        TranslationGroup T = translation_group(f.f, k, Caps::defaults());
        for (const Perm& phi : T.elements) {
          // phi twisted by a random structure-group cochain
          Perm psi(phi.size());
          for (Point x = 0; x < phi.size(); ++x) psi[x] = L.A.action[rng() % L.A.group.order()][phi[x]];
          bool fiberwise = true;
          for (Point x = 0; x < phi.size(); ++x) fiberwise &= f.f.assign[psi[x]] == f.f.assign[x];
          std::vector<bool> hit(psi.size(), false);
          for (auto v : psi) hit[v] = true;
          if (!fiberwise || std::find(hit.begin(), hit.end(), false) != hit.end()) continue;
          RepairResult r = repair_lift(L, psi, k);
          t.expect(r.repaired, f.name + ": twisted lift not repaired (" + r.note + ")");
          if (r.repaired) {
            ++repaired;
            t.expect(is_k_translation(f.f, r.repaired_map, k).holds(), f.name + ": repaired map not certified");
          }
        }
      }
    }
    // tiny fixture: every failure certificate is confirmed by trying all cochains
    CubeMap tiny = fx::heisenberg_central_quotient(3);
    LevelData L = level_data(tiny, 2);
    const std::size_t n = tiny.domain.size(), a = L.A.group.order();
    for (int k = 1; k <= 2; ++k) {
      std::vector<Point> perm(n);
      for (Point x = 0; x < n; ++x) perm[x] = x;
      std::size_t tried = 0;
      do {
        bool fiberwise = true;
        for (Point x = 0; x < n; ++x) fiberwise &= tiny.assign[perm[x]] == tiny.assign[x];
        if (!fiberwise || tried++ > 400) continue;
        RepairResult r;
        try {
          r = repair_lift(L, perm, k);
        } catch (const InvalidInput&) {
          continue;  // induced map is not in Aut_k(g_{s-1})
        }
        if (r.repaired || !r.certificate) continue;
        ++brute;
        t.expect(verify_certificate(r.rho, *r.certificate), "certificate does not verify");
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= a;
        bool any = false;
        for (std::size_t code = 0; code < total && !any; ++code) {
          Cochain h(n);
          std::size_t c = code;
          for (auto& v : h) {
            v = static_cast<Elem>(c % a);
            c /= a;
          }
          any = coboundary(r.rho.domain, L.A.group, h).values == r.rho.values;
        }
        t.expect(!any, "brute force found a solution behind a failure certificate");
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return summary(repaired, "repaired") + ", " + summary(brute, "failure certificates brute-forced");
  });

  report(12, "dynamical towers are equivariant", [](Tally& t) {
    for (const auto& [name, pi] : {std::pair{"Z4->Z2", fx::rotation(4, 2)}, std::pair{"Z2xZ2->Z2", fx::z2xz2_rotation()}}) {
      auto tc = dynamical_tower(pi, 1, 3, Caps::defaults().max_hk_elements);
      t.expect(tc.levels.size() == 1 && tc.levels[0].group.type() == "Z2", std::string(name) + ": A_1 is not Z2");
      for (const auto& L : tc.levels) t.expect(L.equivariant.value_or(false), std::string(name) + ": not equivariant");
    }
    return std::string("A_1 = Z2 on both");
  });

  report(13, "fibers carry the map's structure groups", [](Tally& t) {
    std::size_t fibers = 0;
    for (const auto& f : fibrations()) {
      auto tc = build_relative_tower(f.f, f.s);
      for (Point y = 0; y < f.f.codomain.size(); ++y) {
        auto ft = build_tower(fiber_subcubespace(f.f, y), f.s);
        ++fibers;
        bool same = ft.levels.size() == tc.levels.size();
        for (std::size_t i = 0; same && i < tc.levels.size(); ++i) {
          same = ft.levels[i].group.invariants == tc.levels[i].group.invariants;
        }
        t.expect(same, f.name + " fiber " + f.f.codomain.label(y));
      }
    }
    return summary(fibrations().size(), "fibrations") + ", " + summary(fibers, "fibers");
  });

  report(14, "repeated CLI runs give identical reports", [](Tally& t) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "nspace_acceptance";
    fs::remove_all(dir);
    std::vector<std::string> names;
    for (const auto& f : spaces()) {
      if (f.space.size() <= 16) names.push_back(f.name);
    }
    std::vector<std::vector<std::string>> runs;
    for (const auto& name : names) {
      auto r = nspace::cli::run_command({"gen", name, "--out", (dir / name).string()});
      t.expect(r.exit_code == 0, "gen " + name + ": " + r.error);
      std::string in = (dir / name / (name + ".json")).string();
      runs.push_back({"check", "--property", "fibrant", "-i", in, "--format", "machine-readable"});
      runs.push_back({"check", "--property", "nilspace-degree", "-i", in, "--format", "machine-readable"});
      runs.push_back({"relate", "canonical:1", "-i", in, "--format", "machine-readable"});
    }
    for (const auto& m : {"heisenberg2_central_quotient", "d1_z4_mod_2", "rotation_4_2"}) {
      auto r = nspace::cli::run_command({"gen", m, "--out", (dir / m).string()});
      t.expect(r.exit_code == 0, std::string("gen ") + m);
      std::string in = (dir / m / (std::string(m) + ".json")).string();
      runs.push_back({"tower", "relative", "-i", in, "--format", "machine-readable"});
      runs.push_back({"fibers", "isomorphic", "-i", in, "--format", "machine-readable"});
    }
    for (const auto& args : runs) {
      auto a = nspace::cli::run_command(args);
      auto b = nspace::cli::run_command(args);
      t.expect(a.exit_code == b.exit_code && a.output == b.output && !a.output.empty(), "differs: " + args[0] + " " + args[1]);
    }
    fs::remove_all(dir);
    return summary(runs.size(), "commands run twice");
  });

  std::printf("%s\n", g_failed == 0 ? "all criteria PASS" : (std::to_string(g_failed) + " criteria FAIL").c_str());
  return g_failed == 0 ? 0 : 1;
}
