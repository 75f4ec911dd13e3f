#include "commands.hpp"

#include <algorithm>
#include <map>

#include "nspace/cocycle.hpp"
#include "nspace/factorization.hpp"
#include "nspace/structure.hpp"
#include "nspace/translation.hpp"

namespace nspace::cli {

using io::Json;

namespace {

CubeSpace truncate(const CubeSpace& X, int K) {
  if (K == X.max_dim()) return X;
  if (K > X.max_dim()) {
    throw InvalidInput("--max-dim " + std::to_string(K) + " exceeds the document's max_dim " + std::to_string(X.max_dim()));
  }
  std::vector<std::vector<CubeKey>> keys(K + 1);
  for (int k = 1; k <= K; ++k) keys[k] = X.cubes(k);
  return CubeSpace::from_keys(X.labels(), K, std::move(keys));
}

Json corner_json(const CubeSpace& X, const Configuration& c) {
  Json a = io::configuration_json(X, c);
  if (!a.empty()) a.back() = nullptr;
  return a;
}

Json perm_json(const CubeSpace& X, const Perm& p) {
  Json j = Json::object();
  for (Point x = 0; x < p.size(); ++x) j[X.label(x)] = X.label(static_cast<Point>(p[x]));
  return j;
}

const CubeSpace& space_of(const Loaded& in) {
  if (in.doc.kind != io::Kind::CubeSpace) throw InvalidInput(in.path + ": expected a cubespace document");
  return in.doc.space();
}

const CubeMap& map_of(const Loaded& in) {
  if (in.doc.kind != io::Kind::Map) throw InvalidInput(in.path + ": expected a map document");
  return in.doc.map().map;
}

const FactorMap& factor_of(const Loaded& in) {
  if (in.doc.kind != io::Kind::Map || !in.doc.map().factor) {
    throw InvalidInput(in.path + ": expected a map between actions");
  }
  return *in.doc.map().factor;
}

void need_inputs(const std::vector<Loaded>& in, std::size_t lo, std::size_t hi, const std::string& what) {
  if (in.size() < lo || in.size() > hi) {
    throw InvalidInput(what + " takes " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                       " input document(s), got " + std::to_string(in.size()));
  }
}

int need_k(const std::optional<int>& k, const std::string& mode) {
  if (!k) throw InvalidInput("mode '" + mode + "' needs a level, as in " + mode + ":1");
  return *k;
}

Outcome start(const Options& opt, std::vector<Loaded>& in) {
  Outcome o;
  o.report.command = opt.command + (opt.mode.empty() ? "" : " " + opt.mode) +
                     (opt.property.empty() ? "" : " --property " + opt.property);
  o.report.caps = opt.caps;
  in = load_inputs(opt, o.report);
  return o;
}

int fibration_level(const Options& opt, const CubeMap& f) {
  if (opt.level) return *opt.level;
  auto cert = is_fibration(f);
  if (!cert.fibration) throw InvalidInput("the map is not a fibration");
  if (!cert.degree) throw InvalidInput("fibration degree is not determined below max_dim; pass --level");
  return std::max(1, *cert.degree);
}

Json group_summary(const StructureGroupCertificate& A) {
  return Json{{"order", A.group.order()},
              {"type", A.type()},
              {"well_defined", A.well_defined},
              {"abelian", A.abelian},
              {"free", A.free_action},
              {"transitive", A.transitive},
              {"cube_compatible", A.cube_compatible}};
}

void tower_report(const TowerCertificate& t, Outcome& o) {
  Json levels = Json::array();
  for (const TowerLevel& L : t.levels) {
    Json j = group_summary(L.group);
    j["k"] = L.k;
    j["orbits_match"] = L.orbits_match;
    if (L.equivariant) j["equivariant"] = *L.equivariant;
    j["points"] = L.map.domain.size();
    levels.push_back(j);
    o.report.verdicts["A_" + std::to_string(L.k)] = L.group.type();
  }
  o.report.verdicts["levels"] = levels;
  o.report.verdicts["s"] = t.s;
  o.report.verdicts["chain_consistent"] = t.chain_consistent;
  o.report.verdicts["bottom_isomorphic"] = t.bottom_isomorphic;
  o.holds = t.valid();
  o.report.verdicts["holds"] = o.holds;
}

}  // namespace

std::pair<std::string, std::optional<int>> split_mode(const std::string& mode) {
  auto colon = mode.find(':');
  if (colon == std::string::npos) return {mode, std::nullopt};
  try {
    std::size_t used = 0;
    int k = std::stoi(mode.substr(colon + 1), &used);
    if (used + colon + 1 != mode.size()) throw std::invalid_argument("trailing");
    return {mode.substr(0, colon), k};
  } catch (const std::exception&) {
    throw InvalidInput("bad level in '" + mode + "'");
  }
}

std::vector<Loaded> load_inputs(const Options& opt, io::Report& report) {
  io::ParseOptions po;
  po.action_max_dim = opt.max_dim.value_or(2);
  po.max_elements = opt.caps.max_hk_elements;
  std::vector<Loaded> out;
  for (const auto& path : opt.inputs) {
    std::string text = io::read_file(path);
    report.inputs.push_back(Json{{"name", path}, {"hash", io::content_hash(text)}});
    io::Document doc;
    try {
      doc = io::parse_document(text, po);
    } catch (const InvalidInput& e) {
      throw InvalidInput(path + ": " + e.what());
    }
    if (opt.max_dim) {
      if (doc.kind == io::Kind::CubeSpace) {
        doc.payload = truncate(doc.space(), *opt.max_dim);
      } else if (doc.kind == io::Kind::Map) {
        io::MapDoc m = doc.map();
        if (m.factor) {
          m.map = m.factor->as_cubemap(*opt.max_dim, opt.caps.max_hk_elements);
        } else {
          m.map = CubeMap(truncate(m.map.domain, *opt.max_dim), truncate(m.map.codomain, *opt.max_dim), m.map.assign);
        }
        doc.payload = std::move(m);
      }
    }
    out.push_back({path, std::move(doc)});
  }
  return out;
}

Outcome cmd_validate(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 1, 1, "validate");
  std::vector<CubeSpace> spaces;
  if (in[0].doc.kind == io::Kind::CubeSpace) spaces.push_back(in[0].doc.space());
  if (in[0].doc.kind == io::Kind::Map) {
    spaces.push_back(in[0].doc.map().map.domain);
    spaces.push_back(in[0].doc.map().map.codomain);
  }
  o.report.verdicts["kind"] = io::to_string(in[0].doc.kind);
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    auto v = validate_cubespace(spaces[i]);
    if (!v.ok) {
      o.holds = false;
      Json w{{"space", i}, {"problem", v.problem}};
      if (v.violation) {
        w["dim"] = v.violation->l;
        w["cube"] = io::configuration_json(spaces[i], v.violation->cube);
        w["image"] = io::configuration_json(spaces[i], v.violation->image);
      }
      o.report.witnesses["closure"] = w;
      break;
    }
  }
  if (in[0].doc.kind == io::Kind::Map && o.holds) {
    if (auto w = morphism_witness(in[0].doc.map().map)) {
      o.holds = false;
      o.report.witnesses["morphism"] = Json{{"cube", io::configuration_json(in[0].doc.map().map.domain, w->cube)},
                                            {"image", io::configuration_json(in[0].doc.map().map.codomain, w->image)}};
    }
  }
  o.report.verdicts["holds"] = o.holds;
  return o;
}

Outcome cmd_check(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 1, 1, "check");
  auto [prop, k] = split_mode(opt.property);
  auto& V = o.report.verdicts;
  auto& W = o.report.witnesses;
  if (prop == "ergodic") {
    const CubeSpace& X = space_of(in[0]);
    o.holds = is_ergodic(X);
    for (Point x = 0; x < X.size() && !o.holds && W.empty(); ++x) {
      for (Point y = 0; y < X.size(); ++y) {
        if (X.max_dim() >= 1 && !X.contains(Configuration(1, {x, y}))) {
          W["missing_1_cube"] = {X.label(x), X.label(y)};
          break;
        }
      }
    }
  } else if (prop == "gluing") {
    const CubeSpace& X = space_of(in[0]);
    auto w = gluing_witness(X);
    o.holds = !w;
    if (w) {
      W["gluing"] = Json{{"k", w->k}, {"c1", io::configuration_json(X, w->c1)}, {"c2", io::configuration_json(X, w->c2)},
                         {"c3", io::configuration_json(X, w->c3)}};
    }
  } else if (prop == "fibrant") {
    const CubeSpace& X = space_of(in[0]);
    auto r = is_fibrant(X);
    o.holds = r.ok;
    V["bound"] = r.bound;
    if (r.witness) W["corner"] = Json{{"k", r.witness->k}, {"values", corner_json(X, r.witness->corner)}};
  } else if (prop == "uniqueness") {
    int kk = need_k(k, prop);
    std::optional<UniquenessWitness> w;
    const CubeSpace* X = nullptr;
    if (in[0].doc.kind == io::Kind::Map) {
      w = uniqueness_witness(map_of(in[0]), kk);
      X = &map_of(in[0]).domain;
    } else {
      w = uniqueness_witness(space_of(in[0]), kk);
      X = &space_of(in[0]);
    }
    o.holds = !w;
    if (w) W["cubes"] = Json{{"c1", io::configuration_json(*X, w->c1)}, {"c2", io::configuration_json(*X, w->c2)}};
  } else if (prop == "nilspace-degree") {
    auto d = nilspace_degree(space_of(in[0]));
    o.holds = d.has_value();
    V["degree"] = d ? Json(*d) : Json(nullptr);
  } else if (prop == "morphism") {
    const CubeMap& f = map_of(in[0]);
    auto w = morphism_witness(f);
    o.holds = !w;
    if (w) {
      W["morphism"] = Json{{"k", w->k}, {"cube", io::configuration_json(f.domain, w->cube)},
                           {"image", io::configuration_json(f.codomain, w->image)}};
    }
  } else if (prop == "fibration" || prop == "fibration-degree") {
    const CubeMap& f = map_of(in[0]);
    auto c = is_fibration(f);
    V["morphism"] = c.morphism;
    V["fibration"] = c.fibration;
    V["bound"] = c.bound;
    V["degree"] = c.fibration && c.degree ? Json(*c.degree) : Json(nullptr);
    if (c.witness) {
      W["corner"] = Json{{"k", c.witness->k}, {"values", corner_json(f.domain, c.witness->corner)},
                         {"target", f.codomain.label(c.witness->target)}};
    }
    o.holds = prop == "fibration" ? c.fibration : c.fibration && c.degree.has_value();
  } else if (prop == "rel-ergodic") {
    o.holds = is_relatively_k_ergodic(map_of(in[0]), need_k(k, prop));
  } else {
    throw InvalidInput("unknown property '" + opt.property + "'");
  }
  V["holds"] = o.holds;
  return o;
}

Outcome cmd_relate(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 1, 1, "relate");
  auto [mode, k] = split_mode(opt.mode);
  int kk = need_k(k, mode);
  PointRelation R;
  std::vector<std::string> labels;
  CubeSpace X;
  if (mode == "canonical" || mode == "rel-canonical") {
    RelationResult r = mode == "canonical" ? canonical_relation(space_of(in[0]), kk)
                                           : relative_canonical_relation(map_of(in[0]), kk);
    X = mode == "canonical" ? space_of(in[0]) : map_of(in[0]).domain;
    R = r.relation;
    o.report.verdicts["status"] = to_string(r.status);
    o.report.verdicts["gluing"] = r.gluing;
    if (r.witness) {
      o.report.witnesses["equivalence"] = Json{{"property", r.witness->property},
                                               {"points", {X.label(r.witness->x), X.label(r.witness->y), X.label(r.witness->z)}}};
    }
  } else if (mode == "nrp") {
    const GroupAction* S = nullptr;
    if (in[0].doc.kind == io::Kind::Action) S = &in[0].doc.action();
    else S = &factor_of(in[0]).domain;
    const int K = opt.max_dim.value_or(kk + 1);
    X = dynamical_cubes(*S, K, opt.caps.max_hk_elements);
    R = nrp_relation(*S, X, kk);
    o.report.verdicts["minimal"] = is_minimal(*S);
    o.report.verdicts["status"] = is_equivalence(R) ? "equivalence" : "not-equivalence";
  } else if (mode == "rel-nrp") {
    const FactorMap& pi = factor_of(in[0]);
    R = relative_nrp(pi, kk, opt.caps.max_hk_elements);
    const CubeMap& f = map_of(in[0]);
    X = f.domain;
    o.report.verdicts["equals_rel_canonical"] = R == relative_canonical_relation(f, kk).relation;
    o.report.verdicts["status"] = is_equivalence(R) ? "equivalence" : "not-equivalence";
  } else {
    throw InvalidInput("unknown relation '" + mode + "'");
  }
  o.report.verdicts["pairs"] = R.pair_count();
  if (is_equivalence(R)) {
    auto cls = class_index(R);
    o.report.verdicts["classes"] = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  }
  o.report.witnesses["relation"] = io::relation_json(X, R);
  o.report.verdicts["holds"] = true;
  return o;
}

Outcome cmd_quotient(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 1, 2, "quotient");
  const CubeSpace& X = space_of(in[0]);
  PointRelation R;
  if (in.size() == 2) {
    if (in[1].doc.kind != io::Kind::Relation) throw InvalidInput(in[1].path + ": expected a relation document");
    const auto& rd = in[1].doc.relation();
    if (rd.points != X.labels()) throw InvalidInput("relation points differ from the space's points");
    R = rd.relation;
  } else {
    auto [mode, k] = split_mode(opt.mode);
    if (mode != "canonical") throw InvalidInput("quotient mode must be canonical:k or a relation document");
    auto r = canonical_relation(X, need_k(k, mode));
    if (r.status != RelationStatus::Equivalence) {
      throw InvalidInput(std::string("~_k is not an equivalence on this space (") + to_string(r.status) + ")");
    }
    R = r.relation;
  }
  QuotientCertificate q = quotient_cubespace(X, R);
  auto v = validate_cubespace(q.quotient);
  auto d = nilspace_degree(q.quotient);
  o.report.verdicts["points"] = q.quotient.size();
  o.report.verdicts["valid"] = v.ok;
  o.report.verdicts["degree"] = d ? Json(*d) : Json(nullptr);
  Json proj = Json::object();
  for (Point x = 0; x < X.size(); ++x) proj[X.label(x)] = q.quotient.label(q.projection[x]);
  o.report.witnesses["projection"] = proj;
  o.report.witnesses["quotient"] = io::cubespace_json(q.quotient);
  o.holds = v.ok;
  o.report.verdicts["holds"] = o.holds;
  return o;
}

Outcome cmd_tower(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 1, 1, "tower");
  if (opt.mode == "absolute") {
    const CubeSpace& X = space_of(in[0]);
    int s = 0;
    if (opt.level) {
      s = *opt.level;
    } else {
      auto d = nilspace_degree(X);
      if (!d) throw InvalidInput("not a nilspace below max_dim; pass --level");
      s = std::max(1, *d);
    }
    tower_report(build_tower(X, s), o);
  } else if (opt.mode == "relative") {
    const CubeMap& f = map_of(in[0]);
    tower_report(build_relative_tower(f, fibration_level(opt, f)), o);
  } else if (opt.mode == "dynamical") {
    const FactorMap& pi = factor_of(in[0]);
    const int K = map_of(in[0]).domain.max_dim();
    int s = 0;
    if (opt.level) {
      s = *opt.level;
    } else {
      const std::size_t n = pi.domain.size();
      for (s = 1; s + 1 <= K; ++s) {
        if (relative_nrp(pi, s, opt.caps.max_hk_elements) == PointRelation::diagonal(n)) break;
      }
      if (s + 1 > K) throw InvalidInput("NRP^[s](pi) is not trivial for any s < max_dim");
    }
    tower_report(dynamical_tower(pi, s, K, opt.caps.max_hk_elements), o);
  } else {
    throw InvalidInput("unknown tower mode '" + opt.mode + "'");
  }
  return o;
}

Outcome cmd_translations(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 1, 1, "translations");
  auto [mode, k] = split_mode(opt.mode);
  auto& V = o.report.verdicts;
  const bool is_map = in[0].doc.kind == io::Kind::Map;
  const CubeSpace& X = is_map ? map_of(in[0]).domain : space_of(in[0]);
  if (mode == "enumerate") {
    const int top = opt.level.value_or(X.max_dim());
    FiltrationEvidence F = is_map ? translation_filtration(map_of(in[0]), top, opt.caps)
                                  : translation_filtration(X, top, opt.caps);
    Json orders = Json::array();
    for (const auto& g : F.levels) orders.push_back(g.order());
    V["orders"] = orders;
    V["nested"] = F.nested;
    V["commutators"] = F.commutators;
    if (F.witness) o.report.witnesses["commutator_levels"] = {F.witness->first, F.witness->second};
    o.holds = F.nested && F.commutators;
  } else if (mode == "level") {
    int kk = need_k(k, mode);
    TranslationGroup G = is_map ? translation_group(map_of(in[0]), kk, opt.caps) : translation_group(X, kk, opt.caps);
    V["order"] = G.order();
    V["closed"] = G.closed;
    std::size_t disagreements = 0, checked = 0;
    if (!is_map) {
      for (const Perm& p : enumerate_automorphisms(X, opt.caps).elements) {
        auto v = is_k_translation(X, p, kk);
        if (v.criterion) ++checked;
        if (!v.agree) {
          ++disagreements;
          if (!o.report.witnesses.contains("disagreement")) o.report.witnesses["disagreement"] = perm_json(X, p);
        }
      }
      V["criterion_checked"] = checked;
      V["criterion_disagreements"] = disagreements;
    }
    Json elems = Json::array();
    for (const Perm& p : G.elements) elems.push_back(perm_json(X, p));
    o.report.witnesses["elements"] = elems;
    o.holds = G.closed && disagreements == 0;
  } else if (mode == "pushforward") {
    const CubeMap& g = map_of(in[0]);
    int kk = need_k(k, mode);
    auto r = pushforward_report(g, fibration_level(opt, g), kk, opt.caps);
    V["domain_order"] = r.domain_order;
    V["image_order"] = r.image_order;
    V["target_order"] = r.target_order;
    V["homomorphism"] = r.homomorphism;
    V["surjective"] = r.surjective;
    o.holds = r.homomorphism && r.surjective;
  } else {
    throw InvalidInput("unknown translations mode '" + opt.mode + "'");
  }
  V["holds"] = o.holds;
  return o;
}

namespace {

Json certificate_json(const FiberCocycle& rho, const UnsolvableCertificate& c) {
  Json comb = Json::array();
  for (auto [i, u] : c.combination) comb.push_back(Json{{"cube", io::key_json(rho.domain.map.domain, rho.domain.cubes[i], rho.domain.k)}, {"coefficient", u}});
  return Json{{"modulus", c.modulus}, {"character", c.character}, {"combination", comb}, {"constant", c.constant},
              {"verified", verify_certificate(rho, c)}};
}

// Lift of phi on X_{s-1} to X: class over q goes to the class over phi(q),
// members matched in index order.
Perm naive_lift(const LevelData& L, const Perm& phi) {
  const std::size_t n = L.g.domain.size();
  std::map<Point, std::vector<Point>> classes;
  for (Point x = 0; x < n; ++x) classes[L.projection[x]].push_back(x);
  Perm psi(n);
  for (const auto& [q, members] : classes) {
    const auto& target = classes.at(static_cast<Point>(phi[q]));
    if (target.size() != members.size()) throw InternalAlarm("classes of different sizes");
    for (std::size_t i = 0; i < members.size(); ++i) psi[members[i]] = target[i];
  }
  return psi;
}

}  // namespace

Outcome cmd_cocycle(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 1, 1, "cocycle");
  auto [mode, k] = split_mode(opt.mode);
  auto& V = o.report.verdicts;
  auto& W = o.report.witnesses;
  if (mode == "check" || mode == "solve") {
    if (in[0].doc.kind != io::Kind::Cocycle) throw InvalidInput(in[0].path + ": expected a cocycle document");
    FiberCocycle rho = in[0].doc.cocycle().cocycle();
    const CubeSpace& X = rho.domain.map.domain;
    auto w = cocycle_witness(rho);
    V["cocycle"] = !w;
    if (w) {
      W["additivity"] = Json{{"axis", w->axis}, {"c1", io::configuration_json(X, w->c1)},
                             {"c2", io::configuration_json(X, w->c2)}, {"c3", io::configuration_json(X, w->c3)}};
    }
    o.holds = !w;
    if (mode == "solve") {
      auto sol = solve_coboundary(rho);
      V["solvable"] = sol.h.has_value();
      if (sol.h) {
        Json h = Json::object();
        for (Point x = 0; x < X.size(); ++x) h[X.label(x)] = rho.target.label((*sol.h)[x]);
        W["h"] = h;
      }
      if (sol.certificate) W["certificate"] = certificate_json(rho, *sol.certificate);
      o.holds = sol.h.has_value();
    }
  } else if (mode == "repair") {
    const CubeMap& g = map_of(in[0]);
    const int s = fibration_level(opt, g);
    const int kk = k.value_or(1);
    if (kk < 1 || kk > s) throw InvalidInput("repair needs 1 <= k <= s");
    LevelData L = level_data(g, s);
    TranslationGroup T = translation_group(L.lower, kk, opt.caps);
    std::size_t repaired = 0, certified_failures = 0, invariant = 0;
    Json failures = Json::array();
    for (const Perm& phi : T.elements) {
      RepairResult r = repair_lift(L, naive_lift(L, phi), kk);
      if (r.repaired) {
        ++repaired;
        if (r.invariant_solution) ++invariant;
      } else if (r.certificate && verify_certificate(r.rho, *r.certificate)) {
        ++certified_failures;
        failures.push_back(Json{{"phi", perm_json(L.lower.domain, phi)}, {"certificate", certificate_json(r.rho, *r.certificate)}});
      } else {
        failures.push_back(Json{{"phi", perm_json(L.lower.domain, phi)}, {"note", r.note}});
      }
    }
    V["s"] = s;
    V["k"] = kk;
    V["lifts"] = T.order();
    V["repaired"] = repaired;
    V["class_constant_solutions"] = invariant;
    V["certified_failures"] = certified_failures;
    if (!failures.empty()) W["failures"] = failures;
    o.holds = repaired == T.order();
  } else {
    throw InvalidInput("unknown cocycle mode '" + opt.mode + "'");
  }
  V["holds"] = o.holds;
  return o;
}

Outcome cmd_factorize(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 2, 3, "factorize (phi, [g,] h)");
  const CubeMap& phi = map_of(in[0]);
  const CubeMap& h = map_of(in.back());
  CubeMap g = in.size() == 3 ? map_of(in[1]) : compose(phi, h);
  const int s = opt.level ? *opt.level : fibration_level(opt, h);
  auto& V = o.report.verdicts;
  V["s"] = s;
  if (opt.mode == "shadow") {
    ShadowCertificate c = shadow_of_fibration(phi, g, h, s);
    V["psi_fibration"] = c.psi_fibration;
    V["square_commutes"] = c.square_commutes;
    V["triangle_commutes"] = c.triangle_commutes;
    Json psi = Json::object();
    for (Point p = 0; p < c.psi.domain.size(); ++p) psi[c.psi.domain.label(p)] = c.psi.codomain.label(c.psi.assign[p]);
    o.report.witnesses["psi"] = psi;
    o.holds = c.valid();
  } else if (opt.mode == "vh") {
    VerticalHorizontal f = factor_vertical_horizontal(phi, g, h, s);
    auto hv = horizontal_conditions(phi, g, h, s);
    V["W_points"] = f.W.quotient.size();
    V["phi_v_fibration"] = f.phi_v_fibration;
    V["phi_h_fibration"] = f.phi_h_fibration;
    V["k_s_fibration"] = f.k_s_fibration;
    V["vertical"] = f.vertical;
    V["horizontal"] = f.horizontal;
    V["round_trip"] = f.round_trip;
    V["phi_horizontal"] = hv.relation_trivial;
    V["phi_vertical"] = is_vertical(phi, g, h, s);
    V["horizontal_conditions_agree"] = hv.consistent();
    o.report.witnesses["W"] = io::cubespace_json(f.W.quotient);
    o.holds = f.valid() && hv.consistent();
  } else {
    throw InvalidInput("unknown factorize mode '" + opt.mode + "'");
  }
  V["holds"] = o.holds;
  return o;
}

Outcome cmd_fibers(const Options& opt) {
  std::vector<Loaded> in;
  Outcome o = start(opt, in);
  need_inputs(in, 1, 1, "fibers");
  const CubeMap& f = map_of(in[0]);
  auto& V = o.report.verdicts;
  if (opt.mode == "extract") {
    Json fibers = Json::object();
    Json sizes = Json::object();
    for (Point y = 0; y < f.codomain.size(); ++y) {
      CubeSpace F = fiber_subcubespace(f, y);
      sizes[f.codomain.label(y)] = F.size();
      fibers[f.codomain.label(y)] = io::cubespace_json(F);
    }
    V["sizes"] = sizes;
    o.report.witnesses["fibers"] = fibers;
  } else if (opt.mode == "isomorphic") {
    const int s = fibration_level(opt, f);
    TowerCertificate t = build_relative_tower(f, s);
    std::map<int, std::vector<std::size_t>> expected;
    for (const auto& L : t.levels) expected[L.k] = L.group.invariants;
    bool groups_match = true, all_iso = true;
    Json per = Json::object();
    CubeSpace first = fiber_subcubespace(f, 0);
    for (Point y = 0; y < f.codomain.size(); ++y) {
      CubeSpace F = fiber_subcubespace(f, y);
      TowerCertificate ft = build_tower(F, s);
      Json types = Json::object();
      for (const auto& L : ft.levels) {
        types["A_" + std::to_string(L.k)] = L.group.type();
        if (L.group.invariants != expected[L.k]) groups_match = false;
      }
      per[f.codomain.label(y)] = types;
      auto iso = find_isomorphism(first, F, opt.caps.max_search_nodes);
      if (iso.status == SearchStatus::CapExceeded) throw CapExceeded("fiber isomorphism search");
      if (iso.status != SearchStatus::Found) all_iso = false;
    }
    for (const auto& [k, inv] : expected) V["A_" + std::to_string(k)] = abelian_type_string(inv);
    V["fiber_groups"] = per;
    V["groups_match"] = groups_match;
    V["fibers_isomorphic"] = all_iso;
    o.holds = groups_match;
  } else {
    throw InvalidInput("unknown fibers mode '" + opt.mode + "'");
  }
  V["holds"] = o.holds;
  return o;
}

}  // namespace nspace::cli
