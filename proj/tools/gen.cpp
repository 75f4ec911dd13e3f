#include <map>
#include <random>

#include "commands.hpp"
#include "nspace/fixtures.hpp"
#include "nspace/hk.hpp"

namespace nspace::cli {

namespace {

using Params = std::map<std::string, std::string>;

Params parse_params(const std::vector<std::string>& raw) {
  Params p;
  for (const auto& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidInput("parameter '" + kv + "' is not key=value");
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return p;
}

long get_int(const Params& p, const std::string& key, long fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("parameter " + key + " must be an integer");
  }
}

// "Z4", "Z2xZ4", ...
FiniteGroup parse_abelian(const std::string& spec) {
  FiniteGroup G;
  std::size_t pos = 0;
  bool first = true;
  while (pos < spec.size()) {
    auto x = spec.find('x', pos);
    std::string part = spec.substr(pos, x == std::string::npos ? std::string::npos : x - pos);
    if (part.size() < 2 || part[0] != 'Z') throw InvalidInput("group '" + spec + "' is not of the form Zn or ZmxZn");
    std::size_t n = 0;
    try {
      n = std::stoul(part.substr(1));
    } catch (const std::exception&) {
      throw InvalidInput("bad cyclic factor '" + part + "'");
    }
    if (n == 0 || n > 64) throw InvalidInput("cyclic factor out of range in '" + spec + "'");
    G = first ? FiniteGroup::cyclic(n) : FiniteGroup::direct_product(G, FiniteGroup::cyclic(n));
    first = false;
    if (x == std::string::npos) break;
    pos = x + 1;
  }
  return G;
}

CubeMap hk_projection_map(const Filtration& F, const HKQuotient& q, int K, const Caps& caps) {
  auto pt = hk_points(F.group());
  std::vector<Point> assign(F.group().order());
  for (Elem g = 0; g < F.group().order(); ++g) assign[pt[g]] = q.projection[g];
  return CubeMap(hk_cubespace(F, K, caps.max_hk_elements), q.space, std::move(assign));
}

}  // namespace

std::vector<std::pair<std::string, io::Document>> generate(const std::string& name,
                                                           const std::vector<std::string>& raw,
                                                           std::uint64_t seed, const Options& opt) {
  const Params p = parse_params(raw);
  const int K = static_cast<int>(get_int(p, "K", opt.max_dim.value_or(3)));
  const Caps& caps = opt.caps;
  std::vector<std::pair<std::string, io::Document>> out;

  if (name == "d_s_cubespace") {
    FiniteGroup A = parse_abelian(p.count("A") ? p.at("A") : "Z2");
    int s = static_cast<int>(get_int(p, "s", 1));
    out.emplace_back("group", io::make_document(A));
    out.emplace_back("cubespace", io::make_document(d_s_cubespace(A, s, K, caps.max_hk_elements)));
  } else if (name == "heisenberg_mod") {
    std::size_t prime = static_cast<std::size_t>(get_int(p, "p", 2));
    Filtration F = Filtration::lower_central(FiniteGroup::heisenberg(prime));
    HKQuotient q = hk_quotient_cubespace(F, F.group().center(), K, caps.max_hk_elements);
    out.emplace_back("group", io::make_document(F.group()));
    out.emplace_back("filtration", io::make_document(F));
    out.emplace_back("nilspace", io::make_document(hk_cubespace(F, K, caps.max_hk_elements)));
    out.emplace_back("central_quotient_map", io::make_document(hk_projection_map(F, q, K, caps)));
  } else if (name == "rotation") {
    auto n = static_cast<std::size_t>(get_int(p, "n", 4));
    auto d = static_cast<std::size_t>(get_int(p, "factor", 2));
    FactorMap pi = fixtures::rotation(n, d);
    out.emplace_back("domain", io::make_document(pi.domain));
    out.emplace_back("codomain", io::make_document(pi.codomain));
    out.emplace_back("factor_map", io::make_document(pi, K, caps.max_hk_elements));
  } else if (name == "random_closure") {
    auto n = static_cast<std::size_t>(get_int(p, "n", 4));
    out.emplace_back("cubespace", io::make_document(fixtures::random_closure(n, K, seed)));
  } else if (name == "broken_map") {
    out.emplace_back("map", io::make_document(fixtures::broken_map(K)));
  } else if (name == "coboundary" || name == "twisted_cocycle") {
    // rho = ∂h for a seeded random h, optionally perturbed on one cube
    const std::string map_name = p.count("map") ? p.at("map") : "d1_z4_mod_2";
    std::optional<CubeMap> f;
    for (auto& m : fixtures::map_corpus(caps)) {
      if (m.name == map_name) f = m.map;
    }
    if (!f) throw InvalidInput("unknown map fixture '" + map_name + "'");
    int k = static_cast<int>(get_int(p, "k", 1));
    FiniteGroup A = parse_abelian(p.count("A") ? p.at("A") : "Z2");
    std::mt19937_64 rng(seed);
    Cochain h(f->domain.size());
    for (auto& v : h) v = static_cast<Elem>(rng() % A.order());
    FiberCocycle rho = coboundary(fiber_cubes(*f, k), A, h);
    if (name == "twisted_cocycle" && !rho.values.empty()) {
      std::size_t i = rng() % rho.values.size();
      rho.values[i] = A.mul(rho.values[i], static_cast<Elem>(1 % A.order()));
    }
    io::CocycleDoc doc{*f, k, A, rho.values};
    out.emplace_back("cocycle", io::make_document(std::move(doc)));
  } else {
    for (auto& s : fixtures::space_corpus(caps)) {
      if (s.name == name) out.emplace_back(name, io::make_document(s.space));
    }
    if (out.empty()) {
      for (auto& m : fixtures::map_corpus(caps)) {
        if (m.name == name) out.emplace_back(name, io::make_document(m.map));
      }
    }
    if (out.empty()) {
      for (auto& a : fixtures::action_corpus()) {
        if (a.name == name) out.emplace_back(name, io::make_document(a.factor, K, caps.max_hk_elements));
      }
    }
    if (out.empty()) throw InvalidInput("unknown fixture '" + name + "'");
  }
  return out;
}

}  // namespace nspace::cli
