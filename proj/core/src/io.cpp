#include "nspace/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nspace::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw InvalidInput((path.empty() ? std::string("document") : path) + ": " + msg);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

std::string sub(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string sub(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::uint64_t as_uint(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<std::string> as_labels(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    if (!j[i].is_string()) fail(sub(path, i), "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::vector<std::uint64_t> as_indices(const Json& j, std::size_t bound, const std::string& path) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    auto v = as_uint(j[i], sub(path, i));
    if (v >= bound) fail(sub(path, i), "index " + std::to_string(v) + " out of range (" + std::to_string(bound) + ")");
    out.push_back(v);
  }
  return out;
}

void check_header(const Json& j, Kind expected, const std::string& path) {
  auto k = parse_kind(field(j, "kind", path).get<std::string>());
  if (k != expected) fail(path, "expected kind '" + to_string(expected) + "', got '" + to_string(k) + "'");
  if (as_int(field(j, "format_version", path), sub(path, "format_version")) != kFormatVersion) {
    fail(sub(path, "format_version"), "unsupported version");
  }
}

Json header(Kind k) {
  Json j = Json::object();
  j["kind"] = to_string(k);
  j["format_version"] = kFormatVersion;
  return j;
}

// Index of each listed point in the object built from the listing (the
// constructors sort points by label).
template <class Find>
std::vector<Point> listing_remap(const Json& points, const Find& find, const std::string& path) {
  auto labels = as_labels(points, path);
  std::vector<Point> out;
  for (const auto& l : labels) {
    auto p = find(l);
    if (!p) fail(path, "unknown point '" + l + "'");
    out.push_back(*p);
  }
  return out;
}

CubeSpace parse_cubespace(const Json& j, const ParseOptions& opt, const std::string& path) {
  check_header(j, Kind::CubeSpace, path);
  auto labels = as_labels(field(j, "points", path), sub(path, "points"));
  if (labels.empty()) fail(sub(path, "points"), "no points");
  if (labels.size() > Caps::kHardMaxPoints) fail(sub(path, "points"), "more than 255 points");
  auto K = as_int(field(j, "max_dim", path), sub(path, "max_dim"));
  if (K < 0 || K > kMaxCubeDim) fail(sub(path, "max_dim"), "must be in 0..4");
  std::vector<std::vector<Configuration>> cubes(K + 1);
  const Json& cj = field(j, "cubes", path);
  if (!cj.is_object()) fail(sub(path, "cubes"), "expected an object keyed by dimension");
  for (auto it = cj.begin(); it != cj.end(); ++it) {
    const std::string cpath = sub(sub(path, "cubes"), it.key());
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(it.key(), &used);
      if (used != it.key().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      fail(cpath, "dimension key is not an integer");
    }
    if (k < 1 || k > K) fail(cpath, "dimension outside 1..max_dim");
    const Json& list = as_array(it.value(), cpath);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = sub(cpath, i);
      if (!list[i].is_array()) fail(p, "expected a cube array");
      if (list[i].size() != vertex_count(k)) {
        fail(p, "cube " + list[i].dump() + " has " + std::to_string(list[i].size()) + " vertices, expected " +
                    std::to_string(vertex_count(k)));
      }
      auto v = as_indices(list[i], labels.size(), p);
      cubes[k].emplace_back(k, std::vector<Point>(v.begin(), v.end()));
    }
  }
  if (opt.close_cubes) {
    std::vector<Configuration> gens;
    for (auto& c : cubes) gens.insert(gens.end(), c.begin(), c.end());
    return close_under_morphisms(labels, static_cast<int>(K), gens);
  }
  return CubeSpace::create(labels, static_cast<int>(K), cubes);
}

FiniteGroup parse_group(const Json& j, const std::string& path) {
  check_header(j, Kind::Group, path);
  auto labels = as_labels(field(j, "elements", path), sub(path, "elements"));
  const Json& t = as_array(field(j, "table", path), sub(path, "table"));
  std::vector<std::vector<Elem>> table;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto row = as_indices(t[i], labels.size(), sub(sub(path, "table"), i));
    table.emplace_back(row.begin(), row.end());
  }
  try {
    return FiniteGroup::from_table(labels, table);
  } catch (const InvalidInput& e) {
    fail(sub(path, "table"), e.what());
  }
}

Filtration parse_filtration(const Json& j, const std::string& path) {
  check_header(j, Kind::Filtration, path);
  FiniteGroup G = parse_group(field(j, "group", path), sub(path, "group"));
  const Json& lv = as_array(field(j, "levels", path), sub(path, "levels"));
  std::vector<std::vector<Elem>> levels;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    auto row = as_indices(lv[i], G.order(), sub(sub(path, "levels"), i));
    levels.emplace_back(row.begin(), row.end());
  }
  try {
    return Filtration(G, levels);
  } catch (const InvalidInput& e) {
    fail(sub(path, "levels"), e.what());
  }
}

GroupAction parse_action(const Json& j, const std::string& path) {
  check_header(j, Kind::Action, path);
  auto points = as_labels(field(j, "points", path), sub(path, "points"));
  const Json& g = field(j, "generators", path);
  if (!g.is_object()) fail(sub(path, "generators"), "expected an object of permutations");
  std::vector<std::string> names;
  std::vector<Perm> perms;
  for (auto it = g.begin(); it != g.end(); ++it) {
    names.push_back(it.key());
    auto v = as_indices(it.value(), points.size(), sub(sub(path, "generators"), it.key()));
    perms.emplace_back(v.begin(), v.end());
  }
  try {
    return GroupAction(points, names, perms);
  } catch (const InvalidInput& e) {
    fail(path, e.what());
  }
}

std::optional<Point> find_action_point(const GroupAction& S, const std::string& l) {
  auto it = std::lower_bound(S.points().begin(), S.points().end(), l);
  if (it == S.points().end() || *it != l) return std::nullopt;
  return static_cast<Point>(it - S.points().begin());
}

MapDoc parse_map(const Json& j, const ParseOptions& opt, const std::string& path) {
  check_header(j, Kind::Map, path);
  const Json& dj = field(j, "domain", path);
  const Json& cj = field(j, "codomain", path);
  const std::string dkind = field(dj, "kind", sub(path, "domain")).get<std::string>();
  const Json& aj = as_array(field(j, "assign", path), sub(path, "assign"));
  MapDoc m;
  if (dkind == "action") {
    GroupAction d = parse_action(dj, sub(path, "domain"));
    GroupAction c = parse_action(cj, sub(path, "codomain"));
    auto dr = listing_remap(dj["points"], [&](const std::string& l) { return find_action_point(d, l); }, sub(path, "domain.points"));
    auto cr = listing_remap(cj["points"], [&](const std::string& l) { return find_action_point(c, l); }, sub(path, "codomain.points"));
    if (aj.size() != d.size()) fail(sub(path, "assign"), "length differs from the domain size");
    auto a = as_indices(aj, c.size(), sub(path, "assign"));
    std::vector<Point> assign(d.size());
    for (std::size_t i = 0; i < a.size(); ++i) assign[dr[i]] = cr[a[i]];
    int K = opt.action_max_dim;
    if (j.contains("max_dim")) K = static_cast<int>(as_int(j["max_dim"], sub(path, "max_dim")));
    if (K < 1 || K > kMaxCubeDim) fail(sub(path, "max_dim"), "must be in 1..4");
    try {
      m.factor = FactorMap(std::move(d), std::move(c), std::move(assign));
    } catch (const InvalidInput& e) {
      fail(path, e.what());
    }
    m.map = m.factor->as_cubemap(K, opt.max_elements);
    return m;
  }
  CubeSpace d = parse_cubespace(dj, opt, sub(path, "domain"));
  CubeSpace c = parse_cubespace(cj, opt, sub(path, "codomain"));
  auto dr = listing_remap(dj["points"], [&](const std::string& l) { return d.find(l); }, sub(path, "domain.points"));
  auto cr = listing_remap(cj["points"], [&](const std::string& l) { return c.find(l); }, sub(path, "codomain.points"));
  if (aj.size() != d.size()) fail(sub(path, "assign"), "length differs from the domain size");
  auto a = as_indices(aj, c.size(), sub(path, "assign"));
  std::vector<Point> assign(d.size());
  for (std::size_t i = 0; i < a.size(); ++i) assign[dr[i]] = cr[a[i]];
  try {
    m.map = CubeMap(std::move(d), std::move(c), std::move(assign));
  } catch (const InvalidInput& e) {
    fail(path, e.what());
  }
  return m;
}

RelationDoc parse_relation(const Json& j, const std::string& path) {
  check_header(j, Kind::Relation, path);
  RelationDoc r;
  r.points = as_labels(field(j, "points", path), sub(path, "points"));
  r.relation = PointRelation(r.points.size());
  const Json& pj = as_array(field(j, "pairs", path), sub(path, "pairs"));
  for (std::size_t i = 0; i < pj.size(); ++i) {
    auto v = as_indices(pj[i], r.points.size(), sub(sub(path, "pairs"), i));
    if (v.size() != 2) fail(sub(sub(path, "pairs"), i), "expected a pair");
    r.relation.add(static_cast<Point>(v[0]), static_cast<Point>(v[1]));
  }
  return r;
}

CocycleDoc parse_cocycle(const Json& j, const ParseOptions& opt, const std::string& path) {
  check_header(j, Kind::Cocycle, path);
  CocycleDoc c;
  c.map = parse_map(field(j, "map", path), opt, sub(path, "map")).map;
  c.k = static_cast<int>(as_int(field(j, "k", path), sub(path, "k")));
  c.target = parse_group(field(j, "target", path), sub(path, "target"));
  FiberCubeSet S;
  try {
    S = fiber_cubes(c.map, c.k);
  } catch (const InvalidInput& e) {
    fail(path, e.what());
  }
  const std::size_t nv = vertex_count(c.k);
  std::vector<bool> seen(S.cubes.size(), false);
  c.values.assign(S.cubes.size(), c.target.identity());
  const Json& vj = as_array(field(j, "values", path), sub(path, "values"));
  const Json& pts = j["map"]["domain"]["points"];
  for (std::size_t i = 0; i < vj.size(); ++i) {
    const std::string p = sub(sub(path, "values"), i);
    if (!vj[i].is_array() || vj[i].size() != 2) fail(p, "expected [cube, value]");
    auto cube = as_indices(vj[i][0], pts.size(), p + ".cube");
    if (cube.size() != nv) fail(p, "cube " + vj[i][0].dump() + " has the wrong number of vertices");
    CubeKey key;
    for (std::size_t v = 0; v < nv; ++v) {
      key.bytes[v] = static_cast<std::uint8_t>(*c.map.domain.find(pts[cube[v]].get<std::string>()));
    }
    auto idx = S.index_of(key);
    if (!idx) fail(p, "cube " + vj[i][0].dump() + " is not a fiber cube");
    if (seen[*idx]) fail(p, "cube listed twice");
    seen[*idx] = true;
    c.values[*idx] = static_cast<Elem>(as_indices(Json::array({vj[i][1]}), c.target.order(), p + ".value")[0]);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail(sub(path, "values"), "some fiber cubes have no value");
  return c;
}

Json filtration_json(const Filtration& F) {
  Json j = header(Kind::Filtration);
  j["group"] = group_json(F.group());
  j["levels"] = F.levels();
  return j;
}

Json map_json(const MapDoc& m) {
  Json j = header(Kind::Map);
  if (m.factor) {
    j["domain"] = action_json(m.factor->domain);
    j["codomain"] = action_json(m.factor->codomain);
    j["assign"] = m.factor->assign;
    j["max_dim"] = m.map.domain.max_dim();
  } else {
    j["domain"] = cubespace_json(m.map.domain);
    j["codomain"] = cubespace_json(m.map.codomain);
    j["assign"] = m.map.assign;
  }
  return j;
}

Json cocycle_json(const CocycleDoc& c) {
  Json j = header(Kind::Cocycle);
  j["map"] = map_json(MapDoc{c.map, std::nullopt});
  j["k"] = c.k;
  j["target"] = group_json(c.target);
  FiberCubeSet S = fiber_cubes(c.map, c.k);
  Json values = Json::array();
  for (std::size_t i = 0; i < S.cubes.size(); ++i) {
    Json cube = Json::array();
    for (std::size_t v = 0; v < vertex_count(c.k); ++v) cube.push_back(S.cubes[i].bytes[v]);
    values.push_back(Json::array({cube, c.values.at(i)}));
  }
  j["values"] = values;
  return j;
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::CubeSpace: return "cubespace";
    case Kind::Group: return "group";
    case Kind::Filtration: return "filtration";
    case Kind::Action: return "action";
    case Kind::Map: return "map";
    case Kind::Relation: return "relation";
    case Kind::Report: return "report";
    case Kind::Cocycle: return "cocycle";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  for (Kind k : {Kind::CubeSpace, Kind::Group, Kind::Filtration, Kind::Action, Kind::Map, Kind::Relation, Kind::Report,
                 Kind::Cocycle}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidInput("kind: unknown document kind '" + s + "'");
}

FiberCocycle CocycleDoc::cocycle() const { return FiberCocycle{fiber_cubes(map, k), target, values}; }

namespace {
template <class T>
const T& payload_as(const Document& d, const char* what) {
  if (auto p = std::get_if<T>(&d.payload)) return *p;
  throw InvalidInput(std::string("expected a ") + what + " document, got " + to_string(d.kind));
}
}  // namespace

const CubeSpace& Document::space() const { return payload_as<CubeSpace>(*this, "cubespace"); }
const FiniteGroup& Document::group() const { return payload_as<FiniteGroup>(*this, "group"); }
const Filtration& Document::filtration() const { return payload_as<Filtration>(*this, "filtration"); }
const GroupAction& Document::action() const { return payload_as<GroupAction>(*this, "action"); }
const MapDoc& Document::map() const { return payload_as<MapDoc>(*this, "map"); }
const RelationDoc& Document::relation() const { return payload_as<RelationDoc>(*this, "relation"); }
const CocycleDoc& Document::cocycle() const { return payload_as<CocycleDoc>(*this, "cocycle"); }
const Json& Document::report() const { return payload_as<Json>(*this, "report"); }

Document parse_document(const std::string& text, const ParseOptions& opt) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
    throw InvalidInput("line " + std::to_string(line) + ": " + e.what());
  }
  return from_json(j, opt);
}

Document from_json(const Json& j, const ParseOptions& opt) {
  if (!j.is_object()) fail("", "expected an object");
  const Json& kj = field(j, "kind", "");
  if (!kj.is_string()) fail("kind", "expected a string");
  Document d;
  d.kind = parse_kind(kj.get<std::string>());
  switch (d.kind) {
    case Kind::CubeSpace: d.payload = parse_cubespace(j, opt, ""); break;
    case Kind::Group: d.payload = parse_group(j, ""); break;
    case Kind::Filtration: d.payload = parse_filtration(j, ""); break;
    case Kind::Action: d.payload = parse_action(j, ""); break;
    case Kind::Map: d.payload = parse_map(j, opt, ""); break;
    case Kind::Relation: d.payload = parse_relation(j, ""); break;
    case Kind::Cocycle: d.payload = parse_cocycle(j, opt, ""); break;
    case Kind::Report:
      check_header(j, Kind::Report, "");
      field(j, "command", "");
      field(j, "verdicts", "");
      d.payload = j;
      break;
  }
  return d;
}

Json to_json(const Document& d) {
  switch (d.kind) {
    case Kind::CubeSpace: return cubespace_json(d.space());
    case Kind::Group: return group_json(d.group());
    case Kind::Filtration: return filtration_json(d.filtration());
    case Kind::Action: return action_json(d.action());
    case Kind::Map: return map_json(d.map());
    case Kind::Relation: {
      Json j = header(Kind::Relation);
      j["points"] = d.relation().points;
      Json pairs = Json::array();
      for (auto [x, y] : d.relation().relation.pairs()) pairs.push_back({x, y});
      j["pairs"] = pairs;
      return j;
    }
    case Kind::Cocycle: return cocycle_json(d.cocycle());
    case Kind::Report: return d.report();
  }
  return Json();
}

std::string serialize_document(const Document& d) { return to_json(d).dump(2) + "\n"; }

Document make_document(CubeSpace X) { return Document{Kind::CubeSpace, std::move(X)}; }
Document make_document(FiniteGroup G) { return Document{Kind::Group, std::move(G)}; }
Document make_document(Filtration F) { return Document{Kind::Filtration, std::move(F)}; }
Document make_document(GroupAction S) { return Document{Kind::Action, std::move(S)}; }
Document make_document(CubeMap f) { return Document{Kind::Map, MapDoc{std::move(f), std::nullopt}}; }
Document make_document(FactorMap pi, int K, std::size_t max_elements) {
  CubeMap f = pi.as_cubemap(K, max_elements);
  return Document{Kind::Map, MapDoc{std::move(f), std::move(pi)}};
}
Document make_document(RelationDoc R) { return Document{Kind::Relation, std::move(R)}; }
Document make_document(CocycleDoc c) { return Document{Kind::Cocycle, std::move(c)}; }

Json cubespace_json(const CubeSpace& X) {
  Json j = header(Kind::CubeSpace);
  j["points"] = X.labels();
  j["max_dim"] = X.max_dim();
  Json cubes = Json::object();
  for (int k = 1; k <= X.max_dim(); ++k) {
    Json list = Json::array();
    for (const CubeKey& c : X.cubes(k)) {
      Json cube = Json::array();
      for (std::size_t v = 0; v < vertex_count(k); ++v) cube.push_back(c.bytes[v]);
      list.push_back(std::move(cube));
    }
    cubes[std::to_string(k)] = std::move(list);
  }
  j["cubes"] = std::move(cubes);
  return j;
}

Json group_json(const FiniteGroup& G) {
  Json j = header(Kind::Group);
  j["elements"] = G.labels();
  j["table"] = G.table();
  return j;
}

Json action_json(const GroupAction& S) {
  Json j = header(Kind::Action);
  j["points"] = S.points();
  Json g = Json::object();
  for (std::size_t i = 0; i < S.generators().size(); ++i) g[S.generator_names()[i]] = S.generators()[i];
  j["generators"] = std::move(g);
  return j;
}

Json configuration_json(const CubeSpace& X, const Configuration& c) {
  Json a = Json::array();
  for (Point p : c.values) a.push_back(p < X.size() ? X.label(p) : std::string("?"));
  return a;
}

Json key_json(const CubeSpace& X, const CubeKey& key, int dim) {
  Json a = Json::array();
  for (std::size_t v = 0; v < vertex_count(dim); ++v) {
    a.push_back(key.bytes[v] == kHole ? std::string("_") : X.label(key.bytes[v]));
  }
  return a;
}

Json relation_json(const CubeSpace& X, const PointRelation& R) {
  Json j = header(Kind::Relation);
  j["points"] = X.labels();
  Json pairs = Json::array();
  for (auto [x, y] : R.pairs()) pairs.push_back({x, y});
  j["pairs"] = pairs;
  return j;
}

Json caps_json(const Caps& c) {
  return Json{{"max_dim", c.max_dim},
              {"points", c.max_points},
              {"group_order", c.max_group_order},
              {"hk_elements", c.max_hk_elements},
              {"search_nodes", c.max_search_nodes},
              {"enumeration", c.max_enumeration}};
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json report_json(const Report& r) {
  Json j = header(Kind::Report);
  j["command"] = r.command;
  j["inputs"] = r.inputs;
  j["caps"] = caps_json(r.caps);
  j["verdicts"] = r.verdicts;
  j["witnesses"] = r.witnesses;
  return j;
}

std::string render_report(const Report& r, bool machine) {
  if (machine) return report_json(r).dump(2) + "\n";
  std::ostringstream os;
  os << r.command << "\n";
  for (const auto& in : r.inputs) os << "  input " << in.value("name", "") << " " << in.value("hash", "") << "\n";
  for (auto it = r.verdicts.begin(); it != r.verdicts.end(); ++it) {
    os << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  }
  for (auto it = r.witnesses.begin(); it != r.witnesses.end(); ++it) os << "witness " << it.key() << ": " << it->dump() << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

}  // namespace nspace::io
