#pragma once
// JSON interchange: documents with a "kind" discriminator and reports.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "nspace/cocycle.hpp"
#include "nspace/cubemap.hpp"
#include "nspace/dynamics.hpp"
#include "nspace/group.hpp"
#include "nspace/relation.hpp"

namespace nspace::io {

using Json = nlohmann::json;  // std::map objects: keys come out sorted

inline constexpr int kFormatVersion = 1;

enum class Kind { CubeSpace, Group, Filtration, Action, Map, Relation, Report, Cocycle };
std::string to_string(Kind k);
Kind parse_kind(const std::string& s);

struct MapDoc {
  CubeMap map;
  std::optional<FactorMap> factor;  // set when both ends are actions
};

struct RelationDoc {
  std::vector<std::string> points;
  PointRelation relation;
};

/// A fiber cocycle on the k-cubes of a map's fibers.
struct CocycleDoc {
  CubeMap map;
  int k = 0;
  FiniteGroup target;
  std::vector<Elem> values;  // aligned with fiber_cubes(map, k).cubes
  FiberCocycle cocycle() const;
};

struct Document {
  Kind kind = Kind::Report;
  std::variant<Json, CubeSpace, FiniteGroup, Filtration, GroupAction, MapDoc, RelationDoc, CocycleDoc> payload;

  const CubeSpace& space() const;
  const FiniteGroup& group() const;
  const Filtration& filtration() const;
  const GroupAction& action() const;
  const MapDoc& map() const;
  const RelationDoc& relation() const;
  const CocycleDoc& cocycle() const;
  const Json& report() const;
};

struct ParseOptions {
  bool close_cubes = false;  // replace the cube lists by their morphism closure
  int action_max_dim = 2;    // K for cube spaces built from actions
  std::size_t max_elements = std::size_t{1} << 20;
};

/// Throws InvalidInput with "line L" for syntax errors and a field path for
/// schema errors.
Document parse_document(const std::string& text, const ParseOptions& opt = {});
Document from_json(const Json& j, const ParseOptions& opt = {});
Json to_json(const Document& d);
/// Canonical text: sorted keys, sorted cube lists, two-space indent.
std::string serialize_document(const Document& d);

Document make_document(CubeSpace X);
Document make_document(FiniteGroup G);
Document make_document(Filtration F);
Document make_document(GroupAction S);
Document make_document(CubeMap f);
Document make_document(FactorMap pi, int K, std::size_t max_elements);
Document make_document(RelationDoc R);
Document make_document(CocycleDoc c);

Json cubespace_json(const CubeSpace& X);
Json group_json(const FiniteGroup& G);
Json action_json(const GroupAction& S);
/// A configuration as point labels in vertex order.
Json configuration_json(const CubeSpace& X, const Configuration& c);
Json key_json(const CubeSpace& X, const CubeKey& key, int dim);
Json relation_json(const CubeSpace& X, const PointRelation& R);
Json caps_json(const Caps& caps);

/// 64-bit FNV-1a as 16 hex digits.
std::string content_hash(const std::string& bytes);

struct Report {
  std::string command;
  Json inputs = Json::array();  // [{"name", "hash"}]
  Caps caps;
  Json verdicts = Json::object();
  Json witnesses = Json::object();
};
Json report_json(const Report& r);
/// Machine form is canonical JSON; text form is one "key: value" line per
/// verdict followed by the witnesses.
std::string render_report(const Report& r, bool machine);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace nspace::io
