#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nspace/io.hpp"

namespace nspace::cli {

struct Options {
  std::string command;
  std::string mode;  // subcommand argument, e.g. "canonical:2"
  std::vector<std::string> inputs;
  std::vector<std::string> params;  // gen key=value pairs
  std::string property;
  std::optional<int> max_dim;
  std::optional<int> level;
  Caps caps;
  std::uint64_t seed = 1;
};

struct Outcome {
  io::Report report;
  bool holds = true;
};

struct Loaded {
  std::string path;
  io::Document doc;
};

std::vector<Loaded> load_inputs(const Options& opt, io::Report& report);

Outcome cmd_validate(const Options& opt);
Outcome cmd_check(const Options& opt);
Outcome cmd_relate(const Options& opt);
Outcome cmd_quotient(const Options& opt);
Outcome cmd_tower(const Options& opt);
Outcome cmd_translations(const Options& opt);
Outcome cmd_cocycle(const Options& opt);
Outcome cmd_factorize(const Options& opt);
Outcome cmd_fibers(const Options& opt);

/// name -> document, for `gen`.
std::vector<std::pair<std::string, io::Document>> generate(const std::string& name,
                                                           const std::vector<std::string>& params,
                                                           std::uint64_t seed, const Options& opt);

/// "name:k" -> ("name", k); a bare "name" has no k.
std::pair<std::string, std::optional<int>> split_mode(const std::string& mode);

}  // namespace nspace::cli
