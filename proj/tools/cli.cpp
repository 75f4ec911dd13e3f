#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace nspace::cli {

namespace {

std::string render_gen(const std::vector<std::pair<std::string, io::Document>>& docs, const std::string& out_dir) {
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::string listing;
    for (const auto& [name, doc] : docs) {
      auto path = (std::filesystem::path(out_dir) / (name + ".json")).string();
      io::write_file(path, io::serialize_document(doc));
      listing += path + "\n";
    }
    return listing;
  }
  io::Json all = io::Json::object();
  for (const auto& [name, doc] : docs) all[name] = io::to_json(doc);
  return all.dump(2) + "\n";
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CommandResult result;
  CLI::App app{"Finite cubespaces, nilspaces and fibrations: checks and certificates"};
  app.require_subcommand(1);

  Options opt;
  std::string caps_spec, out_path, format = "text";
  int max_dim = 0, level = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", opt.inputs, "input document (repeatable)");
    sub->add_option("--max-dim", max_dim, "cube dimension K");
    sub->add_option("--level", level, "level s");
    sub->add_option("--caps", caps_spec, "resource caps, key=value,...");
    sub->add_option("--out", out_path, "write the report (or gen documents) here");
    sub->add_option("--format", format, "text | machine-readable")
        ->check(CLI::IsMember({"text", "machine-readable", "json"}));
  };

  struct Entry {
    const char* name;
    const char* help;
    const char* mode_help;
    Outcome (*fn)(const Options&);
  };
  const Entry entries[] = {
      {"validate", "check the cubespace axioms of a document", nullptr, cmd_validate},
      {"check", "check a property", nullptr, cmd_check},
      {"relate", "compute a relation", "canonical:k | rel-canonical:k | nrp:k | rel-nrp:k", cmd_relate},
      {"quotient", "quotient by ~_k or a relation document", "canonical:k", cmd_quotient},
      {"tower", "structure groups and the tower", "absolute | relative | dynamical", cmd_tower},
      {"translations", "translation groups", "enumerate | level:k | pushforward:k", cmd_translations},
      {"cocycle", "fiber cocycles", "check | solve | repair:k", cmd_cocycle},
      {"factorize", "shadows and vertical-horizontal factorization", "shadow | vh", cmd_factorize},
      {"fibers", "fibers of a map", "extract | isomorphic", cmd_fibers},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    if (e.mode_help) sub->add_option("mode", opt.mode, e.mode_help)->required();
    if (std::string(e.name) == "check") sub->add_option("--property", opt.property, "property name")->required();
    subs.emplace_back(sub, &e);
  }
  CLI::App* gen = app.add_subcommand("gen", "emit fixture documents");
  add_common(gen);
  gen->add_option("name", opt.mode, "fixture name")->required();
  gen->add_option("params", opt.params, "key=value parameters");
  gen->add_option("--seed", opt.seed, "seed for random fixtures");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  std::ostringstream out, err;
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    result.output = out.str();
    result.error = err.str();
    result.exit_code = code == 0 ? kHolds : kInvalidInput;
    return result;
  }

  try {
    Caps base = Caps::defaults();
    if (const char* env = std::getenv("NSPACE_CAPS")) base = Caps::parse(env, base);
    opt.caps = caps_spec.empty() ? base : Caps::parse(caps_spec, base);
    for (auto* sub : app.get_subcommands()) {
      if (sub->count("--max-dim")) opt.max_dim = max_dim;
      if (sub->count("--level")) opt.level = level;
    }
    if (opt.max_dim && (*opt.max_dim < 0 || *opt.max_dim > opt.caps.max_dim)) {
      throw CapExceeded("--max-dim " + std::to_string(*opt.max_dim) + " exceeds the cap " + std::to_string(opt.caps.max_dim));
    }
    const bool machine = format != "text";

    if (gen->parsed()) {
      opt.command = "gen";
      result.output = render_gen(generate(opt.mode, opt.params, opt.seed, opt), out_path);
      return result;
    }
    for (auto [sub, e] : subs) {
      if (!sub->parsed()) continue;
      opt.command = e->name;
      Outcome o = e->fn(opt);
      std::string text = io::render_report(o.report, machine);
      if (out_path.empty()) {
        result.output = text;
      } else {
        io::write_file(out_path, text);
      }
      result.exit_code = o.holds ? kHolds : kFails;
    }
  } catch (const InvalidInput& e) {
    result.exit_code = kInvalidInput;
    result.error = std::string("invalid input: ") + e.what() + "\n";
  } catch (const CapExceeded& e) {
    result.exit_code = kCapExceeded;
    result.error = std::string("cap exceeded: ") + e.what() + "\n";
  } catch (const InternalAlarm& e) {
    result.exit_code = kInternalAlarm;
    result.error = std::string("internal alarm: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    result.exit_code = kInvalidInput;
    result.error = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace nspace::cli
