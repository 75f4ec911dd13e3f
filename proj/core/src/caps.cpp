#include <cstdlib>
#include <sstream>

#include "nspace/error.hpp"

namespace nspace {

Caps Caps::parse(const std::string& spec, Caps base) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("caps entry '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    unsigned long long n = 0;
    try {
      std::size_t used = 0;
      n = std::stoull(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw InvalidInput("caps entry '" + item + "' has a non-numeric value");
    }
    if (key == "max_dim") {
      if (n > static_cast<unsigned long long>(kHardMaxDim)) {
        throw InvalidInput("max_dim above the hard limit " + std::to_string(kHardMaxDim));
      }
      base.max_dim = static_cast<int>(n);
    } else if (key == "points") {
      base.max_points = std::min<std::size_t>(n, kHardMaxPoints);
    } else if (key == "group_order") {
      base.max_group_order = n;
    } else if (key == "hk_elements") {
      base.max_hk_elements = n;
    } else if (key == "search_nodes") {
      base.max_search_nodes = n;
    } else if (key == "enumeration") {
      base.max_enumeration = n;
    } else {
      throw InvalidInput("unknown caps key '" + key + "'");
    }
  }
  return base;
}

Caps Caps::defaults() {
  Caps c;
  if (const char* env = std::getenv("NSPACE_CAPS")) c = parse(env, c);
  return c;
}

}  // namespace nspace
