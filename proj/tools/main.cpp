#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = nspace::cli::run_command(args);
  std::cout << r.output;
  std::cerr << r.error;
  return r.exit_code;
}
