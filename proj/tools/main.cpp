#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  dcov::cli::Environment env;
  env.color = std::getenv("DESIGNCOV_NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0;
  return dcov::cli::run(args, std::cout, std::cerr, env);
}
