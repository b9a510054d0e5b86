#include <iostream>
#include <string>
#include <vector>

#include "geocoh/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return geocoh::cli::run(args, std::cout, std::cerr);
}
