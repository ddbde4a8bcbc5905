#include <iostream>
#include <string>
#include <vector>

#include "modelspace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return modelspace::cli::run(args, std::cin, std::cout, std::cerr);
}
