#include <iostream>

#include "ordercone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ordercone::cli::run(args, std::cout, std::cerr);
}
