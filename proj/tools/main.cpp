#include <iostream>
#include <string>
#include <vector>

#include "strongl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return strongl::run_cli(args, std::cout);
}
