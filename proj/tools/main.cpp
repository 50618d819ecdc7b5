#include <iostream>
#include <string>
#include <vector>

#include "rfgap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rfgap::run_cli(args, std::cout, std::cerr);
}
