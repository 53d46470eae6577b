#include <iostream>
#include <string>
#include <vector>

#include "odo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return odo::cli::run(args, std::cout, std::cerr);
}
