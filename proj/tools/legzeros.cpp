#include <iostream>
#include <string>
#include <vector>

#include "legzeros/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return legzeros::cli::run(args, std::cout, std::cerr);
}
