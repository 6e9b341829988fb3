#include <iostream>
#include <string>
#include <vector>

#include "codedensity/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return codedensity::cli::run(args, std::cout, std::cerr);
}
