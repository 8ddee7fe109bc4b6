#include <iostream>
#include <string>
#include <vector>

#include "ayah/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ayah::cli::run(args, std::cout, std::cerr);
}
