#include <iostream>
#include <string>
#include <vector>

#include "q8curves/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return q8curves::cli::run(args, std::cout, std::cerr);
}
