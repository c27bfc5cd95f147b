#include <iostream>
#include <string>
#include <vector>

#include "sat2qubo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sat2qubo::cli::run(args, std::cout, std::cerr);
}
