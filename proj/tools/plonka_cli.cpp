#include <iostream>
#include <string>
#include <vector>

#include "plonka/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return plonka::run_command(std::move(args), std::cin, std::cout, std::cerr);
}
