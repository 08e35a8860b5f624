#include <iostream>
#include <string>
#include <vector>

#include "lalg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lalg::run(args, std::cout, std::cerr);
}
