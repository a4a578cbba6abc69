#include <iostream>
#include <string>
#include <vector>

#include "mastct/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mastct::run(args, std::cout, std::cerr);
}
