#include <iostream>
#include <string>
#include <vector>

#include "epk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epk::run(args, std::cout, std::cerr);
}
