#include <iostream>
#include <string>
#include <vector>

#include "pchc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pchc::run_cli(args, std::cout, std::cerr);
}
