#include <iostream>
#include <string>
#include <vector>

#include "cohcat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cohcat::cli::run_cli(args, std::cout, std::cerr);
}
