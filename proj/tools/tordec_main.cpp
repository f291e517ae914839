#include <iostream>
#include <string>
#include <vector>

#include "tordec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tordec::cli::run(args, std::cout, std::cerr);
}
