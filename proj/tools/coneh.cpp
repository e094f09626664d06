#include <iostream>
#include <string>
#include <vector>

#include "coneh/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coneh::cli::run(args, std::cout, std::cerr);
}
