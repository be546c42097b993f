#include <iostream>
#include <string>
#include <vector>

#include "rhwb/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rhwb::cli::run(args, std::cout, std::cerr);
}
