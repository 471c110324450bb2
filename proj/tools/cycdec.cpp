#include <iostream>
#include <string>
#include <vector>

#include "cycdec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cycdec::cli::run(args, std::cout);
}
