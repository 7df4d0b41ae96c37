#include <iostream>
#include <string>
#include <vector>

#include "phishift/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return phishift::cli::run(args, phishift::cli::environment_from_process(), std::cout,
                            std::cerr);
}
