#include <iostream>

#include "ddsurf/cli.hpp"

int main(int argc, char** argv) {
  return ddsurf::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
