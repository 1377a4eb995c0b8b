#include <iostream>

#include "slicerank/cli.hpp"

int main(int argc, char** argv) {
  return slicerank::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
