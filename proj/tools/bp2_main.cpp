#include <iostream>

#include "bp2/cli.hpp"

int main(int argc, char** argv) {
  return bp2::run_cli(argc, argv, std::cout, std::cerr);
}
