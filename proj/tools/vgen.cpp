#include <iostream>

#include "vgen/cli.hpp"

int main(int argc, char** argv) {
  return vgen::run_cli(argc, argv, std::cout, std::cerr);
}
