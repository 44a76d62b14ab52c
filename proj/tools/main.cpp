#include <iostream>

#include "chh/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return chh::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
