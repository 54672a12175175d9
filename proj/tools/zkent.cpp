#include <iostream>

#include "zkent/cli.hpp"

int main(int argc, char** argv) {
  return zkent::run_cli(argc, argv, std::cout, std::cerr);
}
