#include <iostream>

#include "amen/cli.hpp"

int main(int argc, char** argv) {
  return amen::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
