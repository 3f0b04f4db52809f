#include <iostream>

#include "xqd/cli.hpp"

int main(int argc, char** argv) {
  return xqd::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
