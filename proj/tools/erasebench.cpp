#include <iostream>

#include "erasure/cli.hpp"

int main(int argc, char** argv) {
  return erasure::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
