#include <iostream>

#include "zpr/cli.hpp"

int main(int argc, char** argv) {
  return zpr::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
