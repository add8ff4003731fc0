#include <iostream>
#include <string>
#include <vector>

#include "mostow/cli.hpp"

int main(int argc, char** argv) {
  return mostow::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
