#include <iostream>
#include <vector>

#include "potentia/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return potentia::cli::run(std::move(args), std::cout, std::cerr);
}
