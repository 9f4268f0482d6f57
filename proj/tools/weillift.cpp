#include <iostream>

#include "weillift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return weillift::cli::run(args, std::cout, std::cerr);
}
