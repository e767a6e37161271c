#include <iostream>
#include <string>
#include <vector>

#include "gsep/commands.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv, argv + argc);
  return gsep::cli::run(args, std::cin, std::cout, std::cerr);
}
