#include <iostream>
#include <string>
#include <vector>

#include "jqc/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return jqc::run_cli(args, std::cout, std::cerr);
}
